"""Exact integer homology of truncated simplicial sets.

Chains are normalized: one generator per nondegenerate simplex, degenerate
faces dropped.  Boundary matrices are reduced to Smith normal form over the
integers with arbitrary-precision arithmetic; an optional checked mode fails
loudly if any intermediate entry would leave the signed 64-bit range.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .simpset import TruncatedSimplicialSet, assert_valid, nondegenerate_list

INT64_MAX = 2**63 - 1
_CROSSCHECK_PRIME = 2**31 - 1


@dataclass
class SparseMatrix:
    """Integer matrix as a {(row, col): value} dict of its nonzero entries."""

    rows: int
    cols: int
    entries: dict[tuple[int, int], int] = field(default_factory=dict)

    def to_dense(self) -> list[list[int]]:
        M = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            M[r][c] = v
        return M

    @classmethod
    def from_dense(cls, M: list[list[int]]) -> "SparseMatrix":
        rows = len(M)
        cols = len(M[0]) if rows else 0
        entries = {(r, c): v for r, row in enumerate(M) for c, v in enumerate(row) if v}
        return cls(rows, cols, entries)


@dataclass
class SmithForm:
    """Invariant factors plus optional unimodular certificates.

    When present, left and right satisfy left * M * right == diag(factors)
    extended by zeros to the shape of M.
    """

    shape: tuple[int, int]
    factors: tuple[int, ...]
    left: list[list[int]] | None = None
    right: list[list[int]] | None = None

    @property
    def rank(self) -> int:
        return len(self.factors)


def _check_range(values, policy):
    if policy == "checked":
        for v in values:
            if v > INT64_MAX or v < -INT64_MAX - 1:
                raise OverflowError("entry left the signed 64-bit range under checked policy")


def _dense_snf(M, R, C, policy, transforms):
    # Row ops mirror onto U, column ops onto V, keeping U*input*V == A.
    A = [row[:] for row in M]
    U = [[int(i == j) for j in range(R)] for i in range(R)] if transforms else None
    V = [[int(i == j) for j in range(C)] for i in range(C)] if transforms else None
    factors = []
    t = 0
    while True:
        pivot = None
        best = None
        for i in range(t, R):
            row = A[i]
            for j in range(t, C):
                v = row[j]
                if v and (best is None or abs(v) < best):
                    best = abs(v)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        i, j = pivot
        if i != t:
            A[t], A[i] = A[i], A[t]
            if transforms:
                U[t], U[i] = U[i], U[t]
        if j != t:
            for row in A:
                row[t], row[j] = row[j], row[t]
            if transforms:
                for row in V:
                    row[t], row[j] = row[j], row[t]
        while True:
            # clear below the pivot
            for i in range(t + 1, R):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                        if transforms:
                            U[i] = [a - q * b for a, b in zip(U[i], U[t])]
                        _check_range(A[i], policy)
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
                        if transforms:
                            U[t], U[i] = U[i], U[t]
            if any(A[i][t] for i in range(t + 1, R)):
                continue
            # clear to the right of the pivot
            redo = False
            for j in range(t + 1, C):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                        if transforms:
                            for row in V:
                                row[j] -= q * row[t]
                        _check_range((row[j] for row in A), policy)
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        if transforms:
                            for row in V:
                                row[t], row[j] = row[j], row[t]
                        redo = True
                        break
            if redo:
                continue
            # pivot must divide everything below and to the right
            fix = None
            d = A[t][t]
            for i in range(t + 1, R):
                row = A[i]
                for j in range(t + 1, C):
                    if row[j] % d:
                        fix = i
                        break
                if fix is not None:
                    break
            if fix is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[fix])]
            if transforms:
                U[t] = [a + b for a, b in zip(U[t], U[fix])]
            _check_range(A[t], policy)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            if transforms:
                U[t] = [-a for a in U[t]]
        factors.append(A[t][t])
        t += 1
        if t == R or t == C:
            break
    return SmithForm((R, C), tuple(factors), U, V)


def _sparse_unit_reduce(sm: SparseMatrix, policy):
    """Strip unit pivots off a sparse matrix; return (count, dense remainder)."""
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set[int]] = {}
    for (r, c), v in sm.entries.items():
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)
    units = 0
    while True:
        pivot = None
        best_fill = None
        for r, row in rows.items():
            for c, v in row.items():
                if v in (1, -1):
                    fill = (len(row) - 1) * (len(cols[c]) - 1)
                    if best_fill is None or fill < best_fill:
                        best_fill = fill
                        pivot = (r, c)
                        if fill == 0:
                            break
            if pivot is not None and best_fill == 0:
                break
        if pivot is None:
            break
        r, c = pivot
        pv = rows[r][c]
        prow = dict(rows[r])
        for r2 in list(cols[c]):
            if r2 == r:
                continue
            q = rows[r2][c] * pv  # pv is +-1, so q * prow clears the entry
            row2 = rows[r2]
            for c2, v2 in prow.items():
                nv = row2.get(c2, 0) - q * v2
                if nv:
                    row2[c2] = nv
                    cols.setdefault(c2, set()).add(r2)
                else:
                    if c2 in row2:
                        del row2[c2]
                        cols[c2].discard(r2)
            _check_range(row2.values(), policy)
            if not row2:
                del rows[r2]
        # pivot column is now clear; discard the pivot row and its column hits
        for c2 in prow:
            cols[c2].discard(r)
            if not cols[c2]:
                del cols[c2]
        del rows[r]
        units += 1
    remaining_rows = sorted(rows)
    remaining_cols = sorted({c for row in rows.values() for c in row})
    col_pos = {c: j for j, c in enumerate(remaining_cols)}
    dense = [[0] * len(remaining_cols) for _ in remaining_rows]
    for i, r in enumerate(remaining_rows):
        for c, v in rows[r].items():
            dense[i][col_pos[c]] = v
    return units, dense


def smith_normal_form(matrix, shape=None, transforms=False, policy="bigint") -> SmithForm:
    """Smith normal form over the integers.

    matrix is either a dense list of rows or a SparseMatrix.  With
    transforms=True the reduction runs densely and returns unimodular
    certificates; without them large sparse inputs take a unit-pivot
    elimination first and only the small remainder is reduced densely.
    """
    if policy not in ("bigint", "checked"):
        raise ValueError(f"unknown overflow policy {policy!r}")
    if isinstance(matrix, SparseMatrix):
        sm = matrix
    else:
        sm = SparseMatrix.from_dense(matrix)
    if shape is not None and (sm.rows, sm.cols) != tuple(shape):
        raise ValueError("shape mismatch")
    _check_range(sm.entries.values(), policy)
    if transforms:
        return _dense_snf(sm.to_dense(), sm.rows, sm.cols, policy, True)
    units, remainder = _sparse_unit_reduce(sm, policy)
    if remainder:
        tail = _dense_snf(remainder, len(remainder), len(remainder[0]), policy, False)
    else:
        tail = SmithForm((0, 0), ())
    return SmithForm((sm.rows, sm.cols), (1,) * units + tail.factors)


def verify_transforms(matrix, sf: SmithForm) -> bool:
    """Exact check that left * M * right is the diagonal of invariant factors."""
    if sf.left is None or sf.right is None:
        return False
    M = matrix.to_dense() if isinstance(matrix, SparseMatrix) else matrix
    R, C = sf.shape
    MV = [[sum(M[i][k] * sf.right[k][j] for k in range(C)) for j in range(C)] for i in range(R)]
    for i in range(R):
        Urow = sf.left[i]
        for j in range(C):
            v = sum(Urow[k] * MV[k][j] for k in range(R))
            want = sf.factors[i] if i == j and i < len(sf.factors) else 0
            if v != want:
                return False
    return True


def rank_mod_p(sm: SparseMatrix, p: int = _CROSSCHECK_PRIME) -> int:
    """Rank over the field with p elements, used as an independent cross-check."""
    rows = {}
    for (r, c), v in sm.entries.items():
        if v % p:
            rows.setdefault(r, {})[c] = v % p
    rank = 0
    pivots: dict[int, dict[int, int]] = {}
    for row in rows.values():
        row = dict(row)
        while row:
            c = min(row)
            if c in pivots:
                prow = pivots[c]
                factor = row[c] * pow(prow[c], p - 2, p) % p
                for c2, v2 in prow.items():
                    nv = (row.get(c2, 0) - factor * v2) % p
                    if nv:
                        row[c2] = nv
                    elif c2 in row:
                        del row[c2]
            else:
                pivots[c] = row
                rank += 1
                break
    return rank


@dataclass
class ChainComplexData:
    """Normalized chain data: per-dimension bases and boundary matrices.

    boundaries[n] maps dimension n to n-1 (None at index 0).
    """

    max_dim: int
    basis: list[list[int]]
    boundaries: list[SparseMatrix | None]

    def basis_sizes(self) -> list[int]:
        return [len(b) for b in self.basis]


def normalized_complex(X: TruncatedSimplicialSet, audit: bool = True) -> ChainComplexData:
    """Boundary matrices on nondegenerate simplices with signs (-1)^i.

    Composing consecutive boundaries must give zero; that and the identity
    audit guard against malformed inputs.
    """
    if audit:
        assert_valid(X)
    basis = [nondegenerate_list(X, n) for n in range(X.max_dim + 1)]
    positions = [{k: idx for idx, k in enumerate(level)} for level in basis]
    boundaries: list[SparseMatrix | None] = [None]
    for n in range(1, X.max_dim + 1):
        entries: dict[tuple[int, int], int] = {}
        for col, k in enumerate(basis[n]):
            for i in range(n + 1):
                row = positions[n - 1].get(X.face(n, k, i))
                if row is None:
                    continue
                key = (row, col)
                v = entries.get(key, 0) + (1 if i % 2 == 0 else -1)
                if v:
                    entries[key] = v
                elif key in entries:
                    del entries[key]
        boundaries.append(SparseMatrix(len(basis[n - 1]), len(basis[n]), entries))
    for n in range(2, X.max_dim + 1):
        _assert_composite_zero(boundaries[n - 1], boundaries[n])
    return ChainComplexData(X.max_dim, basis, boundaries)


def _assert_composite_zero(outer: SparseMatrix, inner: SparseMatrix):
    by_col: dict[int, list[tuple[int, int]]] = {}
    for (r, c), v in outer.entries.items():
        by_col.setdefault(c, []).append((r, v))
    sums: dict[tuple[int, int], int] = {}
    for (r, c), v in inner.entries.items():
        for r2, v2 in by_col.get(r, ()):
            key = (r2, c)
            sums[key] = sums.get(key, 0) + v * v2
    if any(sums.values()):
        raise ValueError("boundary of boundary is nonzero")


@dataclass
class HomologyReport:
    """Integer homology in each dimension: free rank plus torsion orders."""

    groups: list[tuple[int, tuple[int, ...]]]
    unreliable_top: bool = True

    def to_json(self) -> dict:
        return {
            "H": [{"betti": b, "torsion": list(t)} for b, t in self.groups],
            "unreliable_top": self.unreliable_top,
        }

    def pretty(self, k: int) -> str:
        b, tors = self.groups[k]
        parts = ["Z" if b == 1 else f"Z^{b}"] if b else []
        parts += [f"Z/{t}" for t in tors]
        return " + ".join(parts) if parts else "0"


_TRANSFORM_LIMIT = 200


def homology_report(cc: ChainComplexData, policy: str = "bigint", verify: bool = True) -> HomologyReport:
    """Betti numbers and torsion from Smith forms of the boundary matrices.

    Matrices up to 200x200 are reduced with certificates and re-verified
    exactly; larger ones go through the sparse path and their rank is
    cross-checked over a large prime field.  The top dimension lacks the
    incoming boundary and is flagged unreliable.
    """
    sizes = cc.basis_sizes()
    ranks = [0] * (cc.max_dim + 2)
    factors: list[tuple[int, ...]] = [()] * (cc.max_dim + 2)
    for n in range(1, cc.max_dim + 1):
        sm = cc.boundaries[n]
        small = sm.rows <= _TRANSFORM_LIMIT and sm.cols <= _TRANSFORM_LIMIT
        sf = smith_normal_form(sm, transforms=small and verify, policy=policy)
        if verify:
            if small:
                if not verify_transforms(sm, sf):
                    raise ArithmeticError(f"certificate re-verification failed for boundary {n}")
            elif rank_mod_p(sm) != sf.rank:
                raise ArithmeticError(f"rank cross-check failed for boundary {n}")
        ranks[n] = sf.rank
        factors[n] = sf.factors
    groups = []
    for k in range(cc.max_dim + 1):
        betti = sizes[k] - ranks[k] - ranks[k + 1]
        torsion = tuple(d for d in factors[k + 1] if d > 1)
        groups.append((betti, torsion))
    return HomologyReport(groups, unreliable_top=True)


def export_sparse_matrix(sm: SparseMatrix) -> str:
    """Triplet text: a 'dims R C' header, then one 'row col value' per entry."""
    lines = [f"dims {sm.rows} {sm.cols}"]
    for (r, c), v in sorted(sm.entries.items()):
        lines.append(f"{r} {c} {v}")
    return "\n".join(lines) + "\n"
