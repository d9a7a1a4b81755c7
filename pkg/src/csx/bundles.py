"""Triangulated circle bundles from circular-permutation decorations.

A decoration assigns a rotation class to every simplex of a face-only base,
compatibly with faces.  Pulling the word-to-rotation-class quotient back
along the decoration yields the bundle's total space; over an n-simplex the
minimal model E_of(g) can be written down directly and doubles as an
independent check on the pullback route.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .delta import monotone_ops
from .perms import (
    Word,
    apply_operator_word,
    cyclic_word,
    degeneracy_perm,
    face_perm,
    inverse,
    multiply,
)
from .simpset import (
    CircularPermutation,
    SimplicialMap,
    TruncatedSimplicialSet,
    all_circular,
    build_C,
    build_S,
    build_SC,
    build_delta,
    from_rules,
    pullback,
    quotient_circ,
    quotient_map,
    reorient_upsilon,
    sc_degeneracy,
    sc_face,
    twisted_product,
    yoneda,
)

FLAT = CircularPermutation((0, 1, 2))
TWISTED = CircularPermutation((0, 2, 1))


# ---------------------------------------------------------------------------
# face-only bases


def _subset_base(max_dim: int, subsets_by_dim) -> TruncatedSimplicialSet:
    payload_lists = [sorted(subsets_by_dim[m]) for m in range(max_dim + 1)]
    return from_rules(
        max_dim,
        payload_lists,
        lambda n, s, i: s[:i] + s[i + 1 :],
        None,
    )


def solid_delta(n: int) -> TruncatedSimplicialSet:
    """The n-simplex as a face-only object: all nonempty vertex subsets."""
    by_dim = [list(combinations(range(n + 1), m + 1)) for m in range(n + 1)]
    return _subset_base(n, by_dim)


def boundary_delta(n: int) -> TruncatedSimplicialSet:
    """The boundary sphere of the n-simplex: proper nonempty vertex subsets."""
    if n < 1:
        raise ValueError("boundary needs n >= 1")
    by_dim = [list(combinations(range(n + 1), m + 1)) for m in range(n)]
    return _subset_base(n - 1, by_dim)


def complete_semisimplicial(base: TruncatedSimplicialSet, max_dim: int) -> TruncatedSimplicialSet:
    """Adjoin the formal degeneracies of a face-only object.

    Simplices in dimension m are pairs (eta, b) of a monotone surjection
    eta: [m] ->> [k] and a base simplex b of dimension k; (identity, b)
    recovers the original simplices, everything else is degenerate.
    """
    if base.has_degeneracies:
        raise ValueError("expected a face-only base")
    payload_lists = []
    for m in range(max_dim + 1):
        level = []
        for k in range(min(m, base.max_dim) + 1):
            etas = [op.values for op in monotone_ops(m, k) if len(set(op.values)) == k + 1]
            for eta in etas:
                for b in range(base.simplex_count(k)):
                    level.append((eta, base.payload(k, b)))
        payload_lists.append(level)

    def face_fn(m, p, i):
        eta, bp = p
        k = eta[-1]
        vals = eta[:i] + eta[i + 1 :]
        if len(set(vals)) == k + 1:
            return (vals, bp)
        v = eta[i]  # the unique value lost by dropping position i
        squeezed = tuple(w - 1 if w > v else w for w in vals)
        b = base.id_of(k, bp)
        return (squeezed, base.payload(k - 1, base.face(k, b, v)))

    def degen_fn(m, p, i):
        eta, bp = p
        return (eta[: i + 1] + eta[i:], bp)

    return from_rules(max_dim, payload_lists, face_fn, degen_fn)


# ---------------------------------------------------------------------------
# decorations


@dataclass
class Decoration:
    """A face-compatible assignment of rotation classes to a face-only base."""

    base: TruncatedSimplicialSet
    assignment: list[list[CircularPermutation]]

    def __post_init__(self):
        if self.base.has_degeneracies:
            raise ValueError("decorations live on face-only bases")
        if len(self.assignment) != self.base.max_dim + 1:
            raise ValueError("assignment must cover every dimension")
        for n, level in enumerate(self.assignment):
            if len(level) != self.base.simplex_count(n):
                raise ValueError(f"assignment size mismatch in dimension {n}")
            for k, c in enumerate(level):
                if c.degree != n:
                    raise ValueError(f"degree {c.degree} rotation class on a {n}-simplex")
                for i in range(n + 1) if n >= 1 else ():
                    if sc_face(i, c) != self.assignment[n - 1][self.base.face(n, k, i)]:
                        raise ValueError(f"face {i} incompatibility at dim {n} id {k}")

    def value(self, n: int, k: int) -> CircularPermutation:
        return self.assignment[n][k]


def apply_operator_circ(xi_values, target_size: int, c: CircularPermutation) -> CircularPermutation:
    """Contravariant operator action on rotation classes (same peeling as words)."""
    values = list(xi_values)
    present = set(values)
    for v in range(target_size - 1, -1, -1):
        if v not in present:
            c = sc_face(v, c)
            values = [w - 1 if w > v else w for w in values]
    s_stack = []
    j = 0
    while j + 1 < len(values):
        if values[j] == values[j + 1]:
            s_stack.append(j)
            del values[j + 1]
        else:
            j += 1
    for j in reversed(s_stack):
        c = sc_degeneracy(j, c)
    return c


def decoration_map(decor: Decoration, max_dim: int, completed=None) -> SimplicialMap:
    """The simplicial map induced on the degeneracy completion of the base."""
    base = decor.base
    if completed is None:
        completed = complete_semisimplicial(base, max_dim)
    SC = build_SC(max_dim)

    def fn(m, p):
        eta, bp = p
        k = eta[-1]
        return apply_operator_circ(eta, k + 1, decor.value(k, base.id_of(k, bp)))

    return SimplicialMap.from_payload_fn(completed, SC, fn)


# ---------------------------------------------------------------------------
# total spaces


@dataclass
class BundleTotalSpace:
    """A total space with its projection to the base and classifying map."""

    total: TruncatedSimplicialSet
    base: TruncatedSimplicialSet
    projection: SimplicialMap
    classifying: SimplicialMap


def total_space(decor: Decoration, max_dim: int | None = None) -> BundleTotalSpace:
    """Pull the word-to-rotation-class quotient back along the decoration.

    Simplices are pairs (completed base simplex, permutation word) whose
    rotation class matches the decoration.  max_dim defaults to two above
    the base so that the top reported homology of a circle bundle over the
    base is reliable.
    """
    if max_dim is None:
        max_dim = decor.base.max_dim + 2
    completed = complete_semisimplicial(decor.base, max_dim)
    dec = decoration_map(decor, max_dim, completed)
    q = quotient_map(max_dim)
    total, proj, classifying = pullback(dec, q)
    return BundleTotalSpace(total, completed, proj, classifying)


def E_of(g: Word, max_dim: int | None = None) -> BundleTotalSpace:
    """The minimal circle bundle over the n-simplex classified by the word g.

    Dimension m holds the pairs (xi, act(xi)(g) . rot) over monotone
    xi: [m] -> [n] and rotations rot; faces and degeneracies act with the
    same index on both coordinates.  max_dim should be at least n + 1 to
    include the top cells of the bundle.
    """
    n = len(g) - 1
    if sorted(g) != list(range(n + 1)):
        raise ValueError(f"not a permutation word: {g}")
    if max_dim is None:
        max_dim = n + 1
    D = build_delta(n, max_dim)
    S = build_S(max_dim)
    payload_lists = []
    for m in range(max_dim + 1):
        level = []
        for xi in monotone_ops(m, n):
            moved = apply_operator_word(xi.values, n + 1, g)
            for k in range(m + 1):
                level.append((xi.values, multiply(moved, cyclic_word(m, k))))
        payload_lists.append(level)

    def face_fn(m, p, i):
        xi, w = p
        return (xi[:i] + xi[i + 1 :], face_perm(i, w))

    def degen_fn(m, p, i):
        xi, w = p
        return (xi[: i + 1] + xi[i:], degeneracy_perm(i, w))

    total = from_rules(max_dim, payload_lists, face_fn, degen_fn)
    proj = SimplicialMap.from_payload_fn(total, D, lambda m, p: p[0])
    classifying = SimplicialMap.from_payload_fn(total, S, lambda m, p: p[1])
    return BundleTotalSpace(total, D, proj, classifying)


def pullback_comparison(g: Word, max_dim: int | None = None) -> bool:
    """Check E_of(g) against the generic pullback route.

    The pullback of the quotient along the classifying map of the rotation
    class of g must reproduce E_of(g) verbatim: same payload lists, same
    face and degeneracy tables.  Both constructions sort payloads, so table
    equality is the whole comparison.
    """
    n = len(g) - 1
    if max_dim is None:
        max_dim = n + 1
    E = E_of(g, max_dim).total
    SC = build_SC(max_dim)
    y = yoneda(SC, n, SC.id_of(n, quotient_circ(g)), max_dim)
    P, _, _ = pullback(y, quotient_map(max_dim))
    return E.payloads == P.payloads and E.faces == P.faces and E.degeneracies == P.degeneracies


def _pushforward_op(vals: tuple[int, ...], g_inv: Word) -> tuple[int, ...]:
    # monotone part of the sort factorization of inverse(g) composed with vals
    return tuple(sorted(g_inv[v] for v in vals))


def upsilon_comparison(g: Word, max_dim: int | None = None) -> bool:
    """Check that E_of(inverse(g)) is the order-reoriented twisted product.

    The twisted product of the rotation group with the n-simplex carries the
    decoration (h, xi) -> h . act(xi)(g); reorienting along it must give
    E_of(inverse(g)) under the pairing that inverts the decorating word and
    pushes the base coordinate forward along g.  Returns False on any
    mismatch.
    """
    n = len(g) - 1
    if max_dim is None:
        max_dim = n + 1
    g_inv = inverse(g)
    E = E_of(g_inv, max_dim).total
    X = twisted_product(build_C(max_dim), build_delta(n, max_dim))
    S = build_S(max_dim)

    def decor_word(p):
        h, xi = p
        return multiply(h, apply_operator_word(xi, n + 1, g))

    a = SimplicialMap.from_payload_fn(X, S, lambda m, p: decor_word(p))
    Y = reorient_upsilon(X, a)

    table = []
    for m in range(max_dim + 1):
        row = []
        for k in range(Y.simplex_count(m)):
            h, xi = Y.payload(m, k)
            target = (_pushforward_op(xi, g_inv), inverse(decor_word((h, xi))))
            try:
                row.append(E.id_of(m, target))
            except KeyError:
                return False
        if len(set(row)) != E.simplex_count(m) or len(row) != E.simplex_count(m):
            return False
        table.append(row)
    for m in range(1, max_dim + 1):
        for k in range(Y.simplex_count(m)):
            for i in range(m + 1):
                if table[m - 1][Y.face(m, k, i)] != E.face(m, table[m][k], i):
                    return False
    for m in range(max_dim):
        for k in range(Y.simplex_count(m)):
            for i in range(m + 1):
                if table[m + 1][Y.degeneracy(m, k, i)] != E.degeneracy(m, table[m][k], i):
                    return False
    return True


# ---------------------------------------------------------------------------
# cochains, curvature, extension


@dataclass
class TwoCochain:
    """A 0/1 value per 2-simplex of a base."""

    values: tuple[int, ...]

    def __post_init__(self):
        if any(v not in (0, 1) for v in self.values):
            raise ValueError("cochain values must be 0 or 1")


@dataclass
class Obstruction:
    """The first simplex over which a decoration could not be extended."""

    dim: int
    simplex_id: int

    def to_json(self) -> dict:
        return {"obstruction": {"dim": self.dim, "simplex": self.simplex_id}}


def chern_cochain(decor: Decoration) -> TwoCochain:
    """1 on the 2-simplices decorated with the twisted class, else 0."""
    if decor.base.max_dim < 2:
        return TwoCochain(())
    return TwoCochain(tuple(int(c == TWISTED) for c in decor.assignment[2]))


def decorate_from_cochain(base: TruncatedSimplicialSet, cochain: TwoCochain) -> Decoration:
    """The decoration of a base of dimension <= 2 with the given curvature.

    Dimensions 0 and 1 have a single rotation class each, so the cochain
    determines the decoration completely.
    """
    if base.max_dim > 2:
        raise ValueError("cochain decorations need a base of dimension <= 2")
    if len(cochain.values) != (base.simplex_count(2) if base.max_dim == 2 else 0):
        raise ValueError("cochain length must match the number of 2-simplices")
    assignment = [[CircularPermutation((0,))] * base.simplex_count(0)]
    if base.max_dim >= 1:
        assignment.append([CircularPermutation((0, 1))] * base.simplex_count(1))
    if base.max_dim == 2:
        assignment.append([TWISTED if v else FLAT for v in cochain.values])
    return Decoration(base, assignment)


def extend_decoration(base: TruncatedSimplicialSet, partial: dict) -> Decoration | Obstruction:
    """Greedy dimension-by-dimension extension of a partial assignment.

    partial maps (dim, simplex_id) to a rotation class.  Unassigned
    simplices get the lexicographically first class compatible with their
    already-decorated faces; if none exists the blocking simplex is
    reported.  An inconsistent partial assignment raises.
    """
    if base.has_degeneracies:
        raise ValueError("decorations live on face-only bases")
    assignment: list[list[CircularPermutation | None]] = [
        [None] * base.simplex_count(n) for n in range(base.max_dim + 1)
    ]
    for (n, k), c in partial.items():
        if not isinstance(c, CircularPermutation) or c.degree != n:
            raise ValueError(f"bad partial value at dim {n} id {k}")
        assignment[n][k] = c
    for n in range(base.max_dim + 1):
        for k in range(base.simplex_count(n)):
            fixed = assignment[n][k]
            if fixed is not None:
                if n >= 1 and any(
                    sc_face(i, fixed) != assignment[n - 1][base.face(n, k, i)] for i in range(n + 1)
                ):
                    raise ValueError(f"partial assignment incompatible at dim {n} id {k}")
                continue
            found = None
            for c in all_circular(n):
                if n == 0 or all(
                    sc_face(i, c) == assignment[n - 1][base.face(n, k, i)] for i in range(n + 1)
                ):
                    found = c
                    break
            if found is None:
                return Obstruction(n, k)
            assignment[n][k] = found
    return Decoration(base, assignment)


def sphere_cochain_degree(cochain: TwoCochain) -> int:
    """Signed sum of a cochain over the boundary sphere of the 3-simplex.

    The triangles in payload order are (0,1,2), (0,1,3), (0,2,3), (1,2,3);
    the fundamental cycle weights the triangle missing vertex v by (-1)^v.
    """
    if len(cochain.values) != 4:
        raise ValueError("expected a cochain on the four boundary triangles")
    signs = (-1, 1, -1, 1)
    return sum(s * v for s, v in zip(signs, cochain.values))


# ---------------------------------------------------------------------------
# decoration serialization


def decoration_to_json(decor: Decoration) -> dict:
    from .simpset import sset_to_json

    return {
        "base": sset_to_json(decor.base),
        "assignment": [
            {
                "dim": n,
                "values": ["circ:" + ",".join(map(str, c.word)) for c in level],
            }
            for n, level in enumerate(decor.assignment)
        ],
    }


def _parse_circ(s: str) -> CircularPermutation:
    if not s.startswith("circ:"):
        raise ValueError(f"expected a circ: payload, got {s!r}")
    return CircularPermutation(tuple(int(v) for v in s[5:].split(",")))


def decoration_from_json(obj: dict) -> Decoration:
    from .simpset import sset_from_json

    base = sset_from_json(obj["base"])
    raw = obj["assignment"]
    if isinstance(raw, dict):
        raw = [raw]
    levels = {entry["dim"]: [_parse_circ(s) for s in entry["values"]] for entry in raw}
    assignment = []
    for n in range(base.max_dim + 1):
        if n not in levels:
            if n == 0:
                assignment.append([CircularPermutation((0,))] * base.simplex_count(0))
            elif n == 1:
                assignment.append([CircularPermutation((0, 1))] * base.simplex_count(1))
            else:
                raise ValueError(f"assignment missing dimension {n}")
        else:
            assignment.append(levels[n])
    return Decoration(base, assignment)
