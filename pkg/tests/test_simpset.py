"""Truncated simplicial sets: builders, audits, maps, and serialization."""

import json
from math import comb, factorial

import pytest

from csx.perms import all_perms, cyclic_word, inverse, tau
from csx.simpset import (
    CircularPermutation,
    SimplicialMap,
    all_circular,
    assert_valid,
    audit_identities,
    build_C,
    build_S,
    build_SC,
    build_delta,
    dumps_canonical,
    evaluate_operator,
    from_rules,
    nondegenerate_list,
    payload_str,
    pullback,
    quotient_circ,
    quotient_map,
    reorient_upsilon,
    sc_degeneracy,
    sc_face,
    sc_is_degenerate,
    sset_from_json,
    sset_to_json,
    twisted_product,
    yoneda,
)

# relabeling-free fixed points under rotation: nondegenerate class counts
DERANGEMENTS = (1, 0, 1, 2, 9, 44, 265, 1854)


def test_circular_permutation_canonical_form():
    c = quotient_circ((2, 0, 1))
    assert c.word[0] == 0
    assert quotient_circ((1, 2, 0)) == c
    assert quotient_circ((0, 1, 2)) == c
    assert len(set(quotient_circ(g) for g in all_perms(2))) == 2
    with pytest.raises(ValueError):
        CircularPermutation((1, 0, 2))  # not rotated to start at 0
    with pytest.raises(ValueError):
        CircularPermutation((0, 0, 1))


def test_sc_face_matches_word_quotient():
    from csx.perms import face_perm, degeneracy_perm

    for n in (1, 2, 3):
        for g in all_perms(n):
            c = quotient_circ(g)
            for i in range(n + 1):
                assert sc_face(i, c) == quotient_circ(face_perm(i, g))
                assert sc_degeneracy(i, c) == quotient_circ(degeneracy_perm(i, g))


def test_all_circular_counts():
    for n in range(6):
        classes = all_circular(n)
        assert len(classes) == factorial(n)
        assert len(set(classes)) == len(classes)


def test_builder_counts():
    S = build_S(5)
    C = build_C(5)
    SC = build_SC(5)
    for n in range(6):
        assert S.simplex_count(n) == factorial(n + 1)
        assert C.simplex_count(n) == n + 1
        assert SC.simplex_count(n) == factorial(n)
    assert [len(nondegenerate_list(S, n)) for n in range(6)] == [1, 1, 3, 11, 53, 309]
    assert [len(nondegenerate_list(C, n)) for n in range(6)] == [1, 1, 0, 0, 0, 0]
    assert [len(nondegenerate_list(SC, n)) for n in range(6)] == list(DERANGEMENTS[:6])


def test_builders_pass_identity_audit():
    for X in (build_S(4), build_C(5), build_SC(4), build_delta(3, 4)):
        assert audit_identities(X) == []
        assert_valid(X)


def test_audit_catches_corruption():
    X = build_delta(2, 3)
    k = X.id_of(2, (0, 1, 2))  # a simplex with three distinct faces
    faces = [None] + [list(map(list, level)) for level in X.faces[1:]]
    faces[2][k][0], faces[2][k][1] = faces[2][k][1], faces[2][k][0]
    from csx.simpset import TruncatedSimplicialSet

    broken = TruncatedSimplicialSet(
        X.max_dim,
        X.payloads,
        [None] + [tuple(map(tuple, level)) for level in faces[1:]],
        X.degeneracies,
    )
    assert audit_identities(broken)
    with pytest.raises(ValueError):
        assert_valid(broken)


def test_delta_counts_and_nondegenerates():
    for n in (1, 2, 3):
        D = build_delta(n, n + 2)
        for m in range(n + 3):
            assert D.simplex_count(m) == comb(m + n + 1, m + 1)
            # nondegenerate simplices are the injections
            assert len(nondegenerate_list(D, m)) == (comb(n + 1, m + 1) if m <= n else 0)


def test_sc_is_degenerate_matches_tables():
    SC = build_SC(5)
    for n in range(1, 6):
        table = set(nondegenerate_list(SC, n))
        for k in range(SC.simplex_count(n)):
            assert sc_is_degenerate(SC.payload(n, k)) == (k not in table)


def test_quotient_fibers():
    max_dim = 5
    q = quotient_map(max_dim)
    S, SC = q.source, q.target
    for n in range(max_dim + 1):
        sizes = {}
        for k in range(S.simplex_count(n)):
            sizes[q.apply(n, k)] = sizes.get(q.apply(n, k), 0) + 1
        assert set(sizes) == set(range(SC.simplex_count(n)))
        assert all(v == n + 1 for v in sizes.values())


def test_twisted_product_counts_and_audit():
    X = twisted_product(build_C(3), build_delta(2, 3))
    for m in range(4):
        assert X.simplex_count(m) == (m + 1) * comb(m + 3, m + 1)
    assert audit_identities(X) == []


def test_twisted_product_projects_to_group():
    from csx.perms import face_perm

    G = build_C(3)
    X = twisted_product(G, build_delta(2, 3))
    proj = SimplicialMap.from_payload_fn(X, G, lambda n, p: p[0])
    assert proj.table  # construction checks commutation


def test_twisted_product_twist_engages_only_off_identity():
    from csx.perms import identity_perm

    G = build_C(2)
    D = build_delta(1, 2)
    X = twisted_product(G, D)
    saw_twist = False
    for n in range(1, 3):
        for k in range(X.simplex_count(n)):
            h, x = X.payload(n, k)
            for i in range(n + 1):
                componentwise = D.payload(n - 1, D.face(n, D.id_of(n, x), i))
                twisted = X.payload(n - 1, X.face(n, k, i))[1]
                if h == identity_perm(n):
                    assert twisted == componentwise
                elif twisted != componentwise:
                    saw_twist = True
    assert saw_twist


def test_pullback_of_quotient_with_itself():
    max_dim = 3
    q = quotient_map(max_dim)
    P, p1, p2 = pullback(q, q)
    for n in range(max_dim + 1):
        # pairs of words in the same rotation class
        assert P.simplex_count(n) == factorial(n) * (n + 1) ** 2
    assert audit_identities(P) == []
    for n in range(max_dim + 1):
        for k in range(P.simplex_count(n)):
            a, b = P.payload(n, k)
            assert quotient_circ(a) == quotient_circ(b)


def test_evaluate_operator_against_composition():
    D = build_delta(2, 4)
    n, k = 2, D.id_of(2, (0, 1, 2))
    # the identity operator returns the simplex itself
    assert evaluate_operator(D, (0, 1, 2), n, k) == (2, k)
    # a face then a degeneracy, composed as value words
    m, kk = evaluate_operator(D, (0, 0, 2), n, k)
    assert m == 2 and D.payload(2, kk) == (0, 0, 2)
    m, kk = evaluate_operator(D, (1,), n, k)
    assert m == 0 and D.payload(0, kk) == (1,)
    with pytest.raises(ValueError):
        evaluate_operator(D, (2, 1), n, k)


def test_yoneda_hits_every_operator_image():
    SC = build_SC(3)
    c = SC.id_of(2, quotient_circ((0, 2, 1)))
    y = yoneda(SC, 2, c, 3)
    D = y.source
    assert y.apply(2, D.id_of(2, (0, 1, 2))) == c
    # vertices all land on the unique 0-class
    for k in range(D.simplex_count(0)):
        assert y.apply(0, k) == 0


def test_reorient_identity_decoration_flips_words():
    S = build_S(3)
    ident = SimplicialMap.from_payload_fn(S, S, lambda n, w: w)
    Y = reorient_upsilon(S, ident)
    assert audit_identities(Y) == []
    # inversion is simplicial on the reoriented object
    SimplicialMap.from_payload_fn(Y, S, lambda n, w: inverse(w))
    # the identity is generally NOT simplicial on Y
    with pytest.raises(ValueError):
        SimplicialMap.from_payload_fn(Y, S, lambda n, w: w)


def test_reorient_constant_identity_decoration_is_noop():
    from csx.perms import identity_perm

    X = build_SC(3)
    S = build_S(3)
    const = SimplicialMap.from_payload_fn(X, S, lambda n, c: identity_perm(n))
    Y = reorient_upsilon(X, const)
    assert Y.faces == X.faces
    assert Y.degeneracies == X.degeneracies


def test_reorient_preserves_counts():
    S = build_S(3)
    ident = SimplicialMap.from_payload_fn(S, S, lambda n, w: w)
    Y = reorient_upsilon(S, ident)
    for n in range(4):
        assert Y.simplex_count(n) == S.simplex_count(n)
        assert len(nondegenerate_list(Y, n)) == len(nondegenerate_list(S, n))


def test_reorient_twice_is_identity():
    S = build_S(3)
    ident = SimplicialMap.from_payload_fn(S, S, lambda n, w: w)
    Y = reorient_upsilon(S, ident)
    inv = SimplicialMap.from_payload_fn(Y, S, lambda n, w: inverse(w))
    Z = reorient_upsilon(Y, inv)
    assert Z.faces == S.faces
    assert Z.degeneracies == S.degeneracies


def test_simplicial_map_rejects_bad_table():
    C = build_C(2)
    S = build_S(2)
    table = [
        tuple(S.id_of(n, C.payload(n, k)) for k in range(C.simplex_count(n)))
        for n in range(3)
    ]
    SimplicialMap(C, S, table)  # words include into words
    bad = [tuple(row) for row in table]
    wrong = list(bad[2])
    wrong[C.id_of(2, (1, 2, 0))] = S.id_of(2, (0, 2, 1))
    bad[2] = tuple(wrong)
    with pytest.raises(ValueError):
        SimplicialMap(C, S, bad)


def test_from_rules_rejects_duplicates():
    with pytest.raises(ValueError):
        from_rules(0, [[(0,), (0,)]], lambda n, p, i: p)


def test_payload_str_forms():
    assert payload_str((2, 0, 1)) == "2,0,1"
    assert payload_str(quotient_circ((1, 2, 0))) == "circ:0,1,2"
    assert payload_str(((0, 1), quotient_circ((0, 1)))) == "(0,1)x(circ:0,1)"


def test_json_round_trip_preserves_tables():
    for X in (build_SC(3), build_C(4), twisted_product(build_C(2), build_delta(1, 2))):
        obj = sset_to_json(X)
        Y = sset_from_json(json.loads(json.dumps(obj)))
        assert Y.max_dim == X.max_dim
        assert Y.faces == X.faces
        assert Y.degeneracies == X.degeneracies
        for n in range(X.max_dim + 1):
            assert Y.payload(n, 0) == payload_str(X.payload(n, 0))


def test_json_import_validates():
    obj = sset_to_json(build_C(2))
    obj["dims"][1]["faces"][1] = [99, 0]
    with pytest.raises(ValueError):
        sset_from_json(obj)


def test_dumps_canonical_is_stable():
    a = dumps_canonical({"b": [1, 2], "a": {"y": 0, "x": 1}})
    b = dumps_canonical({"a": {"x": 1, "y": 0}, "b": [1, 2]})
    assert a == b
    assert a.endswith("\n")
    assert " " not in a


def test_tau_class_generates_sc_one_dim():
    # dimension 1 of the quotient: a single class through tau
    assert quotient_circ(tau(1)) == quotient_circ(cyclic_word(1, 0))
    assert len(all_circular(1)) == 1
