"""Kernel operations, each checked against the BFS-closure oracle."""

import pytest

from perfectcover.errors import InputError, PreconditionError, SizeLimitError
from perfectcover.groups import (
    PermGroup,
    build_group,
    center,
    centralizer,
    commutator_subgroup,
    conjugacy_class_of,
    conjugacy_classes,
    derived_subgroup,
    enumerate_elements,
    from_elements,
    intersection,
    is_member,
    is_normal,
    mulclose,
    normal_closure,
    quotient_action,
)
from perfectcover.perms import Permutation, commutator, parse_cycles


def P(text, degree):
    return parse_cycles(text, degree)


def brute_elements(G):
    return set(mulclose(G.generators, degree=G.degree))


def test_build_group_examples():
    G = build_group(5, [P("(1 2 3 4 5)", 5), P("(1 2 3)", 5)])
    assert G.order == len(brute_elements(G)) == 60
    assert build_group(4, []).order == 1
    G = build_group(3, [P("(1 2)", 3), P("(1 2 3)", 3)])
    assert G.order == len(brute_elements(G)) == 6


def test_build_group_rejects_bad_degree():
    with pytest.raises(InputError):
        build_group(3, [P("(1 2 3 4)", 4)])


def test_chain_order_matches_bfs_closure(groups):
    for name, G in groups.items():
        assert G.order == len(brute_elements(G)), name


def test_membership_agrees_with_enumeration(groups):
    for name in ("S3", "A4", "A5", "PSL27"):
        G = groups[name]
        elements = set(enumerate_elements(G))
        assert all(is_member(G, x) for x in elements)
        # a permutation outside the group of the same degree
        if name == "A5":
            assert not is_member(G, P("(1 2)", 5))


def test_membership_examples(groups):
    A5 = groups["A5"]
    assert is_member(A5, P("(1 2 3)", 5))
    assert not is_member(A5, P("(1 2)", 5))
    assert is_member(A5, Permutation.identity(5))


def test_enumerate_elements_examples(groups):
    assert len(enumerate_elements(groups["S3"], cap=10)) == 6
    trivial = build_group(3, [])
    assert enumerate_elements(trivial, cap=1) == [Permutation.identity(3)]
    with pytest.raises(SizeLimitError):
        enumerate_elements(groups["A5"], cap=59)


def test_normal_closure_examples(groups):
    S3 = groups["S3"]
    N = normal_closure(S3, [P("(1 2 3)", 3)])
    assert N.order == 3
    assert normal_closure(S3, [Permutation.identity(3)]).order == 1
    assert normal_closure(groups["A5"], [P("(1 2 3)", 5)]).order == 60
    with pytest.raises(PreconditionError):
        normal_closure(groups["A5"], [P("(1 2)", 5)])


def brute_derived(G):
    elements = list(brute_elements(G))
    comms = {commutator(a, b) for a in elements for b in elements}
    return set(mulclose(list(comms), degree=G.degree))


def test_derived_subgroup_examples(groups):
    D = derived_subgroup(groups["S3"])
    assert D.order == 3
    assert brute_elements(D) == brute_derived(groups["S3"])
    assert derived_subgroup(groups["A5"]).order == 60
    Z4 = build_group(4, [P("(1 2 3 4)", 4)])
    assert derived_subgroup(Z4).order == 1
    assert brute_elements(derived_subgroup(groups["A4"])) == brute_derived(
        groups["A4"]
    )


def test_derived_subgroup_is_normal_with_abelian_quotient(groups):
    for name in ("S3", "A4", "SL25"):
        G = groups[name]
        D = derived_subgroup(G)
        assert is_normal(G, D)
        elements = enumerate_elements(G)
        for a in elements[:10]:
            for b in elements[:10]:
                assert commutator(a, b) in D


def test_commutator_subgroup_examples(groups):
    A4, V4 = groups["A4"], groups["V4"]
    got = commutator_subgroup(A4, V4, A4)
    brute = {
        commutator(h, k)
        for h in brute_elements(V4)
        for k in brute_elements(A4)
    }
    assert brute_elements(got) == set(mulclose(list(brute), degree=4))
    assert got.order == 4

    trivial = build_group(4, [])
    assert commutator_subgroup(A4, trivial, A4).order == 1

    G = groups["E16A5"]
    T = normal_closure(G, [G.generators[2], G.generators[3]])
    assert T.order == 16
    assert commutator_subgroup(G, T, G).order == 16


def test_commutator_subgroup_containment_check(groups):
    with pytest.raises(PreconditionError):
        commutator_subgroup(groups["V4"], groups["A4"], groups["V4"])


def test_centralizer_examples(groups):
    A5 = groups["A5"]
    assert centralizer(A5, P("(1 2 3 4 5)", 5)).order == 5
    assert centralizer(A5, Permutation.identity(5)).order == 60
    assert centralizer(groups["S3"], P("(1 2)", 3)).order == 2


def test_conjugacy_classes_examples(groups):
    sizes = sorted(len(c) for c in conjugacy_classes(groups["A5"]))
    assert sizes == [1, 12, 12, 15, 20]
    assert sorted(len(c) for c in conjugacy_classes(groups["S3"])) == [1, 2, 3]
    trivial = build_group(2, [])
    assert conjugacy_classes(trivial) == [[Permutation.identity(2)]]


def test_class_size_times_centralizer(groups):
    for name in ("S3", "A4", "A5", "PSL27"):
        G = groups[name]
        classes = conjugacy_classes(G)
        assert sum(len(c) for c in classes) == G.order
        for cls in classes:
            assert G.order % len(cls) == 0
            assert len(cls) * centralizer(G, cls[0]).order == G.order


def test_conjugacy_class_of_matches_partition(groups):
    G = groups["A4"]
    classes = conjugacy_classes(G)
    for cls in classes:
        assert set(conjugacy_class_of(G, cls[0])) == set(cls)


def test_center_and_intersection(groups):
    SL = groups["SL25"]
    Z = center(SL)
    assert Z.order == 2
    assert intersection(Z, derived_subgroup(SL)).order == 2
    assert center(groups["A5"]).order == 1


def test_quotient_action(groups):
    SL = groups["SL25"]
    Z = center(SL)
    qmap = quotient_action(SL, Z)
    Q = qmap.quotient
    assert Q.order == 60
    for z in enumerate_elements(Z):
        assert qmap.apply(z).is_identity()
    # homomorphism property on a sample of pairs
    elements = enumerate_elements(SL)
    import random

    rng = random.Random(5)
    for _ in range(50):
        a, b = rng.choice(elements), rng.choice(elements)
        assert qmap.apply(a * b) == qmap.apply(a) * qmap.apply(b)
    # lift returns a representative of the right coset
    for q in enumerate_elements(Q)[:20]:
        assert qmap.apply(qmap.lift(q)) == q


def test_quotient_action_trivial_normal(groups):
    A5 = groups["A5"]
    qmap = quotient_action(A5, build_group(5, []))
    assert qmap.quotient is A5
    g = P("(1 2 3)", 5)
    assert qmap.apply(g) == g
    assert qmap.lift(g) == g


def test_from_elements_reduces(groups):
    elements = enumerate_elements(groups["A4"])
    G = from_elements(4, elements)
    assert G.order == 12
    assert len(G.generators) <= 4
