"""Structure queries, cross-checked against literal brute-force oracles."""

import pytest

from perfectcover.errors import PreconditionError
from perfectcover.groups import (
    PermGroup,
    build_group,
    derived_subgroup,
    enumerate_elements,
    from_elements,
    intersection,
    mulclose,
    quotient_action,
)
from perfectcover.perms import commutator, parse_cycles
from perfectcover.products import DirectProduct
from perfectcover.structure import (
    InternalDirectProduct,
    is_in_Y,
    min_generators,
    normal_subgroups,
    semisimple_factors,
    split_star_trivial,
    star_chain,
    star_series,
    star_subgroup,
)


def P(text, degree):
    return parse_cycles(text, degree)


# ------------------------------------------------------ brute oracles


def oracle_subgroups(G):
    """All subgroups generated by at most two elements (enough for the
    catalog groups used here)."""
    elements = enumerate_elements(G)
    seen = {}
    seen[frozenset({G.identity})] = [G.identity]
    for a in elements:
        for b in elements:
            key = frozenset(mulclose([a, b], degree=G.degree))
            if key not in seen:
                seen[key] = [a, b]
    return seen


def oracle_normal_subgroups(G):
    out = []
    for key in oracle_subgroups(G):
        if all(x.conjugate(g) in key for x in key for g in G.generators):
            out.append(key)
    return sorted(out, key=lambda s: (len(s), sorted(p.images for p in s)))


def oracle_star(G):
    """Literal definition: intersect every normal subgroup whose quotient
    is abelian or simple."""
    normals = [frozenset(enumerate_elements(N)) for N in normal_subgroups(G)]
    gens = list(G.generators)
    result = frozenset(enumerate_elements(G))
    for n_set in normals:
        abelian = all(
            commutator(a, b) in n_set for a in gens for b in gens
        )
        proper = len(n_set) < G.order
        maximal = proper and not any(
            n_set < m_set and len(m_set) < G.order for m_set in normals
        )
        if abelian or maximal:
            result = result & n_set
    return result


# ------------------------------------------------------------- tests


def test_normal_subgroups_examples(groups):
    assert [N.order for N in normal_subgroups(groups["S3"])] == [1, 3, 6]
    assert [N.order for N in normal_subgroups(groups["A5"])] == [1, 60]
    trivial = build_group(2, [])
    assert [N.order for N in normal_subgroups(trivial)] == [1]
    assert [N.order for N in normal_subgroups(groups["A4"])] == [1, 4, 12]


def test_normal_subgroups_against_two_generated_oracle(groups):
    for name in ("S3", "V4", "Z4", "A4", "A5"):
        G = groups[name]
        got = sorted(
            (frozenset(enumerate_elements(N)) for N in normal_subgroups(G)),
            key=lambda s: (len(s), sorted(p.images for p in s)),
        )
        assert got == oracle_normal_subgroups(G), name


def test_star_subgroup_examples(groups):
    assert star_subgroup(groups["A5"]).order == 1
    SL_star = star_subgroup(groups["SL25"])
    assert SL_star.order == 2
    assert star_subgroup(groups["Z4"]).order == 1


def test_star_subgroup_against_definition_oracle(groups):
    for name in ("S3", "V4", "Z4", "A4", "A5", "SL25", "E16A5"):
        G = groups[name]
        assert frozenset(enumerate_elements(star_subgroup(G))) == oracle_star(G), name


def test_star_series_orders(groups):
    expected = {
        "A5": [60, 1],
        "SL25": [120, 2, 1],
        "E16A5": [960, 16, 1],
        "S3": [6, 3, 1],
    }
    for name, orders in expected.items():
        series, level = star_chain(groups[name])
        assert [H.order for H in series] == orders, name
        assert level == len(orders) - 1


def test_star_series_trivial_group():
    trivial = build_group(2, [])
    series, level = star_chain(trivial)
    assert [H.order for H in series] == [1]
    assert level == 0


def test_star_series_report(groups):
    report = star_series(groups["SL25"])
    assert report.level == 2
    assert report.perfect
    assert report.abelianization_invariants == ()
    assert report.min_generators == 2

    report = star_series(groups["S3"])
    assert not report.perfect
    assert report.abelianization_invariants == (2,)


def test_star_is_normal_and_quotient_star_trivial(groups):
    for name in ("SL25", "E16A5", "S3"):
        G = groups[name]
        star = star_subgroup(G)
        quotient = quotient_action(G, star).quotient
        assert star_subgroup(quotient).order == 1


def test_min_generators_examples(groups):
    assert min_generators(groups["A5"], 3) == 2
    assert min_generators(build_group(2, []), 1) == 0
    assert min_generators(groups["V4"], 3) == 2
    assert min_generators(groups["Z4"], 2) == 1
    assert min_generators(groups["V4"], 1) is None


def test_is_in_Y_examples(groups):
    assert is_in_Y(groups["A5"], 2, 1)[0]
    ok, reason = is_in_Y(groups["SL25"], 2, 1)
    assert not ok and "level" in reason
    assert is_in_Y(groups["SL25"], 2, 2)[0]
    assert is_in_Y(build_group(2, []), 2, 0)[0]
    ok, reason = is_in_Y(groups["S3"], 2, 2)
    assert not ok and "perfect" in reason


def test_is_in_Y_monotone(groups):
    for name in ("A5", "SL25", "E16A5", "A5xA5"):
        G = groups[name]
        results = [[is_in_Y(G, d, k)[0] for k in range(0, 3)] for d in (1, 2, 3)]
        for d_idx in range(len(results)):
            for k_idx in range(2):
                # monotone in k
                assert not results[d_idx][k_idx] or results[d_idx][k_idx + 1]
            if d_idx + 1 < len(results):
                for k_idx in range(3):
                    # monotone in d
                    assert not results[d_idx][k_idx] or results[d_idx + 1][k_idx]


def test_split_star_trivial_examples(groups):
    prod = DirectProduct((groups["V4"], groups["A5"]))
    W = prod.full_group()
    A, S = split_star_trivial(W)
    assert A.order == 4 and S.order == 60
    assert intersection(A, S).order == 1

    A, S = split_star_trivial(groups["A5"])
    assert A.order == 1 and S.order == 60

    A, S = split_star_trivial(groups["V4"])
    assert A.order == 4 and S.order == 1


def test_split_star_trivial_rejects_nontrivial_star(groups):
    with pytest.raises(PreconditionError):
        split_star_trivial(groups["SL25"])


def test_semisimple_factors(groups):
    assert [M.order for M in semisimple_factors(groups["A5"])] == [60]
    facs = semisimple_factors(groups["A5xA5"])
    assert [M.order for M in facs] == [60, 60]
    assert semisimple_factors(build_group(2, [])) == []
    with pytest.raises(PreconditionError):
        semisimple_factors(groups["V4"])
    with pytest.raises(PreconditionError):
        semisimple_factors(groups["E16A5"])


def test_internal_direct_product_components(groups):
    facs = semisimple_factors(groups["A5xA5"])
    dec = InternalDirectProduct(groups["A5xA5"], facs)
    x = P("(1 2 3)(6 7 8 9 10)", 10)
    c0, c1 = dec.components(x)
    assert c0 * c1 == x
    assert c0 in facs[0] and c1 in facs[1]


def test_level_drops_by_one_in_the_quotient(groups):
    # quotient by the last nontrivial series term has level exactly one less;
    # this is the property the construction recursion relies on
    for name in ("A5", "SL25", "E16A5", "S3", "A5xA5"):
        G = groups[name]
        series, level = star_chain(G)
        if level is None or level < 1:
            continue
        quotient = quotient_action(G, series[level - 1]).quotient
        _, qlevel = star_chain(quotient)
        assert qlevel == level - 1, name
