"""Characteristic series via the star operator, and related structure queries.

For a finite group G, star(G) is the intersection of all normal subgroups
whose quotient is abelian or simple; G/star(G) splits as (abelianization)
x (largest semisimple quotient).  Iterating star yields a strictly
descending characteristic series whose length is the level of G.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .errors import PreconditionError
from .groups import (
    ENUMERATION_CAP,
    PermGroup,
    StabilizerChain,
    center,
    derived_subgroup,
    enumerate_elements,
    from_elements,
    intersection,
    is_perfect,
    normal_closure,
    quotient_action,
)
from .gmodule import abelian_group_basis
from .perms import Permutation

_MIN_GEN_TRIALS = 512
_EXHAUSTIVE_TUPLES = 10**6


def normal_subgroups(G: PermGroup, cap: int = ENUMERATION_CAP) -> list[PermGroup]:
    """All normal subgroups, as join-closure of class normal closures."""
    from .groups import conjugacy_classes

    cached = getattr(G, "_normal_subgroups_cache", None)
    if cached is not None:
        return cached
    classes = conjugacy_classes(G, cap)
    found: dict[frozenset, PermGroup] = {}

    def register(H: PermGroup) -> frozenset:
        key = frozenset(h.images for h in enumerate_elements(H, cap))
        if key not in found:
            found[key] = H
        return key

    trivial = PermGroup(G.degree, ())
    register(trivial)
    for cls in classes:
        register(normal_closure(G, [cls[0]]))
    while True:
        keys = list(found)
        new = []
        for a, b in itertools.combinations(keys, 2):
            if a <= b or b <= a:
                continue
            join = PermGroup(
                G.degree,
                tuple(found[a].generators) + tuple(found[b].generators),
            )
            key = frozenset(h.images for h in enumerate_elements(join, cap))
            if key not in found:
                new.append(join)
        if not new:
            break
        for H in new:
            register(H)
    subs = sorted(found.values(), key=lambda H: (H.order, sorted(_element_key(H, cap))))
    G._normal_subgroups_cache = subs
    return subs


def _element_key(H: PermGroup, cap: int = ENUMERATION_CAP):
    return [h.images for h in enumerate_elements(H, cap)]


def star_subgroup(G: PermGroup, cap: int = ENUMERATION_CAP) -> PermGroup:
    """Intersection of all normal subgroups with abelian or simple quotient.

    Equals derived(G) intersected with every maximal normal subgroup whose
    quotient is nonabelian simple.
    """
    D = derived_subgroup(G)
    if G.order == 1:
        return D
    normals = normal_subgroups(G, cap)
    sets = {id(N): frozenset(_element_key(N, cap)) for N in normals}
    proper = [N for N in normals if N.order < G.order]
    derived_set = frozenset(_element_key(D, cap))
    result = D
    for N in proper:
        n_set = sets[id(N)]
        maximal = not any(
            M.order > N.order and M.order < G.order and n_set < sets[id(M)]
            for M in proper
        )
        if maximal and not derived_set <= n_set:
            result = intersection(result, N, cap)
    return result


def star_chain(G: PermGroup, max_depth: int = 16, cap: int = ENUMERATION_CAP):
    """The series G = G_0 > G_1 > ... and its level (None if depth runs out)."""
    cached = getattr(G, "_star_chain_cache", None)
    if cached is not None and (cached[1] is not None or cached[2] >= max_depth):
        return cached[0], cached[1]
    series = [G]
    level: int | None = None
    while True:
        cur = series[-1]
        if cur.order == 1:
            level = len(series) - 1
            break
        if len(series) > max_depth:
            break
        nxt = star_subgroup(cur, cap)
        if nxt.order == cur.order:
            break
        series.append(nxt)
    G._star_chain_cache = (series, level, max_depth)
    return series, level


@dataclass(frozen=True)
class StructureReport:
    series: tuple[PermGroup, ...]
    level: int | None
    perfect: bool
    min_generators: int | None
    mg_bound: int
    abelianization_invariants: tuple[int, ...]

    @property
    def level_text(self) -> str:
        return "infinite" if self.level is None else str(self.level)

    @property
    def dmin_text(self) -> str:
        if self.min_generators is None:
            return f">{self.mg_bound}"
        return str(self.min_generators)


def star_series(
    G: PermGroup,
    max_depth: int = 16,
    mg_bound: int = 4,
    cap: int = ENUMERATION_CAP,
) -> StructureReport:
    series, level = star_chain(G, max_depth, cap)
    perfect = is_perfect(G)
    if perfect:
        invariants: tuple[int, ...] = ()
    else:
        ab = quotient_action(G, derived_subgroup(G), cap).quotient
        _, orders = abelian_group_basis(ab, cap)
        invariants = tuple(orders)
    return StructureReport(
        series=tuple(series),
        level=level,
        perfect=perfect,
        min_generators=min_generators(G, mg_bound, cap=cap),
        mg_bound=mg_bound,
        abelianization_invariants=invariants,
    )


def min_generators(
    G: PermGroup,
    bound: int,
    cap: int = ENUMERATION_CAP,
    trials: int = _MIN_GEN_TRIALS,
) -> int | None:
    """Least t <= bound such that some t-tuple generates G, else None.

    Seeded random sampling with an exhaustive sweep when the tuple space is
    small; beyond the exhaustive threshold a None answer is inconclusive.
    """
    if bound < 0:
        raise PreconditionError("bound must be nonnegative")
    if G.order == 1:
        return 0
    known = getattr(G, "_min_generators_cache", None)
    if known is not None:
        value, none_bound = known
        if value is not None and value <= bound:
            return value
        if value is None and bound <= none_bound:
            return None
    elements = None
    for t in range(1, bound + 1):
        if t == 1:
            if any(g.order() == G.order for g in enumerate_elements(G, cap)):
                G._min_generators_cache = (1, 0)
                return 1
            continue
        found = False
        rng = random.Random(G.order * 1_000_003 + t)
        for _ in range(trials):
            tup = [G.sample(rng) for _ in range(t)]
            if StabilizerChain(G.degree, tup).order() == G.order:
                found = True
                break
        if not found and G.order**t <= _EXHAUSTIVE_TUPLES:
            if elements is None:
                elements = enumerate_elements(G, cap)
            for tup in itertools.product(elements, repeat=t):
                if StabilizerChain(G.degree, tup).order() == G.order:
                    found = True
                    break
        if found:
            G._min_generators_cache = (t, 0)
            return t
    G._min_generators_cache = (None, bound)
    return None


def is_in_Y(
    G: PermGroup, d: int, k: int, cap: int = ENUMERATION_CAP
) -> tuple[bool, str]:
    """Is G a d-generated perfect group whose star series reaches 1 within k steps?"""
    if not is_perfect(G):
        return False, "not perfect"
    if min_generators(G, d, cap=cap) is None:
        return False, f"no generating tuple of size at most {d} found"
    _, level = star_chain(G, max_depth=max(k + 1, 2), cap=cap)
    if level is None or level > k:
        return False, f"star series level {level} exceeds {k}"
    return True, "ok"


def split_star_trivial(
    W: PermGroup, cap: int = ENUMERATION_CAP
) -> tuple[PermGroup, PermGroup]:
    """Decompose a star-trivial group as (abelian part, semisimple part).

    The abelian part is the center, the semisimple part the derived
    subgroup; the direct decomposition is verified before returning.
    """
    if star_subgroup(W, cap).order != 1:
        raise PreconditionError("group is not star-trivial")
    A = center(W, cap)
    S = derived_subgroup(W)
    if A.order * S.order != W.order:
        raise PreconditionError("center and derived subgroup do not split the group")
    if intersection(A, S, cap).order != 1:
        raise PreconditionError("center meets the derived subgroup nontrivially")
    semisimple_factors(S, cap)
    return A, S


def semisimple_factors(S: PermGroup, cap: int = ENUMERATION_CAP) -> list[PermGroup]:
    """The simple direct factors of a semisimple group (errors otherwise)."""
    if S.order == 1:
        return []
    normals = normal_subgroups(S, cap)
    sets = [frozenset(_element_key(N, cap)) for N in normals]
    minimal = []
    for i, N in enumerate(normals):
        if N.order == 1:
            continue
        if any(
            normals[j].order > 1 and sets[j] < sets[i] for j in range(len(normals))
        ):
            continue
        minimal.append(N)
    product_order = 1
    gens = []
    for M in minimal:
        if _is_abelian(M):
            raise PreconditionError("minimal normal subgroup is abelian")
        if len(normal_subgroups(M, cap)) != 2:
            raise PreconditionError("minimal normal subgroup is not simple")
        product_order *= M.order
        gens.extend(M.generators)
    if product_order != S.order:
        raise PreconditionError("minimal normal subgroups do not fill the group")
    if PermGroup(S.degree, gens).order != S.order:
        raise PreconditionError("factors do not generate the group")
    return minimal


def _is_abelian(G: PermGroup) -> bool:
    gens = G.reduced_generators()
    return all(a * b == b * a for a in gens for b in gens)


class InternalDirectProduct:
    """Component lookup for an internal direct product decomposition."""

    def __init__(self, whole: PermGroup, factors, cap: int = ENUMERATION_CAP):
        self.whole = whole
        self.factors = list(factors)
        self._components: dict[Permutation, tuple[Permutation, ...]] = {}
        element_lists = [enumerate_elements(F, cap) for F in self.factors]
        for combo in itertools.product(*element_lists):
            x = whole.identity
            for c in combo:
                x = x * c
            if x in self._components:
                raise PreconditionError("decomposition is not direct")
            self._components[x] = combo
        if len(self._components) != whole.order:
            raise PreconditionError("factors do not fill the group")

    def components(self, x: Permutation) -> tuple[Permutation, ...]:
        try:
            return self._components[x]
        except KeyError:
            raise PreconditionError("element is not in the group") from None
