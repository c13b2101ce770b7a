"""Permutation groups backed by a deterministic stabilizer chain.

The chain is built with a deterministic Schreier-Sims pass (no randomness,
base points chosen as least moved points, orbits discovered breadth-first
with generators in list order), so orders, membership tests and every
derived computation are reproducible bit for bit.

The independent oracle for all of this is :func:`mulclose`, a plain
breadth-first closure of the generating set.  It never consults the chain.
"""

from __future__ import annotations

from collections import deque

from .errors import InputError, InternalError, PreconditionError, SizeLimitError
from .perms import Permutation, commutator

ENUMERATION_CAP = 10**6


def mulclose(generators, cap: int = ENUMERATION_CAP, degree: int | None = None):
    """BFS closure of a generating set; the brute-force element oracle.

    Returns all elements of the generated group in discovery order.
    Raises SizeLimitError when more than `cap` elements appear.
    """
    gens = [g for g in generators if not g.is_identity()]
    if degree is None:
        if not gens:
            raise InputError("mulclose needs a degree when no generator moves a point")
        degree = gens[0].degree
    identity = Permutation.identity(degree)
    elements = {identity: None}
    frontier = deque([identity])
    while frontier:
        x = frontier.popleft()
        for g in gens:
            y = x * g
            if y not in elements:
                if len(elements) >= cap:
                    raise SizeLimitError(f"closure exceeded cap {cap}")
                elements[y] = None
                frontier.append(y)
    return list(elements)


class _Level:
    __slots__ = ("point", "transversal", "orbit")

    def __init__(self, point: int, identity: Permutation):
        self.point = point
        self.transversal = {point: identity}
        self.orbit = [point]


class StabilizerChain:
    """Base, basic orbits and transversals for a permutation group."""

    def __init__(self, degree: int, generators):
        self.degree = degree
        self.identity = Permutation.identity(degree)
        self.strong_gens: list[Permutation] = []
        self.levels: list[_Level] = []
        seen = set()
        for g in generators:
            if g.degree != degree:
                raise InputError("generator degree mismatch")
            if not g.is_identity() and g not in seen:
                seen.add(g)
                self.strong_gens.append(g)
        self._build()

    # -- construction -------------------------------------------------

    def _gens_at(self, i: int) -> list[Permutation]:
        base_prefix = [lev.point for lev in self.levels[:i]]
        return [
            g
            for g in self.strong_gens
            if all(g.images[b] == b for b in base_prefix)
        ]

    def _ensure_base_covers(self, g: Permutation) -> None:
        if g.is_identity():
            return
        for lev in self.levels:
            if g.images[lev.point] != lev.point:
                return
        for point in range(self.degree):
            if g.images[point] != point:
                self.levels.append(_Level(point, self.identity))
                return

    def _recompute_orbit(self, i: int) -> None:
        lev = self.levels[i]
        gens = self._gens_at(i)
        lev.transversal = {lev.point: self.identity}
        lev.orbit = [lev.point]
        queue = deque([lev.point])
        while queue:
            p = queue.popleft()
            rep = lev.transversal[p]
            for g in gens:
                q = g.images[p]
                if q not in lev.transversal:
                    lev.transversal[q] = rep * g
                    lev.orbit.append(q)
                    queue.append(q)

    def _sift_from(self, g: Permutation, start: int):
        """Strip g through levels >= start; returns (residue, level reached)."""
        for i in range(start, len(self.levels)):
            lev = self.levels[i]
            p = g.images[lev.point]
            if p == lev.point:
                continue
            t = lev.transversal.get(p)
            if t is None:
                return g, i
            g = g * t.inverse()
        return g, len(self.levels)

    def _build(self) -> None:
        for g in self.strong_gens:
            self._ensure_base_covers(g)
        for i in range(len(self.levels)):
            self._recompute_orbit(i)
        i = len(self.levels) - 1
        while i >= 0:
            extended = self._process_level(i)
            if extended is None:
                i -= 1
            else:
                i = extended

    def _process_level(self, i: int):
        """Sift all Schreier generators of level i; returns new work level or None."""
        lev = self.levels[i]
        gens = self._gens_at(i)
        for p in lev.orbit:
            t_p = lev.transversal[p]
            for s in gens:
                q = s.images[p]
                schreier = t_p * s * lev.transversal[q].inverse()
                if schreier.is_identity():
                    continue
                residue, j = self._sift_from(schreier, i + 1)
                if residue.is_identity():
                    continue
                self.strong_gens.append(residue)
                if j == len(self.levels):
                    self._ensure_base_covers(residue)
                    if j == len(self.levels):
                        raise InternalError("sift residue moves no point")
                for level in range(i + 1, j + 1):
                    self._recompute_orbit(level)
                return j
        return None

    # -- queries -------------------------------------------------------

    def order(self) -> int:
        n = 1
        for lev in self.levels:
            n *= len(lev.transversal)
        return n

    def sift(self, g: Permutation) -> Permutation:
        """Residue of g after stripping through the chain; identity iff member."""
        residue, _ = self._sift_from(g, 0)
        return residue

    def contains(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            raise InputError("degree mismatch in membership test")
        return self.sift(g).is_identity()

    def base(self) -> list[int]:
        return [lev.point for lev in self.levels]

    def sample(self, rng) -> Permutation:
        """Uniform random element, drawn via the transversals."""
        g = self.identity
        for lev in self.levels:
            p = lev.orbit[rng.randrange(len(lev.orbit))]
            g = lev.transversal[p] * g
        return g


class PermGroup:
    """A finite permutation group with its stabilizer chain."""

    def __init__(self, degree: int, generators):
        if degree < 1:
            raise InputError("degree must be positive")
        generators = tuple(generators)
        for g in generators:
            if g.degree != degree:
                raise InputError("generator degree mismatch")
        self.degree = degree
        self.generators = generators
        self.chain = StabilizerChain(degree, generators)
        self._order = self.chain.order()
        self._reduced: tuple[Permutation, ...] | None = None

    @property
    def order(self) -> int:
        return self._order

    @property
    def identity(self) -> Permutation:
        return self.chain.identity

    def __contains__(self, g: Permutation) -> bool:
        return self.chain.contains(g)

    def contains_group(self, other: PermGroup) -> bool:
        return all(g in self for g in other.generators)

    def is_trivial(self) -> bool:
        return self._order == 1

    def sample(self, rng) -> Permutation:
        return self.chain.sample(rng)

    def reduced_generators(self) -> tuple[Permutation, ...]:
        """A short generating subsequence of `generators`, greedily selected."""
        if self._reduced is None:
            chosen: list[Permutation] = []
            chain = StabilizerChain(self.degree, ())
            for g in self.generators:
                if not chain.contains(g):
                    chosen.append(g)
                    chain = StabilizerChain(self.degree, chosen)
                    if chain.order() == self._order:
                        break
            self._reduced = tuple(chosen)
        return self._reduced

    def elements(self, cap: int = ENUMERATION_CAP) -> list[Permutation]:
        return enumerate_elements(self, cap)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, order={self._order})"


def build_group(degree: int, generators) -> PermGroup:
    """Construct a group value with a complete stabilizer chain."""
    return PermGroup(degree, generators)


def order(G: PermGroup) -> int:
    return G.order


def is_member(G: PermGroup, g: Permutation) -> bool:
    return g in G


def enumerate_elements(G: PermGroup, cap: int = ENUMERATION_CAP) -> list[Permutation]:
    """All elements by BFS closure; errors if order(G) exceeds the cap."""
    if G.order > cap:
        raise SizeLimitError(f"group order {G.order} exceeds cap {cap}")
    return mulclose(G.generators, cap=cap, degree=G.degree)


def subgroup(degree: int, generators) -> PermGroup:
    return PermGroup(degree, generators)


def from_elements(degree: int, elements) -> PermGroup:
    """Group generated by an element list, with a reduced generating set."""
    chosen: list[Permutation] = []
    chain = StabilizerChain(degree, ())
    for g in elements:
        if not chain.contains(g):
            chosen.append(g)
            chain = StabilizerChain(degree, chosen)
    return PermGroup(degree, chosen)


def normal_closure(G: PermGroup, seeds) -> PermGroup:
    """Smallest subgroup containing `seeds` and closed under G-conjugation."""
    seeds = list(seeds)
    for s in seeds:
        if s not in G:
            raise PreconditionError("seed is not an element of the ambient group")
    conj_gens = G.reduced_generators()
    gens = [s for s in seeds if not s.is_identity()]
    chain = StabilizerChain(G.degree, gens)
    queue = deque(gens)
    while queue:
        h = queue.popleft()
        for g in conj_gens:
            c = h.conjugate(g)
            if not chain.contains(c):
                gens.append(c)
                chain = StabilizerChain(G.degree, gens)
                queue.append(c)
    return PermGroup(G.degree, gens)


def derived_subgroup(G: PermGroup) -> PermGroup:
    """[G, G]: normal closure of commutators of generator pairs."""
    gens = G.reduced_generators()
    seeds = []
    seen = set()
    for a in gens:
        for b in gens:
            c = commutator(a, b)
            if not c.is_identity() and c not in seen:
                seen.add(c)
                seeds.append(c)
    return normal_closure(G, seeds)


def is_perfect(G: PermGroup) -> bool:
    return derived_subgroup(G).order == G.order


def commutator_subgroup(G: PermGroup, H: PermGroup, K: PermGroup) -> PermGroup:
    """[H, K] for H, K <= G with at least one of them normal in G."""
    for sub in (H, K):
        if not all(g in G for g in sub.generators):
            raise PreconditionError("subgroup not contained in ambient group")
    if not (is_normal(G, H) or is_normal(G, K)):
        raise PreconditionError("neither argument is normal in the ambient group")
    joint = PermGroup(G.degree, tuple(H.generators) + tuple(K.generators))
    seeds = []
    seen = set()
    for h in H.generators:
        for k in K.generators:
            c = commutator(h, k)
            if not c.is_identity() and c not in seen:
                seen.add(c)
                seeds.append(c)
    return normal_closure(joint, seeds)


def is_normal(G: PermGroup, N: PermGroup) -> bool:
    if not all(n in G for n in N.generators):
        return False
    return all(
        n.conjugate(g) in N
        for n in N.generators
        for g in G.reduced_generators()
    )


def centralizer(G: PermGroup, g: Permutation, cap: int = ENUMERATION_CAP) -> PermGroup:
    """{h in G : hg = gh}, by filtering the element list (deliberately brute force)."""
    if g not in G:
        raise PreconditionError("element is not in the group")
    fixed = [h for h in enumerate_elements(G, cap) if h * g == g * h]
    return from_elements(G.degree, fixed)


def center(G: PermGroup, cap: int = ENUMERATION_CAP) -> PermGroup:
    gens = G.reduced_generators()
    central = [
        h for h in enumerate_elements(G, cap) if all(h * g == g * h for g in gens)
    ]
    return from_elements(G.degree, central)


def conjugacy_classes(G: PermGroup, cap: int = ENUMERATION_CAP) -> list[list[Permutation]]:
    """Partition of the elements into conjugacy classes, in discovery order."""
    gens = G.reduced_generators()
    elements = enumerate_elements(G, cap)
    unseen = dict.fromkeys(elements)
    classes = []
    for x in elements:
        if x not in unseen:
            continue
        del unseen[x]
        cls = [x]
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g in gens:
                z = y.conjugate(g)
                if z in unseen:
                    del unseen[z]
                    cls.append(z)
                    queue.append(z)
        classes.append(cls)
    return classes


def conjugacy_class_of(G: PermGroup, x: Permutation) -> list[Permutation]:
    """The class of x in G, with no full enumeration of G."""
    if x not in G:
        raise PreconditionError("element is not in the group")
    gens = G.reduced_generators()
    cls = {x: None}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for g in gens:
            z = y.conjugate(g)
            if z not in cls:
                cls[z] = None
                queue.append(z)
    return list(cls)


def intersection(G: PermGroup, H: PermGroup, cap: int = ENUMERATION_CAP) -> PermGroup:
    """G meet H, by filtering the smaller group's elements (desk scale)."""
    if G.degree != H.degree:
        raise InputError("degree mismatch in intersection")
    small, big = (G, H) if G.order <= H.order else (H, G)
    common = [x for x in enumerate_elements(small, cap) if x in big]
    return from_elements(G.degree, common)


class CosetMap:
    """The action of G on right cosets of a normal subgroup N.

    Cosets are identified by the least element they contain; coset 0 is N
    itself, so quotient permutations are determined by their image of 0.
    With N trivial the map is the identity on G.
    """

    def __init__(self, group: PermGroup, normal: PermGroup, cap: int = ENUMERATION_CAP):
        if not is_normal(group, normal):
            raise PreconditionError("subgroup is not normal")
        self.group = group
        self.normal = normal
        self.trivial = normal.order == 1
        if self.trivial:
            self.quotient = group
            return
        n_elements = sorted(enumerate_elements(normal, cap))
        if group.order // normal.order > cap:
            raise SizeLimitError("quotient degree exceeds cap")

        def canonical(g: Permutation) -> Permutation:
            return min(n * g for n in n_elements)

        self._canonical = canonical
        reps = [canonical(group.identity)]
        index = {reps[0]: 0}
        queue = deque([reps[0]])
        while queue:
            r = queue.popleft()
            for g in group.generators:
                c = canonical(r * g)
                if c not in index:
                    index[c] = len(reps)
                    reps.append(c)
                    queue.append(c)
        self.reps = reps
        self.index = index
        images = []
        for g in group.generators:
            images.append(
                Permutation(tuple(index[canonical(r * g)] for r in reps))
            )
        self.gen_images = images
        self.quotient = PermGroup(max(len(reps), 1), images)
        if self.quotient.order * normal.order != group.order:
            raise InternalError("coset action order mismatch")

    def apply(self, g: Permutation) -> Permutation:
        """Image of g in the quotient group."""
        if self.trivial:
            return g
        if g not in self.group:
            raise PreconditionError("element is not in the group")
        return Permutation(
            tuple(self.index[self._canonical(r * g)] for r in self.reps)
        )

    def lift(self, q: Permutation) -> Permutation:
        """The canonical representative of the coset q sends coset 0 to."""
        if self.trivial:
            return q
        return self.reps[q.images[0]]


def quotient_action(G: PermGroup, N: PermGroup, cap: int = ENUMERATION_CAP) -> CosetMap:
    """Quotient G/N realised as the permutation action on cosets of N."""
    return CosetMap(G, N, cap)
