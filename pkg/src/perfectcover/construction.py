"""The inductive construction of a perfect subdirect cover.

Given a finite family of d-generated perfect permutation groups whose
star series reach the trivial group within k steps, build generators of a
perfect subgroup of the direct product that surjects onto every member,
by recursion on k:

  * split each member over its last series term W_j = A_j x S_j,
  * recurse on the quotient family, lift the recursion's generators,
  * repair the lifts with commutator words, a congruence correction and a
    Gaschutz adjustment so they generate each member exactly,
  * absorb the abelian residues into a module Q with Q = [Q, Delta],
  * absorb the semisimple residues into a perfect group T built from a
    bounded cover of all simple factors,
  * take Gamma = <Delta, Q, T> and verify every claim directly.

Every choice is deterministic given the seed, and every intermediate
identity is asserted rather than assumed.  The construction transcript
retains all witnesses so a certificate can be verified from scratch.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .covering import _LayeredDecomposer, cover_tuples, covering_number, product_set
from .errors import InternalError, PreconditionError
from .gmodule import (
    GModule,
    augmentation_submodule,
    close_submodule,
    is_perfect_module,
    solve_commutator_decomposition,
)
from .groups import (
    ENUMERATION_CAP,
    CosetMap,
    PermGroup,
    StabilizerChain,
    commutator_subgroup,
    conjugacy_class_of,
    derived_subgroup,
    quotient_action,
)
from .perms import Permutation, commutator
from .products import DirectProduct, ProductElement
from .structure import (
    InternalDirectProduct,
    is_in_Y,
    semisimple_factors,
    split_star_trivial,
    star_chain,
)
from .words import Word, commutator_word_for, evaluate_word, gaschutz_lift

DEFAULT_BUDGET = 61


def _trivial_subgroup(G: PermGroup) -> PermGroup:
    return PermGroup(G.degree, ())


def _greedy_indices(degree: int, flats, target_order: int) -> list[int]:
    """Indices of a short generating subsequence, scanned in order."""
    chosen: list[int] = []
    gens: list[Permutation] = []
    chain = StabilizerChain(degree, ())
    for idx, g in enumerate(flats):
        if not chain.contains(g):
            chosen.append(idx)
            gens.append(g)
            chain = StabilizerChain(degree, gens)
            if chain.order() == target_order:
                break
    if chain.order() != target_order:
        raise InternalError("generator scan did not reach the full group")
    return chosen


@dataclass
class LevelSplit:
    """Per-factor decomposition data at one recursion level."""

    family: tuple[PermGroup, ...]
    names: tuple[str, ...]
    product: DirectProduct
    W: list[PermGroup]
    A: list[PermGroup]
    S: list[PermGroup]
    B: list[PermGroup]
    qmaps: list[CosetMap]

    @property
    def quotients(self) -> list[PermGroup]:
        return [qm.quotient for qm in self.qmaps]


@dataclass
class AlignedLifts:
    """Words and per-factor lifts satisfying the alignment identity."""

    m: int
    words: list[Word]
    padded_gens: list[ProductElement]
    lifts: list[list[Permutation]]
    k_res: list[list[Permutation]]
    s_res: list[list[Permutation]]


@dataclass
class QData:
    modules: list[GModule | None]
    q_elems: list[list[list[Permutation]] | None]
    q_coords: list[list[list[tuple[int, ...]]] | None]
    entries: list[tuple[int, int, int, ProductElement]]
    element_flats: frozenset


@dataclass
class TData:
    factor_of: list[int]
    simple_factors: list[list[PermGroup]]
    tuples: list[list[Permutation]]
    e: int
    e_per_factor: list[int]
    r: list[list[list[list[Permutation]]]]
    entries: list[tuple[int, int, int, int, ProductElement]]
    values: list[ProductElement]
    full_cover: bool


@dataclass
class LevelData:
    k_level: int
    split: LevelSplit
    aligned: AlignedLifts
    delta_gens: list[ProductElement]
    qdata: QData
    tdata: TData | None
    gamma: PermGroup
    gamma_gens: list[ProductElement]
    marked_idx: list[int]


@dataclass
class ConstructionCertificate:
    """Full witness data for one run of the construction."""

    family: tuple[PermGroup, ...]
    names: tuple[str, ...]
    d: int
    k: int
    seed: int
    budget: int
    cap: int
    levels: list[LevelData] = field(default_factory=list)
    gamma: PermGroup | None = None
    product: DirectProduct | None = None

    @property
    def top(self) -> LevelData | None:
        return self.levels[0] if self.levels else None


def split_levels(family, names, k: int, cap: int = ENUMERATION_CAP) -> LevelSplit:
    """W_j = (G_j)_{k-1} with its abelian/semisimple split and B_j = [A_j, G_j]."""
    if k < 1:
        raise PreconditionError("split_levels needs k >= 1")
    family = tuple(family)
    product = DirectProduct(family)
    Ws, As, Ss, Bs, qmaps = [], [], [], [], []
    for G in family:
        series, level = star_chain(G, max_depth=max(k + 1, 4), cap=cap)
        if level is None:
            raise PreconditionError("star series did not terminate")
        W = series[k - 1] if k - 1 < len(series) else _trivial_subgroup(G)
        A, S = split_star_trivial(W, cap)
        B = commutator_subgroup(G, A, G)
        qmap = quotient_action(G, W, cap)
        _, qlevel = star_chain(qmap.quotient, max_depth=max(k, 4), cap=cap)
        if qlevel is None or qlevel > k - 1:
            raise PreconditionError(
                f"quotient has star level {qlevel}, above {k - 1}"
            )
        Ws.append(W)
        As.append(A)
        Ss.append(S)
        Bs.append(B)
        qmaps.append(qmap)
    return LevelSplit(family, tuple(names), product, Ws, As, Ss, Bs, qmaps)


def _pad_generators(marked, sub_product: DirectProduct, d: int) -> list[ProductElement]:
    gens = list(marked)
    if not gens:
        gens.append(sub_product.identity_element())
    while len(gens) < d:
        gens.append(gens[-1])
    return gens


def recurse_and_align(
    split: LevelSplit,
    sub_gamma: PermGroup,
    sub_product: DirectProduct,
    marked,
    d: int,
    rng,
    cap: int = ENUMERATION_CAP,
) -> AlignedLifts:
    """Lift the recursion's generators into each member and repair them.

    After this step the tuple a_{.,j} generates G_j for every j and
    a_{i,j} * w_i(a_{1,j},...,a_{m,j})^-1 = k_{i,j} * s_{i,j} with
    k_{i,j} in B_j and s_{i,j} in S_j.
    """
    gens = _pad_generators(marked, sub_product, d)
    m = len(gens)
    flat_gens = [g.flat() for g in gens]
    words = [
        commutator_word_for(sub_gamma, flat_gens, g.flat(), cap=cap) for g in gens
    ]

    lifts: list[list[Permutation]] = []
    k_res: list[list[Permutation]] = []
    s_res: list[list[Permutation]] = []
    for j, G in enumerate(split.family):
        qmap = split.qmaps[j]
        W, A, S, B = split.W[j], split.A[j], split.S[j], split.B[j]
        ws_split = InternalDirectProduct(W, [A, S], cap)

        def residues(a_tuple):
            ks, ss = [], []
            for i in range(m):
                r = a_tuple[i] * evaluate_word(words[i], a_tuple).inverse()
                if r not in W:
                    raise InternalError("alignment residue left the split subgroup")
                kk, ss_part = ws_split.components(r)
                ks.append(kk)
                ss.append(ss_part)
            return ks, ss

        a = [qmap.lift(sub_product.project(flat_gens[i], j)) for i in range(m)]
        ks, ss = residues(a)
        # congruence correction: moves every abelian residue into B_j
        a = [ai * ki.inverse() for ai, ki in zip(a, ks)]
        ks, ss = residues(a)
        for kk in ks:
            if kk not in B:
                raise InternalError("congruence correction left a residue outside B")

        adjust = PermGroup(G.degree, tuple(B.generators) + tuple(S.generators))
        with_adjust = PermGroup(G.degree, tuple(a) + tuple(adjust.generators))
        if with_adjust.order != G.order:
            raise InternalError(
                "lifts do not generate modulo B*S; the Frattini argument failed"
            )
        a = gaschutz_lift(G, adjust, a, rng=rng, cap=cap)
        ks, ss = residues(a)
        for kk in ks:
            if kk not in B:
                raise InternalError("Gaschutz adjustment left a residue outside B")
        if StabilizerChain(G.degree, a).order() != G.order:
            raise InternalError("adjusted lifts do not generate the member")
        lifts.append(a)
        k_res.append(ks)
        s_res.append(ss)
    return AlignedLifts(m, words, gens, lifts, k_res, s_res)


def build_Q(
    split: LevelSplit, aligned: AlignedLifts, cap: int = ENUMERATION_CAP
) -> QData:
    """Solve the abelian residues as commutator combinations and close the
    resulting module under the diagonal action; asserts Q = [Q, Delta]."""
    m = aligned.m
    product = split.product
    modules: list[GModule | None] = []
    q_elems: list[list[list[Permutation]] | None] = []
    q_coords: list[list[list[tuple[int, ...]]] | None] = []
    for j, G in enumerate(split.family):
        A, B = split.A[j], split.B[j]
        if A.order == 1:
            for i in range(m):
                if not aligned.k_res[j][i].is_identity():
                    raise InternalError("nontrivial residue over a trivial abelian part")
            modules.append(None)
            q_elems.append(None)
            q_coords.append(None)
            continue
        M = GModule(G, A, aligned.lifts[j], cap)
        per_i_elems = []
        per_i_coords = []
        for i in range(m):
            target = aligned.k_res[j][i]
            if target.is_identity():
                qs = [A.identity] * m
            else:
                qs = solve_commutator_decomposition(M, aligned.lifts[j], target)
            per_i_elems.append(qs)
            per_i_coords.append([M.encode(q) for q in qs])
        modules.append(M)
        q_elems.append(per_i_elems)
        q_coords.append(per_i_coords)

    # Assemble the product-level witnesses and the module checks.
    delta = [
        ProductElement(product, {j: aligned.lifts[j][i] for j in range(len(split.family))})
        for i in range(m)
    ]
    k_vec = [
        ProductElement(product, {j: aligned.k_res[j][i] for j in range(len(split.family))})
        for i in range(m)
    ]
    q_vec = [
        [
            ProductElement(
                product,
                {
                    j: q_elems[j][i][l]
                    for j in range(len(split.family))
                    if q_elems[j] is not None
                },
            )
            for l in range(m)
        ]
        for i in range(m)
    ]
    for i in range(m):
        check = product.identity_element()
        for l in range(m):
            check = check * q_vec[i][l].inverse() * delta[l].inverse() * q_vec[i][l] * delta[l]
        if check != k_vec[i]:
            raise InternalError("assembled commutator decomposition failed")

    nontrivial = [j for j in range(len(split.family)) if modules[j] is not None]
    entries: list[tuple[int, int, int, ProductElement]] = []
    if nontrivial:
        ambient = product.full_group()
        carrier_gens = []
        for j in nontrivial:
            carrier_gens.extend(product.embed(j, g) for g in split.A[j].generators)
        carrier = PermGroup(product.degree, carrier_gens)
        prod_module = GModule(ambient, carrier, [g.flat() for g in delta], cap)
        mats = prod_module.matrices
        seed_vecs = []
        for i in range(m):
            for l in range(m):
                v = prod_module.encode(q_vec[i][l].flat())
                for T in mats:
                    seed_vecs.append(prod_module.augment(v, T))
        Q = close_submodule(prod_module, seed_vecs, mats)
        for i in range(m):
            if not Q.contains(prod_module.encode(k_vec[i].flat())):
                raise InternalError("abelian residue escaped the module Q")
        if not is_perfect_module(Q):
            raise InternalError("Q is not equal to [Q, Delta]")
        seen_values = set()
        for i in range(m):
            for l in range(m):
                for t in range(m):
                    value = ProductElement(
                        product,
                        {
                            j: commutator(q_elems[j][i][l], aligned.lifts[j][t])
                            for j in nontrivial
                        },
                    )
                    if value.is_identity():
                        continue
                    key = value.flat()
                    if key in seen_values:
                        continue
                    seen_values.add(key)
                    entries.append((i, l, t, value))
        element_flats = frozenset(
            prod_module.decode(v) for v in Q.elements
        )
        # re-express module elements as flats of the product
        element_flats = frozenset(x for x in element_flats)
    else:
        element_flats = frozenset({product.identity_element().flat()})
    return QData(modules, q_elems, q_coords, entries, element_flats)


def build_T(
    split: LevelSplit,
    aligned: AlignedLifts,
    budget: int,
    rng,
    cap: int = ENUMERATION_CAP,
) -> TData | None:
    """Cover the simple factors of the semisimple parts and decompose every
    semisimple residue as a bounded product of conjugates of cover
    generators; asserts the containments and that T is perfect."""
    m = aligned.m
    product = split.product
    factor_of: list[int] = []
    flat_factors: list[PermGroup] = []
    simple_factors: list[list[PermGroup]] = []
    decomposers: list[InternalDirectProduct | None] = []
    for j, S in enumerate(split.S):
        facs = semisimple_factors(S, cap)
        simple_factors.append(facs)
        if facs:
            decomposers.append(InternalDirectProduct(S, facs, cap))
        else:
            decomposers.append(None)
        for M in facs:
            factor_of.append(j)
            flat_factors.append(M)
    if not flat_factors:
        for j in range(len(split.family)):
            for i in range(m):
                if not aligned.s_res[j][i].is_identity():
                    raise InternalError("semisimple residue with no simple factors")
        return None

    g = budget
    tuples, full = cover_tuples(flat_factors, g, rng, cap)
    e_per_factor = []
    for M, tup in zip(flat_factors, tuples):
        X = frozenset({M.identity})
        for c in range(g):
            X = product_set(X, conjugacy_class_of(M, tup[c]), cap)
        e_per_factor.append(covering_number(M, X, cap).e)
    e = max(e_per_factor)

    # components of each semisimple residue in each simple factor
    s_comp: list[list[Permutation]] = []
    for idx, M in enumerate(flat_factors):
        j = factor_of[idx]
        pos = simple_factors[j].index(M)
        comps = []
        for i in range(m):
            comps.append(decomposers[j].components(aligned.s_res[j][i])[pos])
        s_comp.append(comps)

    r: list[list[list[list[Permutation]]]] = [[] for _ in range(m)]
    for idx, M in enumerate(flat_factors):
        decomposer = _LayeredDecomposer(M, tuples[idx], e, cap)
        for l in range(m):
            r[l].append(decomposer.decompose(s_comp[idx][l]))

    def m_elem(cprime: int) -> ProductElement:
        comps: dict[int, Permutation] = {}
        for idx, j in enumerate(factor_of):
            part = tuples[idx][cprime]
            comps[j] = comps.get(j, split.family[j].identity) * part
        return ProductElement(product, comps)

    def r_elem(l: int, c: int, t: int) -> ProductElement:
        comps: dict[int, Permutation] = {}
        for idx, j in enumerate(factor_of):
            part = r[l][idx][t][c]
            comps[j] = comps.get(j, split.family[j].identity) * part
        return ProductElement(product, comps)

    entries: list[tuple[int, int, int, int, ProductElement]] = []
    values: list[ProductElement] = []
    seen = set()
    for l in range(m):
        for c in range(g):
            for t in range(e):
                conj = r_elem(l, c, t)
                for cprime in range(g):
                    value = m_elem(cprime).conjugate(conj)
                    entries.append((cprime, l, c, t, value))
                    key = value.flat()
                    if key not in seen:
                        seen.add(key)
                        values.append(value)

    for l in range(m):
        check = product.identity_element()
        for t in range(e):
            for c in range(g):
                check = check * m_elem(c).conjugate(r_elem(l, c, t))
        s_l = ProductElement(
            product, {j: aligned.s_res[j][l] for j in range(len(split.family))}
        )
        if check != s_l:
            raise InternalError("cover decomposition does not reproduce the residue")

    return TData(
        factor_of, simple_factors, tuples, e, e_per_factor, r, entries, values, full
    )


def assemble_and_verify(
    split: LevelSplit,
    aligned: AlignedLifts,
    delta_gens,
    qdata: QData,
    tdata: TData | None,
    cap: int = ENUMERATION_CAP,
) -> tuple[PermGroup, list[ProductElement], list[int]]:
    """Gamma = <Delta u Q u T>; verify perfectness, the containment chain and
    all projections before returning."""
    product = split.product
    gamma_gens: list[ProductElement] = list(delta_gens)
    gamma_gens.extend(value for (_, _, _, value) in qdata.entries)
    if tdata is not None:
        gamma_gens.extend(tdata.values)
    gamma = product.subgroup(gamma_gens)

    derived = derived_subgroup(gamma)
    if derived.order != gamma.order:
        raise InternalError("Gamma is not perfect")
    for j, G in enumerate(split.family):
        if product.projection_of(gamma, j).order != G.order:
            raise InternalError("a projection of Gamma is not surjective")
    # containment chain mirroring the perfectness argument
    if tdata is not None:
        t_group = product.subgroup(tdata.values)
        if derived_subgroup(t_group).order != t_group.order:
            raise InternalError("T is not perfect")
        for value in tdata.values:
            if value.flat() not in derived:
                raise InternalError("a T generator escaped [Gamma, Gamma]")
        for l in range(aligned.m):
            s_l = ProductElement(
                product, {j: aligned.s_res[j][l] for j in range(len(split.family))}
            ).flat()
            if s_l not in t_group:
                raise InternalError("a semisimple residue escaped T")
    for _, _, _, value in qdata.entries:
        if value.flat() not in derived:
            raise InternalError("a Q generator escaped [Gamma, Gamma]")
    for i in range(aligned.m):
        k_flat = ProductElement(
            product, {j: aligned.k_res[j][i] for j in range(len(split.family))}
        ).flat()
        if k_flat not in qdata.element_flats:
            raise InternalError("an abelian residue escaped Q")
        if delta_gens[i].flat() not in derived:
            raise InternalError("a Delta generator escaped [Gamma, Gamma]")

    flats = [g.flat() for g in gamma_gens]
    marked_idx = _greedy_indices(product.degree, flats, gamma.order)
    return gamma, gamma_gens, marked_idx


def _construct_level(
    family,
    names,
    d: int,
    k: int,
    rng,
    budget: int,
    cap: int,
    levels: list[LevelData],
) -> tuple[PermGroup, list[ProductElement], DirectProduct]:
    product = DirectProduct(family)
    if k == 0:
        return product.subgroup([]), [], product
    split = split_levels(family, names, k, cap)
    sub_names = tuple(f"{n}/W" for n in names)
    sub_gamma, sub_marked, sub_product = _construct_level(
        split.quotients, sub_names, d, k - 1, rng, budget, cap, levels
    )
    aligned = recurse_and_align(split, sub_gamma, sub_product, sub_marked, d, rng, cap)
    delta_gens = [
        ProductElement(
            split.product, {j: aligned.lifts[j][i] for j in range(len(split.family))}
        )
        for i in range(aligned.m)
    ]
    qdata = build_Q(split, aligned, cap)
    tdata = build_T(split, aligned, budget, rng, cap)
    gamma, gamma_gens, marked_idx = assemble_and_verify(
        split, aligned, delta_gens, qdata, tdata, cap
    )
    levels.append(
        LevelData(
            k_level=k,
            split=split,
            aligned=aligned,
            delta_gens=delta_gens,
            qdata=qdata,
            tdata=tdata,
            gamma=gamma,
            gamma_gens=gamma_gens,
            marked_idx=marked_idx,
        )
    )
    marked = [gamma_gens[i] for i in marked_idx]
    return gamma, marked, split.product


def construct(
    family,
    d: int,
    k: int,
    names=None,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    cap: int = ENUMERATION_CAP,
) -> ConstructionCertificate:
    """Run the construction for a finite family; returns the full transcript."""
    family = tuple(family)
    if names is None:
        names = tuple(f"G{j}" for j in range(len(family)))
    names = tuple(names)
    if len(names) != len(family):
        raise PreconditionError("need one name per family member")
    if d < 1:
        raise PreconditionError("d must be positive")
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    for name, G in zip(names, family):
        ok, reason = is_in_Y(G, d, k, cap)
        if not ok:
            raise PreconditionError(f"family member {name} is not admissible: {reason}")
    cert = ConstructionCertificate(
        family=family, names=names, d=d, k=k, seed=seed, budget=budget, cap=cap
    )
    if not family:
        cert.gamma = PermGroup(1, ())
        cert.product = None
        return cert
    rng = random.Random(seed)
    levels: list[LevelData] = []
    gamma, _, product = _construct_level(
        family, names, d, k, rng, budget, cap, levels
    )
    cert.levels = list(reversed(levels))
    cert.gamma = gamma
    cert.product = product
    return cert
