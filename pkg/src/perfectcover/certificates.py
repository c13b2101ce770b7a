"""Certificate serialization and the independent verifier.

A certificate is a plain JSON document holding every witness of one
construction run: the family, per-level split data, words, lifts,
residues, module coordinates, cover tuples, conjugators and the final
generators.  `verify_certificate` re-checks every claim from scratch,
using only the stored data and the library kernel; it shares no state
with the construction code, and a fixed list of named steps makes
failures attributable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import __version__
from .errors import InputError
from .groups import (
    ENUMERATION_CAP,
    PermGroup,
    StabilizerChain,
    center,
    commutator_subgroup,
    derived_subgroup,
    normal_closure,
    quotient_action,
)
from .perms import Permutation, commutator, format_cycles, parse_cycles
from .products import DirectProduct, ProductElement
from .structure import (
    is_in_Y,
    semisimple_factors,
    star_chain,
)
from .words import evaluate_word, parse_word

CERT_FORMAT = "perfectcover.certificate"

STEP_NAMES = (
    "family",
    "structure",
    "words",
    "lifts",
    "equation1",
    "generation",
    "q-decomposition",
    "Q-module",
    "s-in-T",
    "T-perfect",
    "gamma-perfect",
    "projections",
)


# ----------------------------------------------------------------------
# serialization


def _perm_str(p: Permutation) -> str:
    return format_cycles(p)


def _group_gens(G: PermGroup) -> list[str]:
    return [_perm_str(g) for g in G.generators]


def _prodelem(pe: ProductElement) -> dict[str, str]:
    return {str(j): _perm_str(p) for j, p in sorted(pe.components.items())}


def serialize_certificate(cert) -> dict:
    """ConstructionCertificate -> JSON-ready dict."""
    data = {
        "format": CERT_FORMAT,
        "version": __version__,
        "seed": cert.seed,
        "budget": cert.budget,
        "cap": cert.cap,
        "d": cert.d,
        "k": cert.k,
        "family": [
            {"name": name, "degree": G.degree, "generators": _group_gens(G)}
            for name, G in zip(cert.names, cert.family)
        ],
        "levels": [],
    }
    for lvl in cert.levels:
        split, aligned = lvl.split, lvl.aligned
        factors = []
        for j, G in enumerate(split.family):
            modules = lvl.qdata.modules[j]
            factors.append(
                {
                    "name": split.names[j],
                    "degree": G.degree,
                    "generators": _group_gens(G),
                    "W": _group_gens(split.W[j]),
                    "A": _group_gens(split.A[j]),
                    "S": _group_gens(split.S[j]),
                    "B": _group_gens(split.B[j]),
                    "lifts": [_perm_str(a) for a in aligned.lifts[j]],
                    "k_res": [_perm_str(x) for x in aligned.k_res[j]],
                    "s_res": [_perm_str(x) for x in aligned.s_res[j]],
                    "module_basis": (
                        [_perm_str(b) for b in modules.basis] if modules else None
                    ),
                    "module_orders": list(modules.orders) if modules else None,
                    "q_coords": (
                        [
                            [list(c) for c in per_i]
                            for per_i in lvl.qdata.q_coords[j]
                        ]
                        if lvl.qdata.q_coords[j] is not None
                        else None
                    ),
                    "simple_factors": (
                        [
                            _group_gens(M)
                            for M in (lvl.tdata.simple_factors[j] if lvl.tdata else [])
                        ]
                        if lvl.tdata
                        else []
                    ),
                }
            )
        tdata = lvl.tdata
        level_doc = {
            "k_level": lvl.k_level,
            "m": aligned.m,
            "words": [str(w) for w in aligned.words],
            "prev_marked": [_prodelem(g) for g in aligned.padded_gens],
            "factors": factors,
            "delta": [_prodelem(g) for g in lvl.delta_gens],
            "Q_entries": [
                {"i": i, "l": l, "t": t, "value": _prodelem(v)}
                for (i, l, t, v) in lvl.qdata.entries
            ],
            "cover": (
                {
                    "e": tdata.e,
                    "e_per_factor": list(tdata.e_per_factor),
                    "factor_of": list(tdata.factor_of),
                    "tuples": [
                        [_perm_str(x) for x in tup] for tup in tdata.tuples
                    ],
                    "full_product": tdata.full_cover,
                }
                if tdata
                else None
            ),
            "r": (
                [
                    [
                        [[_perm_str(x) for x in row] for row in per_idx]
                        for per_idx in per_l
                    ]
                    for per_l in tdata.r
                ]
                if tdata
                else None
            ),
            "T_entries": (
                [
                    {"cp": cp, "l": l, "c": c, "t": t, "value": _prodelem(v)}
                    for (cp, l, c, t, v) in tdata.entries
                ]
                if tdata
                else []
            ),
            "gamma": {
                "generators": [_prodelem(g) for g in lvl.gamma_gens],
                "order": lvl.gamma.order,
                "marked": list(lvl.marked_idx),
            },
        }
        data["levels"].append(level_doc)
    if cert.levels:
        data["gamma"] = data["levels"][0]["gamma"]
    else:
        data["gamma"] = {"generators": [], "order": 1, "marked": []}
    return data


def dumps_certificate(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def write_certificate(data: dict, path) -> None:
    with open(path, "w") as fh:
        fh.write(dumps_certificate(data))


def load_certificate(path) -> dict:
    with open(path) as fh:
        return json.load(fh)


# ----------------------------------------------------------------------
# verification


@dataclass
class StepResult:
    name: str
    ok: bool
    problems: list[str] = field(default_factory=list)


@dataclass
class VerificationReport:
    steps: list[StepResult]
    valid: bool
    message: str = ""

    def failed_steps(self) -> list[str]:
        return [s.name for s in self.steps if not s.ok]

    def lines(self) -> list[str]:
        out = []
        for s in self.steps:
            mark = "ok" if s.ok else "FAIL"
            out.append(f"{s.name}: {mark}")
            for p in s.problems:
                out.append(f"    {p}")
        out.append("certificate valid" if self.valid else "certificate INVALID")
        return out


class _Recorder:
    def __init__(self):
        self.problems: dict[str, list[str]] = {name: [] for name in STEP_NAMES}

    def fail(self, step: str, msg: str) -> None:
        self.problems[step].append(msg)

    def guard(self, step: str, label: str, fn) -> None:
        try:
            fn()
        except Exception as exc:  # noqa: BLE001 - report, never crash
            self.problems[step].append(f"{label}: {type(exc).__name__}: {exc}")

    def report(self) -> VerificationReport:
        steps = [
            StepResult(name, not self.problems[name], self.problems[name])
            for name in STEP_NAMES
        ]
        return VerificationReport(steps, all(s.ok for s in steps))


def _parse_group(doc: dict) -> PermGroup:
    degree = doc["degree"]
    gens = [parse_cycles(s, degree) for s in doc["generators"]]
    return PermGroup(degree, gens)


def _parse_gens(strings, degree: int) -> list[Permutation]:
    return [parse_cycles(s, degree) for s in strings]


def _subgroup_from(strings, degree: int) -> PermGroup:
    return PermGroup(degree, _parse_gens(strings, degree))


def _parse_prodelem(doc: dict, product: DirectProduct) -> ProductElement:
    comps = {}
    for key, text in doc.items():
        j = int(key)
        comps[j] = parse_cycles(text, product.factors[j].degree)
    return ProductElement(product, comps)


def _same_group(G: PermGroup, H: PermGroup) -> bool:
    return (
        G.degree == H.degree
        and G.order == H.order
        and all(g in H for g in G.generators)
    )


class _LevelCtx:
    """Parsed view of one level of the certificate."""

    def __init__(self, doc: dict, family: list[PermGroup], cap: int):
        self.doc = doc
        self.k_level = doc["k_level"]
        self.m = doc["m"]
        self.family = family
        self.product = DirectProduct(family)
        self.W = []
        self.A = []
        self.S = []
        self.B = []
        self.lifts = []
        self.k_res = []
        self.s_res = []
        for j, fdoc in enumerate(doc["factors"]):
            degree = family[j].degree
            if fdoc["degree"] != degree:
                raise InputError("factor degree mismatch with the family")
            self.W.append(_subgroup_from(fdoc["W"], degree))
            self.A.append(_subgroup_from(fdoc["A"], degree))
            self.S.append(_subgroup_from(fdoc["S"], degree))
            self.B.append(_subgroup_from(fdoc["B"], degree))
            self.lifts.append(_parse_gens(fdoc["lifts"], degree))
            self.k_res.append(_parse_gens(fdoc["k_res"], degree))
            self.s_res.append(_parse_gens(fdoc["s_res"], degree))
        self.words = [parse_word(w, self.m) for w in doc["words"]]
        self.prev_marked = doc["prev_marked"]
        self.delta = [_parse_prodelem(d, self.product) for d in doc["delta"]]
        self.gamma_gens = [
            _parse_prodelem(d, self.product) for d in doc["gamma"]["generators"]
        ]
        self.gamma_order = doc["gamma"]["order"]
        self.marked = doc["gamma"]["marked"]
        self.cap = cap

    def k_elem(self, i: int) -> ProductElement:
        return ProductElement(
            self.product, {j: self.k_res[j][i] for j in range(len(self.family))}
        )

    def s_elem(self, i: int) -> ProductElement:
        return ProductElement(
            self.product, {j: self.s_res[j][i] for j in range(len(self.family))}
        )


def verify_certificate(
    data: dict, force_version: bool = False, cap: int = ENUMERATION_CAP
) -> VerificationReport:
    """Re-check every claim of a certificate from its stored witnesses."""
    if data.get("format") != CERT_FORMAT:
        return VerificationReport([], False, "not a certificate document")
    if data.get("version") != __version__ and not force_version:
        return VerificationReport(
            [],
            False,
            f"certificate version {data.get('version')!r} does not match "
            f"tool version {__version__!r} (use force to verify anyway)",
        )
    rec = _Recorder()
    d = data["d"]
    k = data["k"]
    try:
        family = [_parse_group(doc) for doc in data["family"]]
        names = [doc["name"] for doc in data["family"]]
    except Exception as exc:  # noqa: BLE001
        return VerificationReport([], False, f"family data unreadable: {exc}")

    # family step: admissibility of every member
    for name, G in zip(names, family):
        def check_member(name=name, G=G):
            ok, reason = is_in_Y(G, d, k, cap)
            if not ok:
                raise InputError(reason)
        rec.guard("family", f"member {name}", check_member)

    if not family:
        gamma_doc = data.get("gamma", {})
        if gamma_doc.get("order") != 1 or gamma_doc.get("generators"):
            rec.fail("gamma-perfect", "empty family must have a trivial group")
        return rec.report()

    # parse levels top-down, building each level's family from the one above
    levels: list[_LevelCtx] = []
    cur_family = family
    try:
        for doc in data["levels"]:
            ctx = _LevelCtx(doc, cur_family, cap)
            levels.append(ctx)
            cur_family = [
                quotient_action(ctx.family[j], ctx.W[j], cap).quotient
                for j in range(len(ctx.family))
            ]
    except Exception as exc:  # noqa: BLE001
        return VerificationReport([], False, f"level data unreadable: {exc}")
    if [ctx.k_level for ctx in levels] != list(range(k, 0, -1)):
        return VerificationReport(
            [], False, "levels do not descend from k to 1"
        )

    for idx, ctx in enumerate(levels):
        _verify_structure(rec, ctx, idx, levels, data, cap)

    # bottom-up: each level needs the deeper gamma's marked generators
    for idx in range(len(levels) - 1, -1, -1):
        ctx = levels[idx]
        deeper = levels[idx + 1] if idx + 1 < len(levels) else None
        _verify_level(rec, ctx, deeper, d, cap)

    # the top-level gamma block must be the first level's
    top = levels[0]
    if data["gamma"] != data["levels"][0]["gamma"]:
        rec.fail("gamma-perfect", "top gamma block differs from level gamma")
    return rec.report()


def _verify_structure(rec, ctx: _LevelCtx, idx, levels, data, cap) -> None:
    kl = ctx.k_level
    for j, G in enumerate(ctx.family):
        label = f"level {kl} factor {j}"

        def check(j=j, G=G, label=label):
            series, level = star_chain(G, max_depth=max(kl + 1, 4), cap=cap)
            expected_W = (
                series[kl - 1]
                if kl - 1 < len(series)
                else PermGroup(G.degree, ())
            )
            if not _same_group(expected_W, ctx.W[j]):
                raise InputError("W is not the expected series term")
            if not _same_group(center(ctx.W[j], cap), ctx.A[j]):
                raise InputError("A is not the center of W")
            if not _same_group(derived_subgroup(ctx.W[j]), ctx.S[j]):
                raise InputError("S is not the derived subgroup of W")
            if not _same_group(
                commutator_subgroup(G, ctx.A[j], G), ctx.B[j]
            ):
                raise InputError("B is not [A, G]")
            if ctx.A[j].order * ctx.S[j].order != ctx.W[j].order:
                raise InputError("W does not split as A x S")

        rec.guard("structure", label, check)
    # deeper family consistency: stored factors of the next level must be
    # the quotients of this one
    if idx + 1 < len(levels):
        deeper = levels[idx + 1]

        def check_quotients():
            for j, G in enumerate(ctx.family):
                q = quotient_action(G, ctx.W[j], cap).quotient
                if not (
                    q.degree == deeper.family[j].degree
                    and q.order == deeper.family[j].order
                    and list(q.generators) == list(deeper.family[j].generators)
                ):
                    raise InputError(f"factor {j} quotient mismatch")

        rec.guard("structure", f"level {kl} quotients", check_quotients)


def _verify_level(rec, ctx: _LevelCtx, deeper: _LevelCtx | None, d: int, cap) -> None:
    kl = ctx.k_level
    lab = f"level {kl}"
    m = ctx.m
    nfac = len(ctx.family)

    # ---- words
    def check_words():
        if len(ctx.words) != m:
            raise InputError("word count differs from m")
        for i, w in enumerate(ctx.words):
            if not w.in_commutator_subgroup:
                raise InputError(
                    f"word {i} has nonzero exponent sums: {w}"
                )

    rec.guard("words", lab, check_words)

    # the padded generator tuple must come from the deeper gamma's marked
    # generators, and each word must reproduce its own generator
    def check_prev():
        if deeper is None:
            expected = []
        else:
            expected = [deeper.gamma_gens[i] for i in deeper.marked]
        if not expected:
            expected_docs = [{}]
        else:
            expected_docs = [_prodelem(g) for g in expected]
        while len(expected_docs) < d:
            expected_docs.append(expected_docs[-1])
        if ctx.prev_marked != expected_docs:
            raise InputError("padded generators do not match the deeper level")
        if deeper is not None:
            prev_prod = deeper.product
            flats = [
                _parse_prodelem(doc, prev_prod).flat() for doc in ctx.prev_marked
            ]
            deeper_gamma = prev_prod.subgroup(deeper.gamma_gens)
            for x in flats:
                if x not in deeper_gamma:
                    raise InputError("padded generator outside the deeper group")
            for i, w in enumerate(ctx.words):
                if evaluate_word(w, flats) != flats[i]:
                    raise InputError(f"word {i} does not reproduce its generator")

    rec.guard("words", f"{lab} padded generators", check_prev)

    # ---- lifts
    def check_lifts():
        for j, G in enumerate(ctx.family):
            qmap = quotient_action(G, ctx.W[j], cap)
            if deeper is None:
                for i in range(m):
                    img = qmap.apply(ctx.lifts[j][i])
                    if not img.is_identity():
                        raise InputError(
                            f"factor {j} lift {i} is not in the trivial coset"
                        )
            else:
                prev_prod = deeper.product
                for i in range(m):
                    target = prev_prod.project(
                        _parse_prodelem(ctx.prev_marked[i], prev_prod).flat(), j
                    )
                    if qmap.apply(ctx.lifts[j][i]) != target:
                        raise InputError(f"factor {j} lift {i} is in the wrong coset")

    rec.guard("lifts", lab, check_lifts)

    # ---- equation (1)
    def check_eq1():
        for j in range(nfac):
            for i in range(m):
                lhs = ctx.lifts[j][i] * evaluate_word(ctx.words[i], ctx.lifts[j]).inverse()
                rhs = ctx.k_res[j][i] * ctx.s_res[j][i]
                if lhs != rhs:
                    raise InputError(f"factor {j} row {i}: residue identity fails")
                if ctx.k_res[j][i] not in ctx.B[j]:
                    raise InputError(f"factor {j} row {i}: abelian residue outside B")
                if ctx.s_res[j][i] not in ctx.S[j]:
                    raise InputError(f"factor {j} row {i}: residue outside S")

    rec.guard("equation1", lab, check_eq1)

    # ---- generation
    def check_generation():
        for j, G in enumerate(ctx.family):
            if StabilizerChain(G.degree, ctx.lifts[j]).order() != G.order:
                raise InputError(f"factor {j}: lifts do not generate the member")

    rec.guard("generation", lab, check_generation)

    # ---- q decomposition
    q_entries = ctx.doc["Q_entries"]

    def check_qdec():
        q_elems: list[list[list[Permutation]] | None] = []
        for j, fdoc in enumerate(ctx.doc["factors"]):
            if fdoc["module_basis"] is None:
                if ctx.A[j].order != 1:
                    raise InputError(f"factor {j}: missing module data")
                for i in range(m):
                    if not ctx.k_res[j][i].is_identity():
                        raise InputError(
                            f"factor {j}: nontrivial residue without module data"
                        )
                q_elems.append(None)
                continue
            degree = ctx.family[j].degree
            basis = _parse_gens(fdoc["module_basis"], degree)
            orders = fdoc["module_orders"]
            if len(basis) != len(orders):
                raise InputError(f"factor {j}: basis/order length mismatch")
            size = 1
            for b, o in zip(basis, orders):
                if b not in ctx.A[j]:
                    raise InputError(f"factor {j}: basis element outside A")
                if b.order() != o:
                    raise InputError(f"factor {j}: basis element order mismatch")
                size *= o
            if size != ctx.A[j].order:
                raise InputError(f"factor {j}: basis does not span A")

            def decode(coords):
                x = ctx.family[j].identity
                for b, c in zip(basis, coords):
                    x = x * b**c
                return x

            rows = fdoc["q_coords"]
            if rows is None or len(rows) != m:
                raise InputError(f"factor {j}: missing q coordinates")
            per_i = []
            for i in range(m):
                if len(rows[i]) != m:
                    raise InputError(f"factor {j}: q row {i} has wrong arity")
                qs = [decode(c) for c in rows[i]]
                per_i.append(qs)
                prod = ctx.family[j].identity
                for l in range(m):
                    prod = prod * commutator(qs[l], ctx.lifts[j][l])
                if prod != ctx.k_res[j][i]:
                    raise InputError(
                        f"factor {j} row {i}: commutator decomposition fails"
                    )
            q_elems.append(per_i)
        # entry witnesses must match their coordinates
        for entry in q_entries:
            i, l, t = entry["i"], entry["l"], entry["t"]
            value = _parse_prodelem(entry["value"], ctx.product)
            expected = {}
            for j in range(nfac):
                if q_elems[j] is None:
                    continue
                expected[j] = commutator(q_elems[j][i][l], ctx.lifts[j][t])
            if ProductElement(ctx.product, expected) != value:
                raise InputError(f"Q entry ({i},{l},{t}) does not match its witness")

    rec.guard("q-decomposition", lab, check_qdec)

    # ---- Q module closure
    def check_qmodule():
        values = [
            _parse_prodelem(entry["value"], ctx.product) for entry in q_entries
        ]
        if not values:
            for i in range(m):
                if not ctx.k_elem(i).is_identity():
                    raise InputError("nonzero abelian residue with empty Q")
            return
        delta_flats = [g.flat() for g in ctx.delta]
        seeds = [v.flat() for v in values]
        qgroup = normal_closure(
            PermGroup(ctx.product.degree, delta_flats + seeds), seeds
        )
        delta_group = PermGroup(ctx.product.degree, delta_flats)
        joint = PermGroup(ctx.product.degree, tuple(delta_flats) + tuple(qgroup.generators))
        comm = commutator_subgroup(joint, qgroup, delta_group)
        if comm.order != qgroup.order or not all(
            g in qgroup for g in comm.generators
        ):
            raise InputError("Q is not equal to [Q, Delta]")
        for i in range(m):
            if ctx.k_elem(i).flat() not in qgroup:
                raise InputError(f"abelian residue {i} is not in Q")

    rec.guard("Q-module", lab, check_qmodule)

    # ---- T containment
    cover = ctx.doc["cover"]
    t_entries = ctx.doc["T_entries"]

    def cover_data():
        factor_of = cover["factor_of"]
        tuples = []
        for idx, j in enumerate(factor_of):
            degree = ctx.family[j].degree
            tuples.append(_parse_gens(cover["tuples"][idx], degree))
        e = cover["e"]
        g = len(tuples[0]) if tuples else 0
        r_doc = ctx.doc["r"]
        r = [
            [
                [_parse_gens(row, ctx.family[factor_of[idx]].degree) for row in per_idx]
                for idx, per_idx in enumerate(per_l)
            ]
            for per_l in r_doc
        ]
        return factor_of, tuples, e, g, r

    def m_elem(tuples, factor_of, cprime):
        comps: dict[int, Permutation] = {}
        for idx, j in enumerate(factor_of):
            part = tuples[idx][cprime]
            comps[j] = comps.get(j, ctx.family[j].identity) * part
        return ProductElement(ctx.product, comps)

    def r_elem(r, factor_of, l, c, t):
        comps: dict[int, Permutation] = {}
        for idx, j in enumerate(factor_of):
            part = r[l][idx][t][c]
            comps[j] = comps.get(j, ctx.family[j].identity) * part
        return ProductElement(ctx.product, comps)

    def check_sT():
        if cover is None:
            if t_entries:
                raise InputError("T entries present without cover data")
            for i in range(m):
                if not ctx.s_elem(i).is_identity():
                    raise InputError("nontrivial semisimple residue with no T")
            return
        factor_of, tuples, e, g, r = cover_data()
        index = {}
        for entry in t_entries:
            key = (entry["cp"], entry["l"], entry["c"], entry["t"])
            if key in index:
                raise InputError(f"duplicate T entry {key}")
            index[key] = _parse_prodelem(entry["value"], ctx.product)
        for l in range(m):
            for c in range(g):
                for t in range(e):
                    conj = r_elem(r, factor_of, l, c, t)
                    for cp in range(g):
                        key = (cp, l, c, t)
                        if key not in index:
                            raise InputError(f"missing T entry {key}")
                        expected = m_elem(tuples, factor_of, cp).conjugate(conj)
                        if index[key] != expected:
                            raise InputError(f"T entry {key} has a wrong value")
        if len(index) != g * m * g * e:
            raise InputError("extra T entries beyond the expected index set")
        t_values = []
        seen = set()
        for entry in t_entries:
            v = _parse_prodelem(entry["value"], ctx.product)
            f = v.flat()
            if f not in seen:
                seen.add(f)
                t_values.append(f)
        t_group = PermGroup(ctx.product.degree, t_values)
        for l in range(m):
            check = ctx.product.identity_element()
            for t in range(e):
                for c in range(g):
                    check = check * m_elem(tuples, factor_of, c).conjugate(
                        r_elem(r, factor_of, l, c, t)
                    )
            if check != ctx.s_elem(l):
                raise InputError(f"row {l}: cover product does not equal the residue")
            if ctx.s_elem(l).flat() not in t_group:
                raise InputError(f"row {l}: semisimple residue is not in T")

    rec.guard("s-in-T", lab, check_sT)

    # ---- T perfect and simple-factor bookkeeping
    def check_T():
        if cover is None:
            for j in range(nfac):
                if ctx.S[j].order != 1 and ctx.doc["factors"][j]["simple_factors"]:
                    raise InputError("simple factors listed but no cover present")
                if ctx.S[j].order != 1:
                    raise InputError("semisimple part present but no cover")
            return
        factor_of, tuples, e, g, r = cover_data()
        for idx, j in enumerate(factor_of):
            M = _subgroup_from(
                ctx.doc["factors"][j]["simple_factors"][
                    [x for x in range(len(factor_of)) if factor_of[x] == j].index(idx)
                ],
                ctx.family[j].degree,
            )
            if StabilizerChain(M.degree, tuples[idx]).order() != M.order:
                raise InputError(f"cover tuple {idx} does not generate its factor")
        for j in range(nfac):
            stored = [
                _subgroup_from(gens, ctx.family[j].degree)
                for gens in ctx.doc["factors"][j]["simple_factors"]
            ]
            recomputed = semisimple_factors(ctx.S[j], cap)
            if len(stored) != len(recomputed):
                raise InputError(f"factor {j}: simple factor count mismatch")
            for M, N in zip(stored, recomputed):
                if not _same_group(M, N):
                    raise InputError(f"factor {j}: simple factor mismatch")
        t_values = []
        seen = set()
        for entry in t_entries:
            v = _parse_prodelem(entry["value"], ctx.product).flat()
            if v not in seen:
                seen.add(v)
                t_values.append(v)
        t_group = PermGroup(ctx.product.degree, t_values)
        if derived_subgroup(t_group).order != t_group.order:
            raise InputError("T is not perfect")
        for j in range(nfac):
            proj = ctx.product.projection_of(t_group, j)
            if proj.order != ctx.S[j].order:
                raise InputError(f"T does not project onto the semisimple part {j}")

    rec.guard("T-perfect", lab, check_T)

    # ---- gamma
    def check_gamma():
        allowed = {g.flat() for g in ctx.delta}
        for entry in q_entries:
            allowed.add(_parse_prodelem(entry["value"], ctx.product).flat())
        for entry in t_entries:
            allowed.add(_parse_prodelem(entry["value"], ctx.product).flat())
        flats = [g.flat() for g in ctx.gamma_gens]
        for f in flats:
            if f not in allowed:
                raise InputError("gamma generator outside Delta, Q and T witnesses")
        gamma = PermGroup(ctx.product.degree, flats)
        for f in allowed:
            if f not in gamma:
                raise InputError("witness element missing from gamma")
        if gamma.order != ctx.gamma_order:
            raise InputError(
                f"gamma order is {gamma.order}, certificate says {ctx.gamma_order}"
            )
        der = derived_subgroup(gamma)
        if der.order != gamma.order:
            raise InputError("gamma is not perfect")
        for i in range(m):
            a = ctx.delta[i].flat()
            if a not in der:
                raise InputError(f"Delta generator {i} escapes [gamma, gamma]")
            # equation (1) assembled over the product
            w_val = evaluate_word(ctx.words[i], [g.flat() for g in ctx.delta])
            if ctx.k_elem(i).flat() * ctx.s_elem(i).flat() != a * w_val.inverse():
                raise InputError(f"assembled residue identity fails at row {i}")
        marked = ctx.marked
        if len(set(marked)) != len(marked) or any(
            not 0 <= i < len(flats) for i in marked
        ):
            raise InputError("marked indices are invalid")
        if StabilizerChain(ctx.product.degree, [flats[i] for i in marked]).order() != gamma.order:
            raise InputError("marked generators do not generate gamma")

    rec.guard("gamma-perfect", lab, check_gamma)

    # ---- projections
    def check_proj():
        gamma = PermGroup(ctx.product.degree, [g.flat() for g in ctx.gamma_gens])
        for j, G in enumerate(ctx.family):
            if ctx.product.projection_of(gamma, j).order != G.order:
                raise InputError(f"projection onto factor {j} is not surjective")

    rec.guard("projections", lab, check_proj)
