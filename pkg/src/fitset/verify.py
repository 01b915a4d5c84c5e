"""Verification suites: exhaustive claim sweeps over catalog groups.

Each claim result is data; a failing claim never aborts the suite.
"""
from __future__ import annotations

import random
import time
import zlib
from dataclasses import dataclass, field
from typing import Iterator

from .catalog import build_catalog, get_group
from .classes import (ALL, MEET, NIL, PGRP, POW, PPRIME, PROD, SOL, SOLPPRIME, ClassExpr, class_residual,
                      known_inclusion, p_nilpotent_class, section_member)
from .errors import HypothesisRefused
from .fitting_sets import (FittingSet, fitset_closure, loose_product, radical_id, satisfies_product_axiom_variant,
                           set_intersection, set_product, trace, trivial_fitset, verify_fitting_set)
from .group import FiniteGroup
from .hartley import (HFunction, check_membership_criterion, check_nilpotent_lift_membership, check_radical_quotient,
                      h_radical_id, hs, integrate, is_full, is_integrated, make_full_integrated)
from .injectors import (characterization_check, f_maximal_subgroups, hartley_injectors, injector_ids,
                        injector_property_checks, injectors_bruteforce, nilpotent_injectors)
from .lattice import SubgroupLattice, iter_bits
from .structure import (all_sylow, fitting_subgroup, is_n_constrained, is_soluble, p_part, prime_divisors,
                        quotient)

SUITES = ("axioms", "product_algebra", "hartley_conversions", "injectors", "corollaries")
DEFAULT_MAX_ORDER = {"axioms": 60, "product_algebra": 60, "hartley_conversions": 24,
                     "injectors": 24, "corollaries": 36}
SYLOW_MAX_ORDER = 60
AUDIT_MAX_ORDER = 24
RNG_SALT = 20240611


@dataclass
class ClaimResult:
    claim: str
    status: str  # pass | fail | skipped
    group: str
    subject: str = ""
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {"claim": self.claim, "status": self.status, "group": self.group, "subject": self.subject}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class VerificationRun:
    suite: str
    scope: dict
    results: list[ClaimResult] = field(default_factory=list)
    wall_time: float = 0.0

    def record(self, claim: str, ok: bool | None, G: FiniteGroup | str, subject: str = "",
               witness: dict | None = None):
        status = "skipped" if ok is None else ("pass" if ok else "fail")
        name = G if isinstance(G, str) else G.name
        self.results.append(ClaimResult(claim, status, name, subject, None if ok else witness))

    def counts(self) -> dict[str, int]:
        out = {"pass": 0, "fail": 0, "skipped": 0}
        for r in self.results:
            out[r.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)

    def failures(self) -> list[ClaimResult]:
        return [r for r in self.results if r.status == "fail"]

    def by_claim(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for r in self.results:
            c = out.setdefault(r.claim, {"pass": 0, "fail": 0, "skipped": 0})
            c[r.status] += 1
        return dict(sorted(out.items()))

    def to_json(self) -> dict:
        # wall_time is left out so that repeated runs serialize identically
        return {"schema": 1, "suite": self.suite, "scope": self.scope, "ok": self.ok,
                "counts": self.counts(), "claims": self.by_claim(),
                "results": [r.to_json() for r in self.results]}


# -- shared inputs ----------------------------------------------------------------

def subgroup_witness(lat: SubgroupLattice, ids) -> list[dict]:
    return [{"id": i, "order": lat.order(i), "generators": lat[i].generator_labels()} for i in ids]


def formation_exprs(G: FiniteGroup) -> list[ClassExpr]:
    out = [NIL, SOL, ALL]
    for p in prime_divisors(G.order) or [2]:
        out += [PGRP(p), PPRIME(p), p_nilpotent_class(p)]
    return out


def fitting_class_exprs(G: FiniteGroup) -> list[ClassExpr]:
    out = formation_exprs(G) + [POW(2), PROD(NIL, NIL), MEET(NIL, SOL)]
    for p in prime_divisors(G.order)[:1]:
        out.append(SOLPPRIME(p))
    return out


def quotient_closed_exprs(G: FiniteGroup) -> list[ClassExpr]:
    out = [NIL, SOL, ALL]
    for p in prime_divisors(G.order) or [2]:
        out += [PGRP(p), PPRIME(p), p_nilpotent_class(p)]
    return out


def sample_fitsets(G: FiniteGroup, extra_random: int = 2) -> list[FittingSet]:
    """Traces of a few classes plus closures of seeded random singletons."""
    lat = G.lattice
    out = [trivial_fitset(lat), trace(lat, NIL), trace(lat, SOL)]
    for p in prime_divisors(G.order):
        out.append(trace(lat, PGRP(p)))
    rng = random.Random(RNG_SALT ^ zlib.crc32(G.name.encode()))
    for _ in range(extra_random):
        i = rng.randrange(lat.size)
        F = fitset_closure(lat, [i])
        F.label = f"closure{{{', '.join(lat[i].generator_labels()) or '()'}}}"
        out.append(F)
    seen, uniq = set(), []
    for F in out:
        if F.members not in seen:
            seen.add(F.members)
            uniq.append(F)
    # small groups: top up with closures of single subgroups, then of pairs
    extra = ([[i] for i in range(lat.size)]
             + [[i, j] for i in range(lat.size) for j in range(i + 1, lat.size)])
    for seed in extra:
        if len(uniq) >= 5:
            break
        F = fitset_closure(lat, seed)
        if F.members not in seen:
            F.label = "closure{" + "; ".join(", ".join(lat[i].generator_labels()) or "()" for i in seed) + "}"
            seen.add(F.members)
            uniq.append(F)
    return uniq


def count_fitting_sets(lat: SubgroupLattice, limit: int) -> int:
    """Number of Fitting sets of a small lattice, counted up to ``limit``.

    Every Fitting set is the closure of its own members, so closures of all
    subsets of conjugacy-class representatives enumerate them.
    """
    reps = [c[0] for c in lat.conj_classes]
    found = set()
    for bits in range(1 << len(reps)):
        seed = [reps[k] for k in range(len(reps)) if bits >> k & 1]
        found.add(fitset_closure(lat, seed).members)
        if len(found) >= limit:
            break
    return len(found)


def standard_hfunctions(G: FiniteGroup) -> list[HFunction]:
    lat = G.lattice
    hs_list = [
        HFunction.constant(trivial_fitset(lat), "trivial"),
        HFunction.constant(trace(lat, NIL), "trace(nil)"),
        HFunction.constant(trace(lat, PGRP(2)), "trace(p(2))"),
        HFunction.constant(trace(lat, PGRP(3)), "trace(p(3))"),
        HFunction.constant(trace(lat, SOL), "trace(sol)"),
        HFunction(lat, {2: trace(lat, PGRP(2)), 3: trace(lat, NIL)}, "2:=trace(p(2));3:=trace(nil)"),
        HFunction(lat, {2: trivial_fitset(lat), 3: trace(lat, ALL)}, "2:=trivial;3:=trace(all)"),
    ]
    return hs_list


def _groups(max_order: int, names: list[str] | None) -> list[FiniteGroup]:
    if names:
        return [get_group(n) for n in names]
    return build_catalog(max_order)


# -- suites -------------------------------------------------------------------------

def suite_axioms(run: VerificationRun, groups: list[FiniteGroup]):
    for G in groups:
        lat = G.lattice
        for x in fitting_class_exprs(G):
            T = trace(lat, x)
            v = verify_fitting_set(lat, T.members)
            run.record("trace_is_fitting_set", v is None, G, f"trace({x})", v and v.__dict__)
        fitsets = sample_fitsets(G)
        for F in fitsets:
            v = verify_fitting_set(lat, F.members)
            run.record("sample_is_fitting_set", v is None, G, F.label, v and v.__dict__)
            for x in fitting_class_exprs(G):
                P = set_product(F, x)
                v = verify_fitting_set(lat, P.members)
                run.record("set_product_is_fitting_set", v is None, G, P.label, v and v.__dict__)
        for h in standard_hfunctions(G):
            H = hs(h)
            v = verify_fitting_set(lat, H.members)
            run.record("hartley_set_is_fitting_set", v is None, G, H.label, v and v.__dict__)
        # the two product-axiom readings agree on Fitting sets and on down-closed non-examples
        rng = random.Random(RNG_SALT + G.order)
        cands = [F.members for F in fitsets]
        for _ in range(4):
            m = 1
            for i in rng.sample(range(lat.size), min(2, lat.size)):
                m |= 1 << i
            changed = True
            while changed:
                new = m
                for s in iter_bits(m):
                    new |= lat.normal_in[s] | sum(1 << j for j in lat.conj_classes[int(lat.class_of[s])])
                changed = new != m
                m = new
            cands.append(m)
        for m in cands:
            a = verify_fitting_set(lat, m) is None
            b = satisfies_product_axiom_variant(lat, m)
            run.record("product_axiom_readings_agree", a == b, G, f"mask {m:#x}",
                       {"verbatim": a, "variant": b})
        _structure_claims(run, G)


def _structure_claims(run: VerificationRun, G: FiniteGroup):
    lat = G.lattice
    normal = set(lat.normal_ids)
    run.record("normal_implies_subnormal", normal <= set(lat.subnormal_ids), G)
    bad = [i for i in range(lat.size)
           if len(lat.conj_classes[int(lat.class_of[i])]) * lat.normalizers[i].bit_count() != G.order]
    run.record("orbit_stabilizer", not bad, G, witness={"ids": bad})
    seen = set(lat.masks)
    missing = []
    for a in range(G.order):
        for b in range(a, G.order):
            if G.generate([a, b]).mask not in seen:
                missing.append((a, b))
                break
        if missing:
            break
    run.record("lattice_complete_two_generated", not missing, G, witness={"pairs": missing})
    F = fitting_subgroup(G)
    scan = [i for i in lat.normal_ids if section_member(lat, i, 0, NIL)]
    fid = lat.index[F.mask]
    run.record("fitting_subgroup_matches_scan", all(lat.contains(fid, i) for i in scan) and fid in scan, G)


def suite_product_algebra(run: VerificationRun, groups: list[FiniteGroup]):
    for G in groups:
        lat = G.lattice
        fitsets = sample_fitsets(G)
        forms = [x for x in formation_exprs(G) if x.is_formation]
        for F in fitsets:
            prods = {x: set_product(F, x) for x in forms}
            for x in forms:
                run.record("product_contains_base", F <= prods[x], G, f"{F.label} o {x}")
                for y in forms:
                    lhs = set_product(F, MEET(x, y))
                    rhs = set_intersection(prods[x], prods[y])
                    run.record("product_distributes_over_class_meet", lhs == rhs, G, f"{F.label}; {x}; {y}",
                               {"only_lhs": lhs.members & ~rhs.members, "only_rhs": rhs.members & ~lhs.members})
                    left = set_product(prods[x], y)
                    right = set_product(F, PROD(x, y))
                    run.record("product_associates", left == right, G, f"{F.label}; {x}; {y}",
                               {"only_lhs": left.members & ~right.members,
                                "only_rhs": right.members & ~left.members})
            for K in fitsets:
                meet = set_intersection(F, K)
                for x in forms:
                    lhs = set_product(meet, x)
                    rhs = set_intersection(prods[x], set_product(K, x))
                    run.record("product_distributes_over_set_meet", lhs == rhs, G, f"{F.label}; {K.label}; {x}")
                    if F <= K:
                        run.record("product_monotone", prods[x] <= set_product(K, x), G,
                                   f"{F.label} <= {K.label}; {x}")
            gF = radical_id(lat, lat.top_id, F.members)
            for n in lat.subnormal_ids:
                rN = radical_id(lat, n, F.members)
                run.record("subnormal_radical_is_meet", rN == lat.meet(n, gF), G, f"{F.label}; N={n}",
                           {"N": subgroup_witness(lat, [n]), "radical": rN, "meet": lat.meet(n, gF)})
            for x in quotient_closed_exprs(G):
                run.record("loose_product_equals_product", loose_product(F, x) == set_product(F, x).members,
                           G, f"{F.label}; {x}")
        for x in forms:
            for y in forms:
                if x != y and known_inclusion(x, y):
                    rx = class_residual(G, x)
                    ry = class_residual(G, y)
                    run.record("residual_antitone", ry <= rx, G, f"{x} <= {y}")


def _h_subject(h: HFunction) -> str:
    return h.label or h.provenance


def suite_hartley_conversions(run: VerificationRun, groups: list[FiniteGroup]):
    for G in groups:
        lat = G.lattice
        H0 = hs(HFunction.constant(trivial_fitset(lat)))
        run.record("hartley_of_trivial_is_nilpotent_trace", H0 == trace(lat, NIL), G)
        for F in sample_fitsets(G):
            run.record("hartley_of_constant_is_product_with_nil",
                       hs(HFunction.constant(F)) == set_product(F, NIL), G, F.label)
        soluble = is_soluble(G)
        for h in standard_hfunctions(G):
            s = _h_subject(h)
            H = hs(h)
            hi = integrate(h)
            run.record("integrate_preserves_hartley_set", hs(hi) == H, G, s)
            run.record("integrate_gives_integrated", is_integrated(hi), G, s)
            variants = {}
            for res in ("E", "S"):
                hf = make_full_integrated(h, residual=res)
                variants[res] = hf
                run.record(f"full_integrated_{res}_preserves_hartley_set", hs(hf) == H, G, s)
                run.record(f"full_integrated_{res}_flags", is_full(hf) and is_integrated(hf), G, s)
            if soluble:
                run.record("residual_variants_agree", variants["E"] == variants["S"], G, s)
            hf = variants["E"]
            gh = h_radical_id(hf)
            gH = radical_id(lat, lat.top_id, H.members)
            run.record("h_radical_normal_below_radical",
                       lat.is_normal_in(gh, lat.top_id) and lat.contains(gH, gh), G, s,
                       {"h_radical": subgroup_witness(lat, [gh]), "radical": subgroup_witness(lat, [gH])})
            v = check_radical_quotient(hf)
            run.record("radical_quotient_is_fitting", v.ok, G, s, {"detail": v.detail, "ids": v.witnesses})
            v = check_nilpotent_lift_membership(hf)
            run.record("nilpotent_lifts_are_members", v.ok, G, s,
                       {"subgroups": subgroup_witness(lat, v.witnesses)})
            try:
                v = check_membership_criterion(hf)
                run.record("membership_criterion", v.ok, G, s, {"subgroups": subgroup_witness(lat, v.witnesses)})
            except HypothesisRefused:
                run.record("membership_criterion", None, G, s)


def _same_class(lat: SubgroupLattice, ids: list[int]) -> tuple[bool, dict]:
    if not ids:
        return False, {"reason": "empty"}
    first = ids[0]
    wit = {}
    for v in ids:
        g = lat.conjugating_element(first, v)
        if g is None:
            return False, {"not_conjugate": subgroup_witness(lat, [first, v])}
        wit[f"{first}->{v}"] = lat.group.element_label(g)
    cls = set(lat.conj_classes[int(lat.class_of[first])])
    return cls == set(ids), wit


def suite_injectors(run: VerificationRun, groups: list[FiniteGroup], sylow_groups: list[FiniteGroup]):
    for G in groups:
        lat = G.lattice
        constrained = is_n_constrained(G)
        if constrained:
            nil = nilpotent_injectors(G).injectors
            brute = injectors_bruteforce(trace(lat, NIL)).injectors
            run.record("nilpotent_injectors_match_bruteforce", nil == brute, G, "trace(nil)",
                       {"filter": subgroup_witness(lat, nil), "brute": subgroup_witness(lat, brute)})
        for h in standard_hfunctions(G):
            s = _h_subject(h)
            H = hs(h)
            brute = injectors_bruteforce(H)
            try:
                rep = hartley_injectors(h)
            except HypothesisRefused:
                run.record("theorem_matches_bruteforce", None, G, s)
                run.record("unconstrained_bruteforce_data", None, G, s,
                           {"injectors": subgroup_witness(lat, brute.injectors)})
                continue
            run.record("theorem_matches_bruteforce", rep.injectors == brute.injectors, G, s,
                       {"theorem": subgroup_witness(lat, rep.injectors),
                        "brute": subgroup_witness(lat, brute.injectors)})
            ok, wit = _same_class(lat, rep.injectors)
            run.record("injectors_single_conjugacy_class", ok and rep.single_class, G, s, wit)
            v = characterization_check(h)
            run.record("characterization", v.ok, G, s, {"sides": v.witnesses})
        for F in sample_fitsets(G):
            inj = injector_ids(F)
            if G.order <= AUDIT_MAX_ORDER:
                audit = injector_ids(F, audit=True)
                run.record("pruned_search_matches_audit", inj == audit, G, F.label,
                           {"pruned": inj, "audit": audit})
            r = radical_id(lat, lat.top_id, F.members)
            fmax = set(f_maximal_subgroups(F))
            run.record("injectors_contain_radical_and_are_maximal",
                       all(lat.contains(v, r) and v in fmax for v in inj), G, F.label)
            if is_soluble(G) and inj:
                for name, verdict in injector_property_checks(F, inj[0]).items():
                    run.record(f"injector_property_{name}", verdict.ok, G, F.label, {"ids": verdict.witnesses})
    for G in sylow_groups:
        _sylow_claims(run, G)


def _sylow_claims(run: VerificationRun, G: FiniteGroup):
    lat = G.lattice
    for q in prime_divisors(G.order):
        syl = sorted(lat.index[S.mask] for S in all_sylow(G, q))
        inj = injectors_bruteforce(trace(lat, PGRP(q))).injectors
        run.record("sylow_recovery", inj == syl, G, f"trace(p({q}))",
                   {"injectors": subgroup_witness(lat, inj), "sylow": subgroup_witness(lat, syl)})
        n = len(syl)
        run.record("sylow_count", n % q == 1 and (G.order // p_part(G.order, q)) % n == 0, G,
                   f"p={q}", {"count": n})


def named_spot_checks(run: VerificationRun):
    S4 = get_group("S4")
    lat = S4.lattice
    nil = nilpotent_injectors(S4).injectors
    brute = injectors_bruteforce(trace(lat, NIL), audit=True).injectors
    run.record("spot_S4_nilpotent_injectors", nil == brute and len(nil) == 3
               and all(lat.order(v) == 8 for v in nil), S4, "trace(nil)", {"injectors": subgroup_witness(lat, nil)})
    S3 = get_group("S3")
    l3 = S3.lattice
    inj = injectors_bruteforce(trace(l3, NIL), audit=True).injectors
    a3 = l3.index[S3.generate([x for x in range(S3.order) if S3.element_orders[x] == 3]).mask]
    run.record("spot_S3_nilpotent_injector", inj == [a3] == nilpotent_injectors(S3).injectors, S3, "trace(nil)",
               {"injectors": subgroup_witness(l3, inj)})
    n2 = injectors_bruteforce(trace(lat, POW(2)), audit=True).injectors
    a4 = lat.index[S4.generate([x for x in range(S4.order) if S4.element_orders[x] == 3]).mask]
    run.record("spot_S4_metanilpotent_injector", n2 == [a4], S4, "trace(pow(nil,2))",
               {"injectors": subgroup_witness(lat, n2)})


def refusal_checks(run: VerificationRun):
    A5 = get_group("A5")
    lat = A5.lattice
    run.record("refusal_A5_not_constrained", not is_n_constrained(A5), A5)
    try:
        hartley_injectors(HFunction.constant(trivial_fitset(lat), "trivial"))
        refused = False
    except HypothesisRefused:
        refused = True
    run.record("refusal_theorem_on_A5", refused, A5, "trivial")
    brute = injectors_bruteforce(hs(HFunction.constant(trivial_fitset(lat)))).injectors
    run.record("refusal_bruteforce_still_runs", len(brute) > 0, A5, "trivial",
               {"injectors": subgroup_witness(lat, brute)})


def suite_corollaries(run: VerificationRun, groups: list[FiniteGroup]):
    for G in groups:
        lat = G.lattice
        soluble = is_soluble(G)
        for F in sample_fitsets(G):
            if lat.top_id not in set_product(F, SOL):
                run.record("radical_quotient_pipeline", None, G, F.label)
                continue
            gF = radical_id(lat, lat.top_id, F.members)
            lhs = injectors_bruteforce(set_product(F, NIL)).injectors
            rhs = _lifted_nilpotent_injectors(G, gF)
            run.record("radical_quotient_pipeline", lhs == rhs, G, F.label,
                       {"brute": subgroup_witness(lat, lhs), "lifted": subgroup_witness(lat, rhs)})
        for x in fitting_class_exprs(G):
            T = trace(lat, x)
            prod_trace = trace(lat, PROD(x, NIL))
            run.record("trace_times_nil_is_trace_of_product", set_product(T, NIL) == prod_trace, G, str(x))
            run.record("hartley_of_constant_trace", hs(HFunction.constant(T)) == prod_trace, G, str(x))
        if not soluble:
            continue
        for k in (2, 3):
            lhs = injectors_bruteforce(trace(lat, POW(k))).injectors
            r = radical_id(lat, lat.top_id, trace(lat, POW(k - 1)).members)
            rhs = _lifted_nilpotent_injectors(G, r)
            run.record(f"power_nil_{k}_injectors", lhs == rhs, G, f"trace(pow(nil,{k}))",
                       {"brute": subgroup_witness(lat, lhs), "lifted": subgroup_witness(lat, rhs)})
    _constrained_nonsoluble_example(run)


def _lifted_nilpotent_injectors(G: FiniteGroup, kernel: int) -> list[int]:
    lat = G.lattice
    qm = quotient(G, lat.subgroups[kernel])
    q = nilpotent_injectors(qm.target)
    ql = qm.target.lattice
    return sorted(lat.index[qm.preimage(ql[v]).mask] for v in q.injectors)


def _constrained_nonsoluble_example(run: VerificationRun):
    B = get_group("ASL(2,4)")
    F = fitting_subgroup(B)
    ok = is_n_constrained(B) and not is_soluble(B)
    run.record("constrained_nonsoluble_example", ok, B, f"|F(G)|={F.order}")


# -- entry point -----------------------------------------------------------------

def run_suite(suite: str, max_order: int | None = None, groups: list[str] | None = None) -> VerificationRun:
    if suite == "all":
        merged = VerificationRun("all", {"max_order": max_order, "groups": groups})
        t = time.perf_counter()
        for s in SUITES:
            merged.results += run_suite(s, max_order, groups).results
        merged.wall_time = time.perf_counter() - t
        return merged
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    order = DEFAULT_MAX_ORDER[suite] if max_order is None else max_order
    run = VerificationRun(suite, {"max_order": order, "groups": groups})
    t = time.perf_counter()
    gs = _groups(order, groups)
    if suite == "axioms":
        suite_axioms(run, gs)
    elif suite == "product_algebra":
        suite_product_algebra(run, gs)
    elif suite == "hartley_conversions":
        suite_hartley_conversions(run, gs)
    elif suite == "injectors":
        sylow = _groups(SYLOW_MAX_ORDER if max_order is None else order, groups)
        suite_injectors(run, gs, sylow)
        if not groups:
            named_spot_checks(run)
            refusal_checks(run)
    else:
        suite_corollaries(run, gs)
    run.wall_time = time.perf_counter() - t
    return run


def iter_claims(run: VerificationRun, claim: str) -> Iterator[ClaimResult]:
    return (r for r in run.results if r.claim == claim)
