"""Injectors: brute force from the definition, nilpotent injectors, and the
quotient pipeline for Hartley sets."""
from __future__ import annotations

from dataclasses import dataclass, field

from .classes import NIL
from .errors import HypothesisRefused
from .fitting_sets import FittingSet, radical_id, trace
from .group import FiniteGroup
from .hartley import HFunction, Verdict, h_radical_id, hs, integrate, is_full_integrated, make_full_integrated
from .lattice import SubgroupLattice, iter_bits
from .structure import fitting_subgroup, is_n_constrained, quotient

AUDIT_MAX_ORDER = 24


@dataclass
class InjectorReport:
    group: FiniteGroup
    fitting_set: FittingSet | None
    injectors: list[int]
    conjugacy_witnesses: dict[tuple[int, int], int]
    method: str
    constrained_quotient: bool | None = None
    h_radical: int | None = None
    converted: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def lattice(self) -> SubgroupLattice:
        return self.group.lattice

    @property
    def single_class(self) -> bool:
        if not self.injectors:
            return False
        first = self.injectors[0]
        return all((first, v) in self.conjugacy_witnesses for v in self.injectors[1:])

    def to_json(self) -> dict:
        lat = self.lattice
        return {
            "group": self.group.name,
            "fitset": self.fitting_set.label if self.fitting_set is not None else None,
            "method": self.method,
            "injectors": [{"id": v, "order": lat.order(v), "generators": lat[v].generator_labels()}
                          for v in self.injectors],
            "count": len(self.injectors),
            "single_conjugacy_class": self.single_class,
            "conjugacy_class_size": len(self.injectors) if self.single_class else None,
            "witnesses": {f"{a}->{b}": lat.group.element_label(g)
                          for (a, b), g in sorted(self.conjugacy_witnesses.items())},
            "constrained_quotient": self.constrained_quotient,
            "h_radical": None if self.h_radical is None else {
                "id": self.h_radical, "order": lat.order(self.h_radical)},
            "converted_h": self.converted,
            "notes": list(self.notes),
        }


def conjugacy_witnesses(lat: SubgroupLattice, ids: list[int]) -> dict[tuple[int, int], int]:
    """Witnesses g with first^g = v for every v conjugate to the first id."""
    if not ids:
        return {}
    first = ids[0]
    out = {}
    for v in ids[1:]:
        g = lat.conjugating_element(first, v)
        if g is not None:
            out[(first, v)] = g
    return out


def f_maximal_subgroups(F: FittingSet, within: int | None = None) -> list[int]:
    """Members of F inside ``within`` (default G) not properly inside another such member."""
    lat = F.lattice
    within = lat.top_id if within is None else within
    cand = F.members & lat.below[within]
    return [v for v in iter_bits(cand) if lat.above[v] & cand == 1 << v]


def _maximal_masks(F: FittingSet, within: list[int]) -> dict[int, int]:
    lat = F.lattice
    out = {}
    for n in within:
        cand = F.members & lat.below[n]
        m = 0
        for v in iter_bits(cand):
            if lat.above[v] & cand == 1 << v:
                m |= 1 << v
        out[n] = m
    return out


def injector_ids(F: FittingSet, audit: bool = False, within: int | None = None) -> list[int]:
    """Subgroups V (inside ``within``) with V meet N F-maximal in N for every subnormal N.

    The fast path only tries F-maximal subgroups containing the F-radical; the
    audit path tries every subgroup.
    """
    lat = F.lattice
    top = lat.top_id if within is None else within
    if top == lat.top_id:
        subnormal = lat.subnormal_ids
    else:
        subnormal = [n for n in iter_bits(lat.below[top]) if lat.subnormal_in(n, top)]
    maxmask = _maximal_masks(F, subnormal)
    if audit:
        candidates = list(iter_bits(lat.below[top]))
    else:
        r = radical_id(lat, top, F.members)
        candidates = [v for v in f_maximal_subgroups(F, top) if lat.contains(v, r)]
    return [v for v in candidates
            if all(maxmask[n] >> lat.meet(v, n) & 1 for n in subnormal)]


def injectors_bruteforce(F: FittingSet, audit: bool = False) -> InjectorReport:
    lat = F.lattice
    G = lat.group
    if audit and G.order > AUDIT_MAX_ORDER:
        raise ValueError(f"audit mode is limited to groups of order <= {AUDIT_MAX_ORDER}")
    ids = injector_ids(F, audit=audit)
    return InjectorReport(G, F, ids, conjugacy_witnesses(lat, ids),
                          "brute_force_audit" if audit else "brute_force",
                          constrained_quotient=None)


def nilpotent_injectors(G: FiniteGroup) -> InjectorReport:
    """Maximal nilpotent subgroups containing F(G); refused unless G is N-constrained."""
    if not is_n_constrained(G):
        raise HypothesisRefused(f"{G.name} is not N-constrained")
    lat = G.lattice
    fit = lat.index[fitting_subgroup(G).mask]
    N = trace(lat, NIL)
    ids = [v for v in f_maximal_subgroups(N) if lat.contains(v, fit)]
    return InjectorReport(G, N, ids, conjugacy_witnesses(lat, ids), "nilpotent_maximal", constrained_quotient=True)


def prepare_h(h: HFunction) -> tuple[HFunction, bool]:
    if is_full_integrated(h):
        return h, False
    return make_full_integrated(integrate(h)), True


def hartley_injectors(h: HFunction) -> InjectorReport:
    """Preimages of the nilpotent injectors of G/R_h.

    Non full-integrated h is converted first (the Hartley set does not change).
    Raises HypothesisRefused when G/R_h is not N-constrained.
    """
    lat = h.lattice
    G = lat.group
    H = hs(h)
    h2, converted = prepare_h(h)
    gh = h_radical_id(h2)
    qm = quotient(G, lat.subgroups[gh])
    if not is_n_constrained(qm.target):
        raise HypothesisRefused(f"{G.name} modulo its h-radical (order {qm.target.order}) is not N-constrained")
    quot = nilpotent_injectors(qm.target)
    qlat = qm.target.lattice
    ids = sorted(lat.index[qm.preimage(qlat.subgroups[v]).mask] for v in quot.injectors)
    report = InjectorReport(G, H, ids, conjugacy_witnesses(lat, ids), "theorem",
                            constrained_quotient=True, h_radical=gh, converted=converted)
    if converted:
        report.notes.append("h converted to a full integrated H-function")
    return report


def characterization_check(h: HFunction) -> Verdict:
    """The pipeline injectors equal the HS(h)-maximal subgroups containing the HS(h)-radical."""
    rep = hartley_injectors(h)
    lat = h.lattice
    H = hs(h)
    r = radical_id(lat, lat.top_id, H.members)
    rhs = [v for v in f_maximal_subgroups(H) if lat.contains(v, r)]
    ok = rep.injectors == rhs
    return Verdict(ok, [] if ok else [rep.injectors, rhs])


def injector_property_checks(F: FittingSet, v: int) -> dict[str, Verdict]:
    """Standard properties of an injector V of G for the Fitting set F.

    restriction: V meet K is an injector of K for every subnormal K.
    radical:     V contains G_F and is F-maximal.
    lifting:     an F-maximal subgroup whose meets with all maximal normal
                 subgroups M are injectors of M is itself an injector.
    conjugation: the injector set is a union of conjugacy classes.
    """
    lat = F.lattice
    inj = injector_ids(F)
    out = {}
    bad = []
    for k in lat.subnormal_ids:
        inj_k = injector_ids(F, within=k)
        if lat.meet(v, k) not in inj_k:
            bad.append(k)
    out["restriction"] = Verdict(not bad, bad)
    r = radical_id(lat, lat.top_id, F.members)
    out["radical"] = Verdict(lat.contains(v, r) and v in f_maximal_subgroups(F))
    inj_m = {m: set(injector_ids(F, within=m)) for m in lat.maximal_normal_ids}
    bad = [w for w in f_maximal_subgroups(F)
           if all(lat.meet(w, m) in inj_m[m] for m in inj_m) and w not in inj]
    out["lifting"] = Verdict(not bad, bad)
    injset = set(inj)
    bad = [w for w in inj if any(int(c) not in injset for c in lat.conj_classes[int(lat.class_of[w])])]
    out["conjugation"] = Verdict(not bad, bad)
    return out
