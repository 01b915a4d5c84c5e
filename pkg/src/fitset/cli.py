"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 hypothesis refusal.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .catalog import CATALOG, LARGE, get_group
from .errors import FitsetError, HypothesisRefused
from .fitting_sets import radical_id
from .group import FiniteGroup, read_group_file
from .hartley import h_radical_id, hs, integrate, is_full, is_integrated, make_full_integrated
from .injectors import hartley_injectors, injectors_bruteforce, prepare_h
from .lattice import lattice_dump
from .specparse import parse_fitset, parse_hfunction_inline, read_hfunction
from .structure import derived_series, fitting_subgroup, is_n_constrained, is_nilpotent, is_soluble
from .verify import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_REFUSED = 0, 1, 2, 3


class UsageError(Exception):
    pass


def resolve_group(ref: str, order_bound: int | None = None) -> FiniteGroup:
    kind, _, name = ref.partition(":")
    if kind == "catalog" and name:
        if name not in CATALOG and name not in LARGE:
            raise UsageError(f"unknown catalog group {name!r}; known: {', '.join(list(CATALOG) + list(LARGE))}")
        return get_group(name)
    if kind == "file" and name:
        return read_group_file(name, order_bound=order_bound)
    raise UsageError(f"group reference must be catalog:<Name> or file:<path>, got {ref!r}")


def dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _sub(lat, i: int) -> dict:
    return {"id": i, "order": lat.order(i), "generators": lat[i].generator_labels()}


def _fmt_sub(d: dict) -> str:
    gens = ", ".join(d["generators"]) or "()"
    return f"#{d['id']} order {d['order']} <{gens}>"


def _load_h(G, args):
    if args.hfunc and args.h:
        raise UsageError("give either --hfunc or --h, not both")
    if args.hfunc:
        return read_hfunction(G, args.hfunc)
    if args.h:
        return parse_hfunction_inline(G, args.h)
    return None


# -- subcommands --------------------------------------------------------------------

def cmd_info(args) -> int:
    G = resolve_group(args.group, args.order_bound)
    lat = G.lattice
    info = {
        "schema": 1,
        "group": G.name,
        "order": G.order,
        "subgroups": lat.size,
        "conjugacy_classes_of_subgroups": len(lat.conj_classes),
        "normal_subgroups": len(lat.normal_ids),
        "fitting_subgroup_order": fitting_subgroup(G).order,
        "derived_series_orders": [S.order for S in derived_series(G)],
        "soluble": is_soluble(G),
        "nilpotent": is_nilpotent(G),
        "n_constrained": is_n_constrained(G),
    }
    if args.json:
        print(dump(info))
    else:
        for k, v in info.items():
            if k != "schema":
                print(f"{k}: {str(v).lower() if isinstance(v, bool) else v}")
    return EXIT_OK


def cmd_subgroups(args) -> int:
    G = resolve_group(args.group, args.order_bound)
    lat = G.lattice
    data = lattice_dump(lat)
    if args.json:
        print(dump({"schema": 1, **data}))
        return EXIT_OK
    for s in data["subgroups"]:
        flags = "normal" if s["normal"] else ("subnormal" if s["subnormal"] else "")
        print(f"{_fmt_sub(s)} class {s['class']} {flags}".rstrip())
    return EXIT_OK


def cmd_radical(args) -> int:
    G = resolve_group(args.group, args.order_bound)
    lat = G.lattice
    F = parse_fitset(G, args.fitset)
    r = radical_id(lat, lat.top_id, F.members)
    out = {"schema": 1, "group": G.name, "fitset": F.label, "fitset_size": len(F), "radical": _sub(lat, r)}
    if args.json:
        print(dump(out))
    else:
        print(f"{G.name} radical for {F.label} ({len(F)} members): {_fmt_sub(out['radical'])}")
    return EXIT_OK


def _print_report(title: str, rep: dict):
    print(f"{title}: {rep['count']} injector(s), single class: {str(rep['single_conjugacy_class']).lower()}")
    for d in rep["injectors"]:
        print(f"  {_fmt_sub(d)}")


def cmd_injectors(args) -> int:
    G = resolve_group(args.group, args.order_bound)
    chosen = [x for x in (args.fitset, args.hfunc, args.h) if x]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --fitset, --hfunc, --h")
    h = _load_h(G, args)
    method = args.method or ("brute" if h is None else "both")
    if h is None and method != "brute":
        raise UsageError("--method theorem needs an H-function (--hfunc or --h)")
    F = parse_fitset(G, args.fitset) if h is None else hs(h)
    out = {"schema": 1, "group": G.name, "fitset": args.fitset or F.label,
           "n_constrained": is_n_constrained(G)}
    code = EXIT_OK
    brute = None
    if method in ("brute", "both"):
        brute = injectors_bruteforce(F, audit=args.audit).to_json()
        out["brute_force"] = brute
    if method in ("theorem", "both"):
        try:
            theo = hartley_injectors(h).to_json()
            out["theorem"] = theo
            if brute is not None:
                out["agree"] = [d["id"] for d in brute["injectors"]] == [d["id"] for d in theo["injectors"]]
                if not out["agree"]:
                    code = EXIT_FAIL
        except HypothesisRefused as exc:
            out["theorem"] = {"refused": str(exc)}
            code = EXIT_REFUSED
    if args.json:
        print(dump(out))
    else:
        print(f"{G.name}, {out['fitset']}")
        if brute is not None:
            _print_report("brute force", brute)
        if "theorem" in out:
            if "refused" in out["theorem"]:
                print(f"theorem: refused ({out['theorem']['refused']})")
            else:
                _print_report("theorem", out["theorem"])
                print(f"  h-radical order {out['theorem']['h_radical']['order']}")
        if "agree" in out:
            print(f"agree: {str(out['agree']).lower()}")
    return code


def cmd_hartley(args) -> int:
    G = resolve_group(args.group, args.order_bound)
    lat = G.lattice
    h = _load_h(G, args)
    if h is None:
        raise UsageError("give --hfunc or --h")
    H = hs(h)
    h2, converted = prepare_h(h)
    gh = h_radical_id(h2)
    gH = radical_id(lat, lat.top_id, H.members)
    out = {"schema": 1, "group": G.name, "h": h.describe(), "dropped_primes": h.dropped,
           "hartley_set_size": len(H), "integrated": is_integrated(h), "full": is_full(h),
           "converted": converted, "h_radical": _sub(lat, gh), "hartley_radical": _sub(lat, gH)}
    if args.show_conversions:
        hi = integrate(h)
        conv = {"integrate": hi.describe(), "integrate_preserves": hs(hi) == H}
        for res in ("E", "S"):
            hf = make_full_integrated(h, residual=res)
            conv[f"full_{res}"] = hf.describe()
            conv[f"full_{res}_preserves"] = hs(hf) == H
            conv[f"full_{res}_flags"] = is_full(hf) and is_integrated(hf)
        out["conversions"] = conv
    if args.json:
        print(dump(out))
    else:
        print(f"{G.name}: Hartley set has {len(H)} of {lat.size} subgroups")
        print(f"integrated: {str(out['integrated']).lower()}, full: {str(out['full']).lower()}")
        if h.dropped:
            print(f"primes not dividing |G| ignored: {h.dropped}")
        print(f"h-radical: {_fmt_sub(out['h_radical'])}{' (after conversion)' if converted else ''}")
        print(f"Hartley-set radical: {_fmt_sub(out['hartley_radical'])}")
        if args.show_conversions:
            for k, v in out["conversions"].items():
                print(f"{k}: {v if not isinstance(v, bool) else str(v).lower()}")
    return EXIT_OK


def cmd_verify(args) -> int:
    run = run_suite(args.suite, max_order=args.max_order, groups=args.groups)
    report = run.to_json()
    if args.json:
        Path(args.json).write_text(dump(report) + "\n", encoding="utf-8")
    counts = run.counts()
    for claim, c in run.by_claim().items():
        status = "FAIL" if c["fail"] else "ok"
        print(f"{status:4} {claim}: {c['pass']} pass, {c['fail']} fail, {c['skipped']} skipped")
    for r in run.failures()[:20]:
        print(f"failure: {r.claim} on {r.group} [{r.subject}] {json.dumps(r.witness, sort_keys=True)}")
    print(f"{run.suite}: {counts['pass']} pass, {counts['fail']} fail, {counts['skipped']} skipped "
          f"in {run.wall_time:.1f}s")
    return EXIT_OK if run.ok else EXIT_FAIL


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fitset", description="Fitting sets, Hartley sets and injectors of small groups.")
    parser.add_argument("--order-bound", type=int, default=None, help="order bound for file groups")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="basic invariants of a group")
    p.add_argument("group", help="catalog:<Name> or file:<path>")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("subgroups", help="list the subgroup lattice")
    p.add_argument("group")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_subgroups)

    p = sub.add_parser("radical", help="radical of the group for a Fitting set")
    p.add_argument("group")
    p.add_argument("--fitset", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_radical)

    p = sub.add_parser("injectors", help="injectors for a Fitting set or Hartley set")
    p.add_argument("group")
    p.add_argument("--fitset")
    p.add_argument("--hfunc", help="H-function file")
    p.add_argument("--h", help='inline H-function, e.g. "2:=trace(nil);3:=trivial"')
    p.add_argument("--method", choices=("brute", "theorem", "both"))
    p.add_argument("--audit", action="store_true", help="unpruned brute-force search (order <= 24)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_injectors)

    p = sub.add_parser("hartley", help="Hartley set, flags and h-radical")
    p.add_argument("group")
    p.add_argument("--hfunc")
    p.add_argument("--h")
    p.add_argument("--show-conversions", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hartley)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=SUITES + ("all",))
    p.add_argument("--max-order", type=int, default=None)
    p.add_argument("--groups", nargs="+", metavar="NAME", help="catalog names instead of an order scope")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except HypothesisRefused as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (UsageError, FitsetError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
