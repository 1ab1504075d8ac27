"""Command-line front end.

Exit codes: 0 when the queried property holds or the report is all green,
1 when it is falsified (with a witness in the output), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import classify as classify_mod
from .admissible import (
    augment_sequence,
    enumerate_first_kind,
    is_admissible,
    is_first_kind,
)
from .augment import (
    GRADES,
    chain_summary,
    is_graded_augmentation,
    is_standard_augmentation,
    is_weak_augmentation,
)
from .checker import (
    is_cyclic_strong_exceptional,
    is_exceptional,
    is_strong_exceptional,
)
from .classes import enumerate_classes
from .effective import is_effective, is_nef, zariski_reduce
from .lattice import (
    format_class,
    format_compact,
    format_vector,
    lattice_from_name,
    parse_class,
)
from .surface import (
    classify_type,
    dynkin_components,
    effective_minus_two_classes,
    gamma_string,
    get_surface,
    irreducible_minus_one_classes,
    load_extra_surfaces,
    registry_labels,
    slo_minus_two_classes,
)
from .toric import (
    candidate_positions,
    cyclic_segments,
    perm,
    segment_sum,
    shift,
    validate,
)


def _load_surfaces(args):
    extra = {}
    if getattr(args, "data", None):
        data_dir = Path(args.data)
        files = sorted(data_dir.glob("*.json")) if data_dir.is_dir() else [data_dir]
        for f in files:
            extra.update(load_extra_surfaces(f))
    return extra


def _surface(args):
    return get_surface(args.surface, extra=_load_surfaces(args))


def _load_system(args, surface):
    path = Path(args.system)
    text = path.read_text()
    if text.lstrip().startswith("{"):
        data = json.loads(text)
        entries = data["entries"]
    else:
        lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
        if lines and not lines[0].lstrip("-[ ").replace(",", "").strip():
            lines = lines[1:]
        entries = lines
    parsed = [
        parse_class(surface.lattice, e) if isinstance(e, str)
        else parse_class(surface.lattice, "[" + ", ".join(map(str, e)) + "]")
        for e in entries
    ]
    return validate(surface, parsed)


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True, default=str))
    else:
        for line in text_lines:
            print(line)


# ---------------------------------------------------------------------------
# subcommands


def cmd_classes(args):
    lattice = lattice_from_name(args.lattice)
    found = enumerate_classes(lattice, args.square, args.kdeg)
    if args.count_only:
        _emit(args, {"count": len(found)}, [str(len(found))])
    else:
        payload = {"count": len(found), "classes": [list(D.coeffs) for D in found]}
        _emit(args, payload, [format_vector(D) for D in found])
    return 0


def cmd_surface(args):
    extra = _load_surfaces(args)
    if args.action == "list":
        labels = registry_labels() + [l for l in extra if l not in registry_labels()]
        _emit(args, {"surfaces": labels}, labels)
        return 0
    s = get_surface(args.label, extra=extra)
    info = {
        "label": args.label,
        "degree": s.degree,
        "lattice": str(s.lattice),
        "configuration": gamma_string(s),
        "classified_as": classify_type(s),
        "simple_roots": [format_compact(C) for C in s.r_irr],
        "effective_minus_two": [
            format_compact(C) for C in effective_minus_two_classes(s)
        ],
        "slo_minus_two": [format_compact(C) for C in slo_minus_two_classes(s)],
        "irreducible_lines": [
            format_compact(C) for C in irreducible_minus_one_classes(s)
        ],
    }
    lines = [f"{k}: {v}" for k, v in info.items()]
    _emit(args, info, lines)
    return 0


def cmd_effective(args):
    s = _surface(args)
    D = parse_class(s.lattice, args.cls)
    red = zariski_reduce(s, D)
    payload = {
        "class": format_class(D),
        "effective": red.effective,
        "nef": is_nef(s, D),
    }
    lines = [str(red.effective).lower()]
    if args.witness:
        payload["witness"] = red.describe()
        lines.append(red.describe())
    _emit(args, payload, lines)
    return 0 if red.effective else 1


def cmd_toric(args):
    s = _surface(args)
    A = _load_system(args, s)
    if args.action == "validate":
        _emit(args, {"valid": True, "system": str(A)}, ["valid", str(A)])
        return 0
    if args.action == "squares":
        _emit(args, {"squares": list(A.squares())}, [str(list(A.squares()))])
        return 0
    if args.action == "perm":
        B = perm(A, args.index)
        payload = {"entries": [format_compact(C) for C in B.entries]}
        _emit(args, payload, [str(B)])
        return 0
    if args.action == "shift":
        B = shift(A, args.steps)
        payload = {"entries": [format_compact(C) for C in B.entries]}
        _emit(args, payload, [str(B)])
        return 0
    if args.action == "segments":
        rows = []
        for k, l in cyclic_segments(A.n):
            D = segment_sum(A, k, l)
            rows.append({"segment": [k, l], "sum": format_compact(D),
                         "square": D.dot(D)})
        exposable = sorted(format_compact(D) for D in candidate_positions(A))
        payload = {"segments": rows, "exposable_minus_one": exposable}
        lines = [f"[{r['segment'][0]}..{r['segment'][1]}] {r['sum']} "
                 f"(square {r['square']})" for r in rows]
        lines.append("exposable: " + ", ".join(exposable))
        _emit(args, payload, lines)
        return 0
    raise AssertionError(args.action)


def cmd_admissible(args):
    if args.action == "check":
        seq = tuple(int(t) for t in args.sequence.replace(",", " ").split())
        adm = is_admissible(seq)
        payload = {"sequence": list(seq), "admissible": adm,
                   "first_kind": is_first_kind(seq) if adm else False}
        _emit(args, payload, [f"admissible: {adm}",
                              f"first kind: {payload['first_kind']}"])
        return 0 if adm else 1
    if args.action == "first-kind":
        seqs = enumerate_first_kind()
        payload = {"count": len(seqs), "sequences": [list(a) for a in seqs]}
        _emit(args, payload, [str(list(a)) for a in seqs])
        return 0
    raise AssertionError(args.action)


def cmd_check(args):
    s = _surface(args)
    A = _load_system(args, s)
    fn = {
        "exc": is_exceptional,
        "strong": is_strong_exceptional,
        "cyclic": is_cyclic_strong_exceptional,
    }[args.mode]
    res = fn(s, A, path=args.path)
    payload = {"mode": res.mode, "path": res.path, "ok": res.ok,
               "witness": res.witness}
    lines = [str(res.ok).lower()]
    if res.witness:
        lines.append(f"witness: {res.witness}")
    _emit(args, payload, lines)
    return 0 if res.ok else 1


def cmd_augment_search(args):
    s = _surface(args)
    A = _load_system(args, s)
    if args.grade == "standard":
        res = is_standard_augmentation(s, A, all_chains=args.all_chains)
    elif args.grade == "weak":
        res = is_weak_augmentation(s, A, all_chains=args.all_chains)
    else:
        grade = {"exceptional": "exceptional", "strong": "strong",
                 "cyclic": "cyclic"}[args.grade]
        res = is_graded_augmentation(s, A, grade, all_chains=args.all_chains)
    payload = {"grade": args.grade, "ok": res.ok, "reason": res.reason}
    lines = [str(res.ok).lower()]
    if res.ok:
        payload["chain"] = chain_summary(res.chain)
        lines += ["  " + step for step in chain_summary(res.chain)]
        if args.all_chains:
            payload["chain_count"] = len(res.all_chains)
            lines.append(f"chains found: {len(res.all_chains)}")
    elif res.reason:
        lines.append(f"reason: {res.reason}")
    _emit(args, payload, lines)
    return 0 if res.ok else 1


def cmd_classify(args):
    if args.action == "tables":
        catalog = classify_mod.verify_catalog(degree=args.degree)
        reports = [catalog]
        lines = [f"catalog: {'ok' if catalog['ok'] else 'FAIL'}"]
        for row in catalog["rows"]:
            lines.append(
                f"  degree {row['degree']}: "
                + ("ok" if row["ok"] else f"FAIL {row}")
            )
        ok = catalog["ok"]
        for label, _target in classify_mod.NONEXISTENCE_ROWS:
            deg = int(label.split(",")[0])
            if args.degree is not None and deg != args.degree:
                continue
            if deg == 3 and args.budget is None:
                rep = classify_mod.verify_nonexistence(label)
            else:
                rep = classify_mod.verify_nonexistence(label, budget=args.budget)
            reports.append(rep)
            ok = ok and rep["ok"]
            lines.append(
                f"  no cyclic strong on {label}: "
                + ("ok" if rep["ok"] else f"FAIL {rep}")
            )
        _emit(args, {"ok": ok, "reports": reports}, lines)
        return 0 if ok else 1
    if args.action == "counterexample":
        rep = classify_mod.verify_counterexample()
        lines = [f"{k}: {'ok' if v else 'FAIL'}" for k, v in rep["steps"].items()]
        lines.append("all green" if rep["ok"] else "FAILED")
        _emit(args, rep, lines)
        return 0 if rep["ok"] else 1
    if args.action == "search":
        s = _surface(args)
        pattern = tuple(int(t) for t in args.pattern.replace(",", " ").split())
        rep = classify_mod.search_counterexamples(
            s, [pattern], budget=args.budget
        )
        payload = {
            "complete": rep["complete"],
            "checked": rep["checked"],
            "hits": [str(h.system) for h in rep["hits"]],
            "checkpoint": rep["checkpoint"],
        }
        lines = [f"checked {rep['checked']} systems, "
                 f"{'complete' if rep['complete'] else 'budget exhausted'}"]
        lines += ["hit: " + str(h.system) for h in rep["hits"]]
        _emit(args, payload, lines)
        return 0
    raise AssertionError(args.action)


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricsys",
        description="Exceptional toric systems on weak del Pezzo surfaces",
    )
    parser.add_argument("--format", choices=["text", "json"], default="text")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker count; results are independent of it")
    parser.add_argument("--data", help="directory or file with extra surface types")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classes", help="enumerate classes by square and K-degree")
    p.add_argument("--lattice", required=True)
    p.add_argument("--square", type=int, required=True)
    p.add_argument("--kdeg", type=int, required=True)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(fn=cmd_classes)

    p = sub.add_parser("surface", help="inspect surface types")
    p.add_argument("action", choices=["show", "list"])
    p.add_argument("label", nargs="?")
    p.set_defaults(fn=cmd_surface)

    p = sub.add_parser("effective", help="decide effectiveness of a class")
    p.add_argument("--surface", required=True)
    p.add_argument("--class", dest="cls", required=True)
    p.add_argument("--witness", action="store_true")
    p.set_defaults(fn=cmd_effective)

    p = sub.add_parser("toric", help="toric-system operations")
    p.add_argument("action",
                   choices=["validate", "squares", "perm", "shift", "segments"])
    p.add_argument("--surface", required=True)
    p.add_argument("--system", required=True)
    p.add_argument("--index", type=int, default=1, help="slot for perm")
    p.add_argument("--steps", type=int, default=1, help="steps for shift")
    p.set_defaults(fn=cmd_toric)

    p = sub.add_parser("admissible", help="integer-sequence calculus")
    p.add_argument("action", choices=["check", "first-kind"])
    p.add_argument("sequence", nargs="?", default="")
    p.add_argument("--list", action="store_true")
    p.set_defaults(fn=cmd_admissible)

    p = sub.add_parser("check", help="exceptionality of a toric system")
    p.add_argument("--surface", required=True)
    p.add_argument("--system", required=True)
    p.add_argument("--mode", choices=["exc", "strong", "cyclic"], required=True)
    p.add_argument("--path", choices=["auto", "fast", "general", "both"],
                   default="auto")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("augment-search", help="augmentation pedigree search")
    p.add_argument("--surface", required=True)
    p.add_argument("--system", required=True)
    p.add_argument("--grade", required=True,
                   choices=["standard", "weak", "exceptional", "strong", "cyclic"])
    p.add_argument("--all-chains", action="store_true")
    p.set_defaults(fn=cmd_augment_search)

    p = sub.add_parser("classify", help="verification suites and search")
    p.add_argument("action", choices=["tables", "counterexample", "search"])
    p.add_argument("--degree", type=int)
    p.add_argument("--budget", type=float, help="seconds")
    p.add_argument("--surface")
    p.add_argument("--pattern", help="square sequence, e.g. '-1 -2 -2 ...'")
    p.set_defaults(fn=cmd_classify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
