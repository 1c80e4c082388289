"""Command-line front end.

    pointplane build  --q 3 --out pg3_3.json
    pointplane check  --q 3 --axioms 1,2,3,4,H,Hdual
    pointplane claims --q 3 --which harmonicity --samples 100 --seed 7
    pointplane stats  --q 2
    pointplane dual   --model m.json --out dual.json

Exit codes: 0 all hold (or are vacuous), 1 some axiom or claim fails,
2 usage, I/O or non-model error.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from collections import Counter
from pathlib import Path

from . import __version__
from .axioms import (AxiomReport, LABELS, check_axiom1, check_axiom2, check_axiom3,
                     check_axiom4, check_foundations, label_key)
from .errors import GeometryError, UsageError
from .harmonicity import (check_axiom_h, check_axiom_h_dual, count_quadrangles,
                          replay_harmonicity_claims, sample_harmonicity_configs)
from .pg3 import IncidenceSpace, build_pg3, from_json, to_json
from .polarity import all_lines, dual_space, flat_pencil
from .projectivity import (check_axiom_p, check_axiom_p_dual, dual_hexagon_from_planes,
                           dual_pappus_holds, hexagon_count, incident_line_pairs,
                           replay_section_trace, sample_section_configs)
from .sampling import EXHAUSTIVE, GENERATOR_NAME, Mode, sample

log = logging.getLogger("pointplane")

DEFAULT_SAMPLES = 2000
REPORT_FORMAT = "report-v1"

_GROUPS = {
    "1": ("1p", "1π"), "2": ("2p", "2π"), "3": ("3p", "3π"), "4": ("4",),
    "H": ("H",), "Hdual": ("Hdual",), "P": ("P",), "Pdual": ("Pdual",),
}
_ALIASES = {"1pi": "1π", "2pi": "2π", "3pi": "3π"}


def parse_axioms(text: str) -> list[str]:
    wanted = set()
    for tok in (t.strip() for t in text.split(",")):
        if not tok:
            continue
        if tok == "all":
            wanted.update(LABELS)
        elif tok in _GROUPS:
            wanted.update(_GROUPS[tok])
        elif _ALIASES.get(tok, tok) in LABELS:
            wanted.add(_ALIASES.get(tok, tok))
        else:
            raise UsageError(f"unknown axiom label {tok!r}")
    if not wanted:
        raise UsageError("no axioms requested")
    return [lab for lab in LABELS if lab in wanted]


# -- model loading and mode selection ---------------------------------------

def load_model(args) -> tuple[IncidenceSpace, dict]:
    if args.q is not None:
        S = build_pg3(args.q)
        return S, {"provenance": "pg3", "q": args.q}
    if args.model is None:
        raise UsageError("give --q or --model")
    raw = Path(args.model).read_bytes()
    S = from_json(raw.decode("utf-8"))
    desc = {"provenance": S.provenance, "q": S.q, "sha256": hashlib.sha256(raw).hexdigest(),
            "num_points": S.num_points, "num_planes": S.num_planes}
    return S, desc


def _small(S: IncidenceSpace) -> bool:
    if S.q is not None and S.provenance == "pg3":
        return S.q <= 3
    return S.num_points <= 40 and S.num_planes <= 40


def choose_mode(S: IncidenceSpace, args) -> Mode:
    if getattr(args, "exhaustive", False):
        if not _small(S):
            log.warning("exhaustive search requested on a large model; this may take a while")
        return EXHAUSTIVE
    if getattr(args, "samples", None) is not None:
        return sample(args.samples, args.seed)
    return EXHAUSTIVE if _small(S) else sample(DEFAULT_SAMPLES, args.seed)


def run_checks(S: IncidenceSpace, labels: list[str], mode: Mode, workers: int = 1,
               ordered: bool = False) -> list[AxiomReport]:
    want = set(labels)
    reports: list[AxiomReport] = []
    if want & {"1p", "1π"}:
        reports += check_axiom1(S, workers)
    if want & {"2p", "2π"}:
        reports += check_axiom2(S, False, mode, workers)
        reports += check_axiom2(S, True, mode, workers)
    if want & {"3p", "3π"}:
        reports += check_axiom3(S, mode, workers)
    if "4" in want:
        reports.append(check_axiom4(S, mode, workers))
    if "H" in want:
        reports.append(check_axiom_h(S, mode, workers))
    if "Hdual" in want:
        reports.append(check_axiom_h_dual(S, mode, workers))
    if "P" in want:
        reports.append(check_axiom_p(S, mode, workers, ordered))
    if "Pdual" in want:
        reports.append(check_axiom_p_dual(S, mode, workers, ordered))
    return sorted((r for r in reports if r.axiom in want), key=label_key)


def _mode_dict(mode: Mode) -> dict:
    if mode.exhaustive:
        return {"exhaustive": True}
    return {"exhaustive": False, "samples": mode.samples}


def run_report(command: str, model: dict, mode: Mode, seed: int, reports=(), traces=(),
               elapsed_ms: float | None = None) -> dict:
    doc = {
        "format": REPORT_FORMAT,
        "version": __version__,
        "command": command,
        "model": model,
        "mode": _mode_dict(mode),
        "reports": [r.to_dict() for r in reports],
        "traces": [t.to_dict() for t in traces],
        "seed": seed,
        "generator": GENERATOR_NAME,
    }
    if elapsed_ms is not None:
        doc["elapsed_ms"] = round(elapsed_ms, 1)
    return doc


def emit(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.buffer.write(text.encode("utf-8"))
        sys.stdout.flush()
    else:
        Path(out).write_bytes(text.encode("utf-8"))


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


# -- commands ---------------------------------------------------------------

def cmd_build(args) -> int:
    S = build_pg3(args.q)
    emit(to_json(S), args.out)
    return 0


def cmd_dual(args) -> int:
    S, _ = load_model(args)
    emit(to_json(dual_space(S)), args.out)
    return 0


def cmd_check(args) -> int:
    labels = parse_axioms(args.axioms)
    S, desc = load_model(args)
    mode = choose_mode(S, args)
    t0 = time.perf_counter()
    reports = run_checks(S, labels, mode, args.workers, args.ordered)
    elapsed = (time.perf_counter() - t0) * 1000 if args.timing else None
    emit(dumps(run_report("check", desc, mode, args.seed, reports, elapsed_ms=elapsed)), args.out)
    return 1 if any(r.status == "fails" for r in reports) else 0


def _require_model(S: IncidenceSpace, mode: Mode, workers: int) -> list[AxiomReport]:
    reports = check_foundations(S, mode, workers)
    bad = [r for r in reports if r.status == "fails"]
    if bad:
        names = ", ".join(sorted({r.axiom for r in bad}, key=LABELS.index))
        raise UsageError(f"not a model: AXIOM {names} fails")
    return reports


def _ints(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected comma-separated ids, got {text!r}") from exc


def cmd_claims(args) -> int:
    S, desc = load_model(args)
    # --samples counts traces here; foundations use the default per-model mode.
    if args.exhaustive or _small(S):
        mode = EXHAUSTIVE
    else:
        mode = sample(DEFAULT_SAMPLES, args.seed)
    t0 = time.perf_counter()
    foundations = _require_model(S, mode, args.workers)
    traces = []
    ok = True
    if args.which == "harmonicity":
        if args.point is not None or args.faces is not None:
            faces = _ints(args.faces)
            if args.point is None or faces is None:
                raise UsageError("explicit figures need both --point and --faces")
            configs = [(args.point, faces, args.omega)]
        else:
            configs = sample_harmonicity_configs(S, args.samples, args.seed)
        for point, faces, omega in configs:
            tr = replay_harmonicity_claims(S, point, faces, omega)
            ok &= tr.passed
            traces.append(tr)
    else:
        if args.planes is not None:
            configs = [(_ints(args.planes), args.pi)]
        else:
            configs = sample_section_configs(S, args.samples, args.seed)
        for six, pi in configs:
            dh = dual_hexagon_from_planes(S, six)
            tr = replay_section_trace(S, dh, pi)
            direct = dual_pappus_holds(S, dh)
            tr.derived["direct_verdict"] = direct
            ok &= tr.passed and tr.verdict == direct
            traces.append(tr)
    if not traces:
        log.warning("no configurations found for %s", args.which)
    elapsed = (time.perf_counter() - t0) * 1000 if args.timing else None
    doc = run_report(f"claims {args.which}", desc, mode, args.seed, foundations, traces,
                     elapsed)
    doc["trace_samples"] = len(traces)
    emit(dumps(doc), args.out)
    return 0 if ok else 1


def _hist(values) -> dict[str, int]:
    c = Counter(values)
    return {str(k): c[k] for k in sorted(c)}


def model_stats(S: IncidenceSpace, mode: Mode = EXHAUSTIVE) -> dict:
    doc: dict = {"points": S.num_points, "planes": S.num_planes}
    doc["quadrangles_per_plane"] = _hist(
        count_quadrangles(S, "points", f) for f in range(S.num_planes))
    reports = {r.axiom: r for r in check_foundations(S, mode)}
    undefined = None
    if reports["4"].status == "fails":
        undefined = "undefined (AXIOM [4] fails)"
    else:
        try:
            lines = all_lines(S)
        except GeometryError as exc:
            undefined = f"undefined ({exc})"
    if undefined:
        for key in ("lines", "points_per_line", "planes_per_line", "pencil_sizes",
                    "hexagons_per_pair"):
            doc[key] = undefined
        return doc
    doc["lines"] = len(lines)
    doc["points_per_line"] = _hist(len(ln.points) for ln in lines)
    doc["planes_per_line"] = _hist(len(ln.planes) for ln in lines)
    doc["pencil_sizes"] = _hist(len(flat_pencil(S, p, f)) for p, f in S.incident_pairs())
    doc["hexagons_per_pair"] = _hist(hexagon_count(pr) for pr in incident_line_pairs(S))
    return doc


def cmd_stats(args) -> int:
    S, desc = load_model(args)
    doc = {"format": "stats-v1", "version": __version__, "model": desc}
    doc.update(model_stats(S, choose_mode(S, args)))
    emit(dumps(doc), args.out)
    return 0


# -- argument parsing -------------------------------------------------------

def _add_model(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--q", type=int, help="build PG(3, q) in memory")
    g.add_argument("--model", help="incidence-v1 JSON file")


def _add_mode(p: argparse.ArgumentParser, samples_default=None, exclusive=True) -> None:
    g = p.add_mutually_exclusive_group() if exclusive else p
    g.add_argument("--exhaustive", action="store_true", help="search every configuration")
    g.add_argument("--samples", type=int, default=samples_default,
                   help="number of seeded samples")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1, help="worker processes")
    p.add_argument("--timing", action="store_true", help="add elapsed_ms to the report")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pointplane", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="write PG(3, q) as incidence-v1 JSON")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("check", help="run axiom checkers")
    _add_model(p)
    p.add_argument("--axioms", default="all", help="comma list: 1,2,3,4,H,Hdual,P,Pdual,all")
    _add_mode(p)
    p.add_argument("--ordered", action="store_true",
                   help="enumerate every hexagon labelling, not one per figure")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("claims", help="replay the duality arguments on sample figures")
    _add_model(p)
    p.add_argument("--which", choices=("harmonicity", "projectivity"), required=True)
    _add_mode(p, samples_default=10, exclusive=False)
    p.add_argument("--point", type=int, help="harmonicity: the common point")
    p.add_argument("--faces", help="harmonicity: four plane ids through --point")
    p.add_argument("--omega", type=int, help="harmonicity: plane missing --point")
    p.add_argument("--planes", help="projectivity: alpha1,beta1,gamma1,alpha2,beta2,gamma2")
    p.add_argument("--pi", type=int, help="projectivity: section plane missing O")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_claims)

    p = sub.add_parser("stats", help="count lines, pencils, quadrangles, hexagons")
    _add_model(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("dual", help="write the point/plane dual of a model")
    _add_model(p)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_dual)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (GeometryError, OSError, UnicodeDecodeError) as exc:
        print(f"pointplane: error: {exc}", file=sys.stderr)
        return 2


def run() -> None:
    sys.exit(main())
