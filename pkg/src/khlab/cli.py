"""Command-line front end: ``khlab --pd ... --task khovanov``.

Exit status is 0 when every requested computation succeeded, 1 when at least
one diagram/task pair failed (the failure is reported and the run goes on),
and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import __version__
from .bracket import bracket_q, jones
from .complex import DEFAULT_DR_CAP, DR_SIGN_RULE, SIGN_RULE, build_complex, build_dr_complex, check_d_squared, complex_to_dict
from .corpus import CORPORA, corpus
from .diagram import PD_CONVENTION, parse_diagram, render_pd
from .errors import KhlabError
from .homology import homology, poincare
from .lee import lee_homology, rasmussen_s
from .quantum import build_unitary, hadamard_estimate, quantum_report
from .resolution import default_cap, dump_states

TASKS = ("bracket", "jones", "khovanov", "lee", "rasmussen", "quantum", "dr")
SCHEMA_VERSION = 1


@dataclass
class RunConfig:
    inputs: list[tuple[str, str]]  # (name, diagram text)
    tasks: list[str]
    coeff: str = "z"
    cap: int = 20
    fmt: str = "json"
    seed: int = 0
    q_samples: int = 10_000
    q_angle: float = 0.2
    jobs: int = 1
    dump: str | None = None

    def __post_init__(self):
        if not self.tasks and not self.dump:
            raise ValueError("at least one --task is required")
        if self.cap < 1:
            raise ValueError("--cap must be at least 1")


def _q_value(cfg: RunConfig) -> complex:
    return cmath.exp(1j * math.pi * cfg.q_angle)


def _run_task(task: str, d, cfg: RunConfig) -> dict:
    if task == "bracket":
        return {"q_form": bracket_q(d, cfg.cap).to_json(), "text": str(bracket_q(d, cfg.cap))}
    if task == "jones":
        j = jones(d, cfg.cap)
        return {"polynomial": j.to_json(), "text": str(j)}
    if task == "khovanov":
        table = homology(build_complex(d, cap=cfg.cap), cfg.coeff)
        return table.to_dict() | {"text": str(poincare(table))}
    if task == "lee":
        lee = lee_homology(d, cap=cfg.cap)
        return {"lee_dimension": lee.dimension, "dims": {str(i): n for i, n in sorted(lee.dims.items())}}
    if task == "rasmussen":
        return rasmussen_s(d, cfg.cap).to_dict()
    if task == "quantum":
        q = _q_value(cfg)
        cx = build_complex(d, cap=cfg.cap)
        rep = quantum_report(d, q, cx)
        est, se = hadamard_estimate(build_unitary(d, q, cx), cfg.q_samples, cfg.seed)
        dim = cx.total_rank()
        rep["q"] = {"re": q.real, "im": q.imag}
        rep["hadamard"] = {
            "samples": cfg.q_samples,
            "seed": cfg.seed,
            "trace_re": est.real * dim,
            "trace_im": est.imag * dim,
            "stderr": se * dim,
        }
        return rep
    if task == "dr":
        cx = build_dr_complex(d, cap=min(cfg.cap, DEFAULT_DR_CAP))
        return {
            "generators": cx.total_rank(),
            "d_squared_zero": check_d_squared(cx),
            "homology": homology(cx, cfg.coeff).to_dict(),
        }
    raise ValueError(f"unknown task {task!r}")


def process(item: tuple[str, str], cfg: RunConfig) -> dict:
    """Run every task on one input; errors are captured, never raised."""
    name, text = item
    out: dict = {"name": name, "input": text, "errors": []}
    try:
        d = parse_diagram(text)
    except KhlabError as exc:
        out["errors"].append({"task": "parse", "error": str(exc)})
        return out
    out |= {
        "pd": render_pd(d),
        "crossings": d.crossing_count,
        "components": d.component_count,
        "writhe": d.writhe,
    }
    if cfg.dump == "states":
        try:
            out["states"] = dump_states(d, cfg.cap)
        except KhlabError as exc:
            out["errors"].append({"task": "dump", "error": str(exc)})
    elif cfg.dump == "complex":
        try:
            out["complex"] = complex_to_dict(build_complex(d, cap=cfg.cap))
        except KhlabError as exc:
            out["errors"].append({"task": "dump", "error": str(exc)})
    for task in cfg.tasks:
        try:
            out[task] = _run_task(task, d, cfg)
        except (KhlabError, ArithmeticError) as exc:
            out["errors"].append({"task": task, "error": str(exc)})
    return out


def _process_star(args):
    return process(*args)


def run(cfg: RunConfig) -> tuple[str, int]:
    """Produce the report text and the exit code."""
    if cfg.jobs > 1 and len(cfg.inputs) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_process_star, [(item, cfg) for item in cfg.inputs]))
    else:
        results = [process(item, cfg) for item in cfg.inputs]
    code = 1 if any(r["errors"] for r in results) else 0
    render = {"json": _render_json, "csv": _render_csv, "plain": _render_plain}[cfg.fmt]
    return render(results, cfg), code


def _header(cfg: RunConfig) -> dict:
    return {
        "tool": "khlab",
        "version": __version__,
        "schema_version": SCHEMA_VERSION,
        "conventions": {"pd": PD_CONVENTION, "sign_rule": SIGN_RULE, "dr_sign_rule": DR_SIGN_RULE},
        "config": {
            "tasks": cfg.tasks,
            "coeff": cfg.coeff,
            "cap": cfg.cap,
            "seed": cfg.seed,
            "q_samples": cfg.q_samples,
            "q_angle": cfg.q_angle,
        },
    }


def _render_json(results: list[dict], cfg: RunConfig) -> str:
    return json.dumps(_header(cfg) | {"results": results}, sort_keys=True, indent=2) + "\n"


def _csv_fields(task: str, res: dict) -> dict:
    if task in ("bracket", "jones"):
        return {task: res["text"]}
    if task == "khovanov":
        tors = " ".join(f"({e['i']},{e['j']}):{'x'.join(map(str, e['torsion']))}" for e in res["entries"] if e["torsion"])
        return {"khovanov_coeff": res["coeff"], "khovanov_poincare": res["text"], "khovanov_torsion": tors}
    if task == "lee":
        return {"lee_dimension": res["lee_dimension"]}
    if task == "rasmussen":
        return {k: res[k] for k in ("s_min", "s_max", "s", "slice_genus_lower_bound")}
    if task == "quantum":
        return {k: res[k] for k in ("trace_re", "trace_im", "jones_at_q_re", "jones_at_q_im", "residual")}
    if task == "dr":
        return {"dr_generators": res["generators"], "dr_d_squared_zero": res["d_squared_zero"]}
    return {}


def _render_csv(results: list[dict], cfg: RunConfig) -> str:
    rows = []
    columns = ["name", "crossings", "components"]
    for r in results:
        row = {k: r.get(k, "") for k in columns}
        for task in cfg.tasks:
            if task in r:
                fields = _csv_fields(task, r[task])
                row |= fields
                columns += [k for k in fields if k not in columns]
        row["errors"] = "; ".join(f"{e['task']}: {e['error']}" for e in r["errors"])
        rows.append(row)
    columns.append("errors")
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=columns, lineterminator="\n", restval="")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


def _render_plain(results: list[dict], cfg: RunConfig) -> str:
    lines = [f"khlab {__version__}  ({PD_CONVENTION})"]
    for r in results:
        lines.append(f"== {r['name']}: {r.get('pd', r['input'])}")
        if "crossings" in r:
            lines.append(f"   crossings {r['crossings']}, components {r['components']}, writhe {r['writhe']}")
        if "states" in r:
            lines += ["   " + s for s in r["states"].splitlines()]
        for task in cfg.tasks:
            if task not in r:
                continue
            res = r[task]
            if task in ("bracket", "jones", "khovanov"):
                lines.append(f"   {task}: {res['text']}")
                if task == "khovanov":
                    for e in res["entries"]:
                        if e["torsion"]:
                            lines.append(f"     torsion at ({e['i']},{e['j']}): " + ", ".join(f"Z/{t}" for t in e["torsion"]))
            elif task == "lee":
                lines.append(f"   lee: dimension {res['lee_dimension']}")
            elif task == "rasmussen":
                lines.append(
                    f"   rasmussen: s = {res['s']} (s_min {res['s_min']}, s_max {res['s_max']}), "
                    f"slice genus >= {res['slice_genus_lower_bound']}"
                )
            elif task == "quantum":
                lines.append(
                    f"   quantum: trace {res['trace_re']:.12g}{res['trace_im']:+.12g}i, "
                    f"J(q) {res['jones_at_q_re']:.12g}{res['jones_at_q_im']:+.12g}i, residual {res['residual']:.3g}"
                )
            elif task == "dr":
                lines.append(f"   dr: {res['generators']} generators, d^2 = 0: {res['d_squared_zero']}")
        for e in r["errors"]:
            lines.append(f"   error ({e['task']}): {e['error']}")
    return "\n".join(lines) + "\n"


def _read_file(path: str) -> list[tuple[str, str]]:
    """One diagram per line; ``name: text`` or bare text; ``#`` starts a comment."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    out = []
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, text = line.partition(":")
        if sep and not name.strip().upper().startswith(("PD", "B[")):
            out.append((name.strip(), text.strip()))
        else:
            out.append((f"{path}:{n}", line))
    return out


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="khlab", description="Jones polynomial, Khovanov and Lee homology of knot diagrams.")
    src = p.add_argument_group("input (any combination, processed in order)")
    src.add_argument("--pd", action="append", default=[], metavar="TEXT", help="PD code, e.g. 'PD[X(1,4,2,5),...]'")
    src.add_argument("--braid", action="append", default=[], metavar="TEXT", help="braid word, e.g. 'B[2; 1,1,1]'")
    src.add_argument("--file", action="append", default=[], metavar="PATH", help="file with one diagram per line")
    src.add_argument("--corpus", choices=CORPORA, help="bundled diagram set")
    p.add_argument("--task", action="append", choices=TASKS, default=[], help="computation to run (repeatable)")
    p.add_argument("--coeff", choices=("z", "q", "f2"), default="z", help="coefficients for homology (default z)")
    p.add_argument("--cap", type=int, default=None, help="maximum crossing count (default $KHLAB_CAP or 20)")
    p.add_argument("--format", dest="fmt", choices=("json", "csv", "plain"), default="json")
    p.add_argument("--seed", type=int, default=0, help="seed for the Hadamard-test simulation")
    p.add_argument("--q-samples", type=int, default=10_000, help="Hadamard-test samples (quantum task)")
    p.add_argument("--q-angle", type=float, default=0.2, help="q = exp(i*pi*ANGLE) for the quantum task")
    p.add_argument("--jobs", type=int, default=1, help="worker processes for multi-diagram runs")
    p.add_argument("--dump", choices=("states", "complex"), help="include the state list or the full complex")
    p.add_argument("--version", action="version", version=f"khlab {__version__}")
    return p


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs: list[tuple[str, str]] = []
    inputs += [(f"pd[{k}]", t) for k, t in enumerate(args.pd)]
    inputs += [(f"braid[{k}]", t) for k, t in enumerate(args.braid)]
    for path in args.file:
        try:
            inputs += _read_file(path)
        except OSError as exc:
            parser.error(f"cannot read {path}: {exc.strerror}")
    if args.corpus:
        inputs += [(e.name, e.pd) for e in corpus(args.corpus)]
    if not inputs:
        parser.error("no input: give --pd, --braid, --file or --corpus")
    if args.q_samples < 1:
        parser.error("--q-samples must be positive")
    if args.jobs < 1:
        parser.error("--jobs must be positive")
    try:
        return RunConfig(
            inputs=inputs,
            tasks=list(dict.fromkeys(args.task)),
            coeff=args.coeff,
            cap=default_cap() if args.cap is None else args.cap,
            fmt=args.fmt,
            seed=args.seed,
            q_samples=args.q_samples,
            q_angle=args.q_angle,
            jobs=args.jobs,
            dump=args.dump,
        )
    except ValueError as exc:
        parser.error(str(exc))


def main(argv: list[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    text, code = run(cfg)
    sys.stdout.write(text)
    if code:
        print("khlab: some computations failed; see the report", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
