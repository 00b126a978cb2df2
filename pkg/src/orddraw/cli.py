"""Command-line interface: draw diagrams, export CNF, test dimension."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from .bipartization import encode_oct
from .engine import (GridDrawing, compute_coordinates, drawing_to_json,
                     perturbed_labels, weak_dominance_stats)
from .errors import (BackendFailure, CycleError, EdgeMismatch, ParseError,
                     OrderViolation, TooLarge, UnknownLabel, Unresolvable)
from .ingest import concept_lattice, parse_cxt, parse_order_text
from .orders import OrderRelation, inc_id_pairs
from .orientation import compute_conjugate_order, realizer_from_conjugate
from .render import detect_collinear, emit_dot, emit_svg, emit_tikz, perturb
from .sat import ExternalSolver
from .tig import build_tig

SOLVER_ENV = "ORDDRAW_SAT_CMD"

_INPUT_ERRORS = (ParseError, CycleError, UnknownLabel, TooLarge,
                 OSError, UnicodeDecodeError, ValueError)
_INVARIANT_ERRORS = (OrderViolation, Unresolvable, EdgeMismatch, AssertionError)


@dataclass
class RunConfig:
    """Everything a single command invocation needs."""

    input_path: str
    input_format: str = "auto"   # order | cxt | auto
    output_path: str | None = None
    solver: str = "sat"          # sat | greedy | anneal | genetic | brute
    sat_backend: str = "builtin"  # builtin | external
    solver_cmd: str | None = None
    k_search: str = "linear"     # linear | binary
    seed: int = 0
    perturb: bool = True
    summary_json: str | None = None
    verbose: bool = False


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _load_order(cfg: RunConfig) -> OrderRelation:
    fmt = cfg.input_format
    if fmt == "auto":
        fmt = "cxt" if cfg.input_path.lower().endswith(".cxt") else "order"
    text = _read_text(cfg.input_path)
    if fmt == "cxt":
        return concept_lattice(parse_cxt(text))
    return parse_order_text(text)


def _backend(cfg: RunConfig):
    if cfg.sat_backend != "external":
        return None
    command = cfg.solver_cmd or os.environ.get(SOLVER_ENV)
    if not command:
        raise BackendFailure(
            f"external backend needs --solver-cmd or ${SOLVER_ENV}")
    return ExternalSolver(command)


def _write_bytes(path: str | None, data: bytes) -> None:
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


_EMITTERS = {
    ".svg": lambda d: emit_svg(d),
    ".tikz": lambda d: emit_tikz(d),
    ".tex": lambda d: emit_tikz(d),
    ".json": lambda d: drawing_to_json(d).encode("utf-8"),
    ".dot": lambda d: emit_dot(d),
}


def _emit_drawing(d: GridDrawing, path: str) -> None:
    ext = Path(path).suffix.lower()
    if ext not in _EMITTERS:
        known = " ".join(sorted(_EMITTERS))
        raise ValueError(f"cannot infer output format from {path!r} (known: {known})")
    _write_bytes(path, _EMITTERS[ext](d))


def cmd_draw(cfg: RunConfig) -> int:
    started = time.perf_counter()
    order = _load_order(cfg)
    drawing = compute_coordinates(order, strategy=cfg.solver, seed=cfg.seed,
                                  backend=_backend(cfg), k_search=cfg.k_search)
    if cfg.verbose:
        for i, removed in enumerate(drawing.trace.per_pass_removed, start=1):
            names = " ".join(sorted(
                f"{order.ground.label(a)},{order.ground.label(b)}" for a, b in removed))
            print(f"pass {i}: removed {len(removed)} tig vertices: {names}",
                  file=sys.stderr)
    conflicts = detect_collinear(drawing)
    if conflicts and cfg.perturb:
        drawing = perturb(drawing, conflicts)
        if cfg.verbose:
            print(f"perturbation moved {len(perturbed_labels(drawing))} points "
                  f"to clear {len(conflicts)} conflicts", file=sys.stderr)
    if cfg.output_path:
        _emit_drawing(drawing, cfg.output_path)
    report = weak_dominance_stats(drawing)
    elapsed = time.perf_counter() - started
    print(f"n={order.n} inc={len(inc_id_pairs(order))} "
          f"passes={drawing.trace.passes} inserted={len(drawing.trace.inserted)} "
          f"false_comparabilities={report.count} time={elapsed:.3f}s")
    if cfg.summary_json:
        summary = {
            "n": order.n,
            "incomparable_pairs": len(inc_id_pairs(order)),
            "passes": drawing.trace.passes,
            "inserted": len(drawing.trace.inserted),
            "inserted_pairs": [list(p) for p in drawing.trace.inserted_labels()],
            "false_comparabilities": report.count,
            "strategy": drawing.trace.strategy,
            "seed": cfg.seed,
            "perturbed": list(perturbed_labels(drawing)),
        }
        payload = (json.dumps(summary, indent=2) + "\n").encode("utf-8")
        _write_bytes(cfg.summary_json, payload)
    return 0


def cmd_cnf(cfg: RunConfig, k: int) -> int:
    order = _load_order(cfg)
    tg = build_tig(order)
    cnf = encode_oct(tg.graph, k)
    stats = (f"tig: n={tg.graph.n} m={tg.graph.m} k={k} "
             f"vars={cnf.num_vars} clauses={len(cnf.clauses)}")
    dimacs = cnf.to_dimacs().encode("ascii")
    if cfg.output_path:
        _write_bytes(cfg.output_path, dimacs)
        print(stats)
    else:
        print(stats, file=sys.stderr)
        _write_bytes(None, dimacs)
    return 0


def cmd_dim(cfg: RunConfig, show_realizer: bool) -> int:
    order = _load_order(cfg)
    conj = compute_conjugate_order(order)
    if conj is None:
        print("dim<=2: no")
        return 0
    print("dim<=2: yes")
    if show_realizer:
        l1, l2 = realizer_from_conjugate(order, conj)
        print("L1: " + " ".join(l1.sequence()))
        print("L2: " + " ".join(l2.sequence()))
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="orddraw",
        description="Draw order diagrams by extending the order to dimension two.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("-i", "--input", required=True,
                       help="input file ('-' for stdin)")
        p.add_argument("--input-format", choices=("order", "cxt", "auto"),
                       default="auto",
                       help="input kind; auto picks cxt for .cxt files")
        p.add_argument("-v", "--verbose", action="store_true",
                       help="chatty progress on stderr")

    draw = sub.add_parser("draw", help="compute and export a diagram")
    common(draw)
    draw.add_argument("-o", "--output",
                      help="output file; format from extension "
                           "(.svg .tikz .tex .json .dot)")
    draw.add_argument("--solver",
                      choices=("sat", "greedy", "anneal", "genetic", "brute"),
                      default="sat", help="bipartization strategy")
    draw.add_argument("--sat-backend", choices=("builtin", "external"),
                      default="builtin")
    draw.add_argument("--solver-cmd",
                      help=f"external SAT solver command (or ${SOLVER_ENV})")
    draw.add_argument("--k-search", choices=("linear", "binary"),
                      default="linear", help="how the SAT strategy finds the minimum k")
    draw.add_argument("--seed", type=int, default=0,
                      help="seed for randomized strategies")
    draw.add_argument("--no-perturb", action="store_true",
                      help="skip collinearity postprocessing")
    draw.add_argument("--summary-json",
                      help="write a machine-readable summary ('-' for stdout)")

    cnf = sub.add_parser("cnf", help="export the bipartization SAT instance")
    common(cnf)
    cnf.add_argument("-o", "--output", help="DIMACS file (default: stdout)")
    cnf.add_argument("-k", type=int, default=1,
                     help="removal budget encoded in the instance")

    dim = sub.add_parser("dim", help="test whether the order has dimension <= 2")
    common(dim)
    dim.add_argument("--realizer", action="store_true",
                     help="print the two linear extensions when the answer is yes")
    return parser


def _config(ns: argparse.Namespace) -> RunConfig:
    return RunConfig(
        input_path=ns.input,
        input_format=ns.input_format,
        output_path=getattr(ns, "output", None),
        solver=getattr(ns, "solver", "sat"),
        sat_backend=getattr(ns, "sat_backend", "builtin"),
        solver_cmd=getattr(ns, "solver_cmd", None),
        k_search=getattr(ns, "k_search", "linear"),
        seed=getattr(ns, "seed", 0),
        perturb=not getattr(ns, "no_perturb", False),
        summary_json=getattr(ns, "summary_json", None),
        verbose=ns.verbose,
    )


def main(argv: list[str] | None = None) -> int:
    ns = _parser().parse_args(argv)
    cfg = _config(ns)
    try:
        if ns.command == "draw":
            return cmd_draw(cfg)
        if ns.command == "cnf":
            if ns.k < 0:
                raise ValueError("k must be non-negative")
            return cmd_cnf(cfg, ns.k)
        return cmd_dim(cfg, ns.realizer)
    except _INVARIANT_ERRORS as exc:
        print(f"orddraw: internal invariant violated: {exc}", file=sys.stderr)
        return 3
    except BackendFailure as exc:
        print(f"orddraw: solver backend failed: {exc}", file=sys.stderr)
        return 2
    except _INPUT_ERRORS as exc:
        print(f"orddraw: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
