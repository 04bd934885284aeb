"""Command-line front end.

Exit codes: 0 success, 1 domain error (no usable eigenvalue, degenerate
normalization, singular moment recursion), 2 usage or input-file error.
"""

from __future__ import annotations

import argparse
import io
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .cascade import cascade_run
from .derivs import MAX_DERIVATIVE, derivative_values, derivative_wavelet_values
from .fixtures import FIXTURES, fixture_text, load_fixture
from .linalg import EigenvectorError
from .mask import MaskError, condition_e, load_system, support_hull
from .moments import MomentError, continuous_moments
from .pointvals import MAX_LEVEL, NormalizationDegenerate, phi_values, wavelet_values

__all__ = ["RunConfig", "main", "run", "format_csv", "format_json"]


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    source: str = None
    level: int = 0
    derivative: int = 0
    function: str = "phi"
    order: int = 2
    out: str = None
    format: str = "csv"
    tol: float = 1e-10
    iterations: int = 60

    @property
    def wavelet_index(self):
        if self.function == "phi":
            return None
        return int(self.function.split(":", 1)[1])

    def validate(self, d: int = None):
        if not 0 <= self.level <= MAX_LEVEL:
            raise UsageError(f"--levels must be in 0..{MAX_LEVEL}")
        if not 0 <= self.derivative <= MAX_DERIVATIVE:
            raise UsageError(f"--derivative must be in 0..{MAX_DERIVATIVE}")
        if self.function != "phi":
            head, _, tail = self.function.partition(":")
            if head != "psi" or not tail.isdigit():
                raise UsageError(f"--function must be 'phi' or 'psi:s', got {self.function!r}")
            if d is not None and not 1 <= int(tail) <= d - 1:
                raise UsageError(f"psi index must be in 1..{d - 1}")


def _g(x: float) -> str:
    # + 0.0 folds -0.0 into 0.0
    return format(float(x) + 0.0, ".17g")


def _json(obj) -> str:
    """JSON with floats at 17 significant digits."""
    if isinstance(obj, dict):
        return "{" + ", ".join(f'"{k}": {_json(v)}' for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_json(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        if not math.isfinite(obj):
            return "null"
        return _g(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def format_csv(table) -> str:
    buf = io.StringIO()
    buf.write(",".join(["x"] + [f"f_{i + 1}" for i in range(table.r)]) + "\n")
    for x, row in zip(table.grid, table.values):
        buf.write(",".join([_g(x)] + [_g(v) for v in row]) + "\n")
    return buf.getvalue()


def format_json(table, report=None, extra=None) -> str:
    doc = {
        "kind": table.kind,
        "level": table.level,
        "grid": table.grid,
        "values": table.values,
        "spectrum": report.spectrum_dicts() if report is not None else [],
        "normalizing_constant": report.normalizing_constant if report is not None else None,
    }
    if report is not None:
        doc["residual"] = report.residual
    if extra:
        doc.update(extra)
    return _json(doc) + "\n"


def _load(source: str):
    path = Path(source)
    if path.exists():
        return load_system(path)
    key = source if source in FIXTURES else f"example-{source}"
    if key in FIXTURES:
        return load_fixture(key)
    raise FileNotFoundError(f"no such mask file or builtin fixture: {source!r}")


def _emit(text: str, out, stdout):
    if out in (None, "-"):
        stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twodir", description="Point values, moments and derivatives of "
                                "two-direction multiscaling functions and multiwavelets.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def with_input(name, help):
        sp = sub.add_parser(name, help=help)
        sp.add_argument("input", help="mask JSON file or builtin fixture name (example-5.1, example-5.2)")
        return sp

    with_input("validate", "load a mask file and summarize it")
    with_input("condition-e", "check Condition E")
    sp = with_input("moments", "continuous and discrete moments as JSON")
    sp.add_argument("--order", type=int, default=2, help="highest moment order J (default 2)")

    sp = with_input("values", "point values of phi, psi or their derivatives")
    sp.add_argument("--levels", type=int, default=0, help="grid level L: spacing d**-L (default 0)")
    sp.add_argument("--derivative", type=int, default=0, help="derivative order n (default 0)")
    sp.add_argument("--function", default="phi", help="phi or psi:s (default phi)")
    sp.add_argument("--out", help="output file (default stdout)")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = with_input("cascade", "approximate phi by the cascade iteration")
    sp.add_argument("--levels", type=int, default=5)
    sp.add_argument("--iterations", type=int, default=60)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--out")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("example", help="write a builtin fixture as a mask file")
    sp.add_argument("name", choices=("5.1", "5.2"))
    sp.add_argument("--emit", help="output file (default stdout)")
    return p


def _config(args) -> RunConfig:
    return RunConfig(
        subcommand=args.subcommand,
        source=getattr(args, "input", None),
        level=getattr(args, "levels", 0),
        derivative=getattr(args, "derivative", 0),
        function=getattr(args, "function", "phi"),
        order=getattr(args, "order", 2),
        out=getattr(args, "out", None),
        format=getattr(args, "format", "csv"),
        tol=getattr(args, "tol", 1e-10),
        iterations=getattr(args, "iterations", 60),
    )


def _values(cfg: RunConfig, system, stdout):
    n, s = cfg.derivative, cfg.wavelet_index
    if n == 0:
        table, report = phi_values(system, cfg.level)
        if s is not None:
            table = wavelet_values(system, s, table)
    else:
        table, report = derivative_values(system, n, cfg.level)
        if s is not None:
            table = derivative_wavelet_values(system, n, s, table)
    text = format_csv(table) if cfg.format == "csv" else format_json(table, report)
    _emit(text, cfg.out, stdout)


def _cascade(cfg: RunConfig, system, stdout, stderr):
    if cfg.level < 1:
        raise UsageError("--levels must be at least 1 for the cascade")
    if cfg.iterations < 1:
        raise UsageError("--iterations must be at least 1")
    state = cascade_run(system, cfg.level, cfg.iterations, cfg.tol)
    info = {"iterations": state.iteration, "delta": state.delta, "converged": state.converged}
    if cfg.format == "csv":
        text = format_csv(state.table)
    else:
        text = format_json(state.table, None, info)
    _emit(text, cfg.out, stdout)
    msg = f"iterations={state.iteration} delta={_g(state.delta)} converged={str(state.converged).lower()}\n"
    (stderr if cfg.out in (None, "-") else stdout).write(msg)


def _validate(system, stdout):
    a, b = support_hull(system)
    rep = condition_e(system)
    lines = [
        f"name={system.name}",
        f"dilation={system.d} multiplicity={system.r} N={system.N}",
        f"phi plus support=[{system.phi_plus.kmin}, {system.phi_plus.kmax}] "
        f"minus support=[{system.phi_minus.kmin}, {system.phi_minus.kmax}]",
        f"wavelets={len(system.wavelets)}",
        f"grid=[{a}, {b}]",
        f"condition_e={str(rep.satisfied).lower()}",
    ]
    stdout.write("\n".join(lines) + "\n")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    cfg = _config(args)
    try:
        if cfg.subcommand == "example":
            _emit(fixture_text(args.name), args.emit, stdout)
            return 0
        system = _load(cfg.source)
        cfg.validate(system.d)
        if cfg.subcommand == "validate":
            _validate(system, stdout)
        elif cfg.subcommand == "condition-e":
            stdout.write(str(condition_e(system)) + "\n")
        elif cfg.subcommand == "moments":
            if cfg.order < 0:
                raise UsageError("--order must be non-negative")
            stdout.write(_json(continuous_moments(system, cfg.order).to_dict()) + "\n")
        elif cfg.subcommand == "values":
            _values(cfg, system, stdout)
        elif cfg.subcommand == "cascade":
            _cascade(cfg, system, stdout, stderr)
    except (UsageError, MaskError, OSError, KeyError, ValueError) as exc:
        stderr.write(f"twodir {cfg.subcommand}: error: {exc}\n")
        return 2
    except (EigenvectorError, NormalizationDegenerate, MomentError) as exc:
        stderr.write(f"twodir {cfg.subcommand}: {type(exc).__name__}: {exc}\n")
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
