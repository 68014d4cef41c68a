"""Command-line front end.

Subcommands ``spectrum``, ``optimize``, ``balanced``, ``drum``, ``table`` and
``mesh`` write JSON, CSV or OBJ to stdout or ``--out``. Numbers are printed
with 12 significant digits, and every output starts with a header echoing the
run parameters (including the RNG seed), so identical invocations produce
identical bytes.

Exit codes: 0 success, 2 bad input, 3 numerical degeneracy, 4 nonconvergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import catenoid, drum, optimizer
from .cylinder import DEFAULT_CLUSTER_TOL, DEFAULT_KMAX, CircleConfig, transmission_spectrum
from .errors import InputError, NonConvergence, NumericDegeneracy, ParseError
from .mesh import mesh as build_mesh

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_DEGENERACY = 3
EXIT_NONCONVERGENCE = 4

SIG_DIGITS = 12
# weights read back from 12-digit files are renormalized if this close to the simplex
LOAD_SUM_TOL = 1e-9

COMMANDS = ("spectrum", "optimize", "balanced", "drum", "table", "mesh")
FORMATS = {
    "spectrum": ("json", "csv"),
    "optimize": ("json",),
    "balanced": ("json",),
    "drum": ("csv", "json"),
    "table": ("csv", "json"),
    "mesh": ("obj",),
}


def fmt(x: float) -> str:
    return f"{x:.{SIG_DIGITS}g}"


def _round(obj):
    """Round every float in a JSON-like tree to 12 significant digits."""
    if isinstance(obj, float):
        return float(fmt(obj)) if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, np.generic):
        return _round(obj.item())
    return obj


@dataclass
class RunManifest:
    command: str
    format: str
    out: str | None = None
    params: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise InputError(f"unknown command {self.command!r}")
        if self.format not in FORMATS[self.command]:
            allowed = ", ".join(FORMATS[self.command])
            raise InputError(f"{self.command} writes {allowed}, not {self.format}")

    def header(self) -> dict:
        return {"command": self.command, **self.params}


def load_config(path: str) -> CircleConfig:
    """Read a CircleConfig from JSON.

    Accepts ``{"spacings": [...], "weights": [...]}``, the output of the
    ``balanced`` command (its ``derived`` block has that shape) or the output
    of ``optimize``.
    """
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc
    if isinstance(data, dict) and "result" in data:
        data = data["result"]
    if isinstance(data, dict) and "derived" in data:
        data = data["derived"]
    elif isinstance(data, dict) and "config" in data:
        data = data["config"]
    if not isinstance(data, dict):
        raise ParseError(f"{path}: expected a JSON object")
    try:
        weights = [float(w) for w in data.get("weights", [])]
        spacings = [float(s) for s in data.get("spacings", [])]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{path}: spacings and weights must be numbers") from exc
    if weights and abs(math.fsum(weights) - 1.0) <= LOAD_SUM_TOL and min(weights) > 0:
        return CircleConfig.from_masses(spacings, weights)
    return CircleConfig.from_dict(data)


# --- commands -------------------------------------------------------------


def cmd_spectrum(config: CircleConfig, k_max: int = DEFAULT_KMAX,
                 cluster_tol: float = DEFAULT_CLUSTER_TOL) -> dict:
    spec = transmission_spectrum(config, k_max=k_max, cluster_tol=cluster_tol)
    rows = [{"k": k, "tau": e.tau, "tau_bar": 2.0 * math.pi * e.tau, "mode": e.mode,
             "multiplicity": e.multiplicity}
            for k, e in enumerate(spec.entries)]
    return {"config": config.to_dict(), "tau1": spec.tau1, "tau1_bar": spec.tau1_bar,
            "multiplicity": spec.multiplicity, "modes_scanned": spec.modes_scanned,
            "capped": spec.capped, "eigenvalues": rows}


def cmd_optimize(N: int | None, config: CircleConfig | None, seed: int, symmetric: bool | None,
                 seeds: int, cluster_tol: float, geometry_seed: bool = True) -> dict:
    rng = np.random.default_rng(seed)
    if config is not None:
        res = optimizer.maximize_weights(config.spacings, seeds=seeds, rng=rng,
                                         cluster_tol=cluster_tol)
    else:
        res = optimizer.maximize_full(N, seeds=seeds, symmetric=symmetric, rng=rng,
                                      use_geometry_seed=geometry_seed, cluster_tol=cluster_tol)
    return res.to_dict()


def cmd_balanced(N: int) -> dict:
    return catenoid.find_symmetric_balanced(N).to_dict()


def cmd_table(N_max: int, seed: int, seeds: int, cluster_tol: float) -> list[dict]:
    """One row per N: optimizer value, multiplicity and the catenoid area."""
    if N_max < 1:
        raise InputError("N_max must be >= 1")
    rows = []
    for N in range(1, N_max + 1):
        res = optimizer.maximize_full(N, seeds=seeds, rng=np.random.default_rng(seed),
                                      cluster_tol=cluster_tol)
        area = catenoid.configuration_area(catenoid.find_symmetric_balanced(N))
        rows.append({"N": N, "T1": res.value, "T1_over_4pi": res.value_over_4pi,
                     "multiplicity": res.multiplicity, "area": area,
                     "rel_diff": res.value / (2.0 * area) - 1.0})
    return rows


def parse_range(spec: str) -> np.ndarray:
    """``start:stop:num`` (inclusive, ``num`` points) or a comma-separated list."""
    try:
        if ":" in spec:
            start, stop, num = spec.split(":")
            n = int(num)
            if n < 1:
                raise ValueError
            return np.linspace(float(start), float(stop), n)
        return np.array([float(v) for v in spec.split(",")])
    except ValueError as exc:
        raise ParseError(f"bad range {spec!r}; use start:stop:num or v1,v2,...") from exc


def cmd_drum(sweep: str, values: np.ndarray, alpha: float) -> list[dict]:
    if sweep == "a":
        return drum.sweep_a(values)
    if any(v <= 0 for v in values):
        raise InputError("drum lengths must be positive")
    return drum.sweep_T(alpha, values)


# --- output ---------------------------------------------------------------


def render_json(manifest: RunManifest, body) -> str:
    doc = {"manifest": manifest.header(), "result": body}
    return json.dumps(_round(doc), indent=2) + "\n"


def render_csv(manifest: RunManifest, rows: list[dict]) -> str:
    out = io.StringIO()
    for k, v in manifest.header().items():
        out.write(f"# {k}={v}\n")
    if rows:
        writer = csv.writer(out, lineterminator="\n")
        keys = list(rows[0])
        writer.writerow(keys)
        for r in rows:
            writer.writerow([fmt(r[k]) if isinstance(r[k], float) else r[k] for k in keys])
    return out.getvalue()


def _write(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# --- argument parsing -----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="steklov-parallels",
                                description="Steklov transmission eigenvalues of parallel circles.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, default_format):
        sp.add_argument("--format", choices=("json", "csv", "obj"), default=default_format)
        sp.add_argument("--out", metavar="PATH", help="output file (default stdout)")

    def tol(sp):
        sp.add_argument("--tol", type=float, default=DEFAULT_CLUSTER_TOL,
                        help="relative tolerance for clustering tau_1")

    def opt(sp):
        sp.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
        sp.add_argument("--seeds", type=int, default=4, help="random restarts")

    sp = sub.add_parser("spectrum", help="eigenvalues of a circle configuration")
    sp.add_argument("--config", required=True, metavar="PATH")
    sp.add_argument("--kmax", type=int, default=DEFAULT_KMAX)
    tol(sp)
    common(sp, "json")

    sp = sub.add_parser("optimize", help="maximize the normalized first eigenvalue")
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--n", type=int, help="number of circles (optimize gaps and weights)")
    g.add_argument("--config", metavar="PATH", help="keep these gaps, optimize weights")
    sp.add_argument("--symmetric", choices=("on", "off"), default=None,
                    help="search mirror-symmetric configurations first (default on for N >= 3)")
    sp.add_argument("--no-geometry-seed", action="store_true",
                    help="do not seed from the balanced catenoid configuration")
    opt(sp)
    tol(sp)
    common(sp, "json")

    sp = sub.add_parser("balanced", help="symmetric balanced catenoid stack")
    sp.add_argument("--n", type=int, required=True)
    common(sp, "json")

    sp = sub.add_parser("drum", help="two-circle sweeps")
    sp.add_argument("--sweep", choices=("a", "T"), default="a")
    sp.add_argument("--range", dest="values", default="-2:2:81",
                    help="start:stop:num or comma list (default -2:2:81)")
    sp.add_argument("--alpha", type=float, default=1.0, help="density ratio f0/fT for --sweep T")
    common(sp, "csv")

    sp = sub.add_parser("table", help="T_1(N) and catenoid areas for N = 1..n")
    sp.add_argument("--n", type=int, default=6)
    opt(sp)
    tol(sp)
    common(sp, "csv")

    sp = sub.add_parser("mesh", help="OBJ mesh of a balanced configuration")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--segments", type=int, default=64)
    sp.add_argument("--rings", type=int, default=64)
    common(sp, "obj")
    return p


def run(args: argparse.Namespace) -> str:
    cmd = args.command
    if cmd == "spectrum":
        m = RunManifest(cmd, args.format, args.out,
                        {"config": args.config, "kmax": args.kmax, "tol": args.tol})
        m.validate()
        body = cmd_spectrum(load_config(args.config), args.kmax, args.tol)
        if args.format == "csv":
            return render_csv(m, body["eigenvalues"])
        return render_json(m, body)

    if cmd == "optimize":
        symmetric = None if args.symmetric is None else args.symmetric == "on"
        m = RunManifest(cmd, args.format, args.out,
                        {"n": args.n, "config": args.config, "seed": args.seed,
                         "seeds": args.seeds, "symmetric": args.symmetric,
                         "geometry_seed": not args.no_geometry_seed, "tol": args.tol})
        m.validate()
        if args.n is not None and args.n < 1:
            raise InputError("--n must be >= 1")
        config = load_config(args.config) if args.config else None
        body = cmd_optimize(args.n, config, args.seed, symmetric, args.seeds, args.tol,
                            geometry_seed=not args.no_geometry_seed)
        return render_json(m, body)

    if cmd == "balanced":
        m = RunManifest(cmd, args.format, args.out, {"n": args.n})
        m.validate()
        return render_json(m, cmd_balanced(args.n))

    if cmd == "drum":
        m = RunManifest(cmd, args.format, args.out,
                        {"sweep": args.sweep, "range": args.values, "alpha": args.alpha})
        m.validate()
        rows = cmd_drum(args.sweep, parse_range(args.values), args.alpha)
        return render_csv(m, rows) if args.format == "csv" else render_json(m, rows)

    if cmd == "table":
        m = RunManifest(cmd, args.format, args.out,
                        {"n": args.n, "seed": args.seed, "seeds": args.seeds, "tol": args.tol})
        m.validate()
        rows = cmd_table(args.n, args.seed, args.seeds, args.tol)
        return render_csv(m, rows) if args.format == "csv" else render_json(m, rows)

    if cmd == "mesh":
        m = RunManifest(cmd, args.format, args.out,
                        {"n": args.n, "segments": args.segments, "rings": args.rings})
        m.validate()
        cfg = catenoid.find_symmetric_balanced(args.n)
        try:
            tri = build_mesh(cfg, args.segments, args.rings)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        header = "\n".join(f"{k}={v}" for k, v in m.header().items())
        return tri.to_obj(header)

    raise InputError(f"unknown command {cmd!r}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        text = run(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericDegeneracy as exc:
        print(f"numerical degeneracy: {exc}", file=sys.stderr)
        return EXIT_DEGENERACY
    except NonConvergence as exc:
        print(f"no convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE
    _write(text, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
