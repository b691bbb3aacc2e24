"""Command-line driver.

Every command writes one JSON record per line. Records carry the tool
version and a hash of the effective configuration, and contain no
timestamps, so identical inputs give byte-identical output.

Exit codes: 0 success, 1 computation or invariant failure, 2 usage or
configuration error.
"""

import argparse
import hashlib
import json
import math
import os
import sys
from pathlib import Path

import numpy as np
import yaml

from . import __version__
from .born1 import first_born, selection_rule_report
from .born2 import (
    crossed_element,
    crossed_grid,
    ladder_convergence,
    ladder_element,
    ladder_grid,
    polynomial_energy_kernel,
    static_coulomb,
)
from .constants import ALPHA
from .entanglement import concurrence
from .evolution import ForbiddenTransition, scan_entanglement, scatter_spin
from .fourier_oracle import KERNEL_TERMS, OracleDivergence, oracle_fourier
from .kinematics import ForwardSingularity, cm_kinematics
from .potentials import coulomb_kernel, spin_orbit_kernel, spin_spin_kernel
from .spin_algebra import (
    SIGMA1,
    SIGMA2,
    bell_state,
    commutator,
    off_block_norm,
    symmetric_state,
)

OUTDIR_ENV = "NRQED_ENTANGLE_OUTDIR"

COMMANDS = ("verify", "amplitude", "evolve", "scan", "oracle", "second-born")

DEFAULTS = {
    "alpha": ALPHA,
    "seed": 7,
    "verify": {
        "n_samples": 100,
        "momentum_scale": 1.0,
        "k_grid": [0.5, 1.0, 2.0],
        "n_theta": 64,
        "n_phi": 16,
        "oracle_q": [0.5, 1.0, 2.0],
        "oracle_pairs": 2,
    },
    "amplitude": {"k": 1.0, "theta": math.pi / 2, "phi": 0.0},
    "evolve": {"initial": "psi+", "k": 1.0, "theta": 1.0, "phi": 0.5},
    "scan": {"initial": "psi-", "k_grid": [0.5, 1.0, 2.0], "n_theta": 64, "n_phi": 16},
    "oracle": {"term": "coulomb", "q": 2.0, "p1": [0.3, -0.2, 0.5], "p2": [-0.4, 0.1, 0.2]},
    "second_born": {
        "k": 1.0,
        "theta": 1.0,
        "phi": 0.3,
        "n_radial": 16,
        "angular_order": 7,
        "eta": 1e-3,
        "kernel": "coulomb",
        "refine": [8, 16, 32],
    },
}


class ConfigError(ValueError):
    pass


def _merge(base, override, path=""):
    out = dict(base)
    for key, value in override.items():
        if key not in base:
            raise ConfigError(f"unknown config key {path}{key!r}")
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                raise ConfigError(f"config section {path}{key!r} must be a mapping")
            out[key] = _merge(base[key], value, f"{path}{key}.")
        else:
            out[key] = value
    return out


def load_config(path=None, seed=None, alpha=None):
    """Defaults, overlaid by the YAML file, overlaid by command-line flags."""
    config = json.loads(json.dumps(DEFAULTS))
    if path is not None:
        try:
            data = yaml.safe_load(Path(path).read_text())
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError("config root must be a mapping")
        config = _merge(config, data)
    if seed is not None:
        config["seed"] = seed
    if alpha is not None:
        config["alpha"] = alpha
    _validate(config)
    return config


def _validate(config):
    try:
        alpha = float(config["alpha"])
        int(config["seed"])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad alpha/seed: {exc}") from exc
    if not alpha > 0.0 or not math.isfinite(alpha):
        raise ConfigError("alpha must be a positive finite number")
    for section in ("verify", "scan"):
        c = config[section]
        if not c["k_grid"] or int(c["n_theta"]) < 1 or int(c["n_phi"]) < 1:
            raise ConfigError(f"{section}: grids must be non-empty")
    if int(config["verify"]["n_samples"]) < 1:
        raise ConfigError("verify.n_samples must be >= 1")
    if config["oracle"]["term"] not in KERNEL_TERMS:
        raise ConfigError(f"oracle.term must be one of {KERNEL_TERMS}")
    if config["second_born"]["kernel"] not in ("coulomb", "synthetic"):
        raise ConfigError("second_born.kernel must be 'coulomb' or 'synthetic'")


def config_hash(config):
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _clean(x):
    """Make numpy values and NaNs JSON-safe."""
    if isinstance(x, dict):
        return {k: _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, np.ndarray):
        return _clean(x.tolist())
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": _clean(float(x.real)), "im": _clean(float(x.imag))}
    if isinstance(x, (np.floating, float)):
        x = float(x)
        return x if math.isfinite(x) else None
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def _matrix(m):
    m = np.asarray(m)
    return {"re": m.real.tolist(), "im": m.imag.tolist()}


def theta_grid(n):
    """``n`` midpoint angles in (0, pi)."""
    return [math.pi * (j + 0.5) / n for j in range(n)]


def phi_grid(n):
    return [2.0 * math.pi * j / n for j in range(n)]


class Emitter:
    def __init__(self, stream, command, config):
        self.stream = stream
        self.header = {
            "tool": "nrqed-entangle",
            "version": __version__,
            "command": command,
            "config_hash": config_hash(config),
        }

    def emit(self, kind, payload):
        record = dict(self.header, kind=kind, data=_clean(payload))
        self.stream.write(json.dumps(record, sort_keys=True, separators=(",", ":")) + "\n")


def _spin(label):
    if isinstance(label, str):
        return bell_state(label)
    return symmetric_state(*label)


def _check(name, passed, value, tolerance):
    return {"check": name, "passed": bool(passed), "value": value, "tolerance": tolerance}


def run_verify(config, out):
    """Invariant suite: returns True iff every check passes."""
    alpha = float(config["alpha"])
    seed = int(config["seed"])
    v = config["verify"]
    checks = []

    report = selection_rule_report(int(v["n_samples"]), float(v["momentum_scale"]), seed, alpha)
    checks.append(_check("selection_rule", report.passed, report.max_off_block_ratio, 1e-12))

    ths, phs = theta_grid(int(v["n_theta"])), phi_grid(int(v["n_phi"]))
    singlet = scan_entanglement("psi-", v["k_grid"], ths, phs, alpha)
    worst_fid = min(r.singlet_overlap**2 for r in singlet.records)
    checks.append(_check("singlet_fixed_point", worst_fid >= 1 - 1e-10, 1 - worst_fid, 1e-10))

    worst_overlap = 0.0
    for chi in ("psi+", "phi+", "phi-", (1.0, 0.0, 0.0), (0.5, 0.5, 0.5)):
        for r in scan_entanglement(_spin(chi), v["k_grid"], ths, phs, alpha).allowed:
            worst_overlap = max(worst_overlap, r.singlet_overlap)
    checks.append(_check("singlet_non_generation", worst_overlap <= 1e-12, worst_overlap, 1e-12))

    rng = np.random.default_rng(seed)
    worst_rel = 0.0
    for qn in v["oracle_q"]:
        for _ in range(int(v["oracle_pairs"])):
            d = rng.normal(size=3)
            q = qn * d / np.linalg.norm(d)
            p1, p2 = rng.normal(size=3), rng.normal(size=3)
            pairs = [
                (coulomb_kernel(q, p1, p2, alpha, "leading").operator[0, 0].real,
                 oracle_fourier("coulomb", q, alpha=alpha)),
                (coulomb_kernel(q, p1, p2, alpha, "retardation").operator[0, 0].real,
                 oracle_fourier("retardation", q, p1=p1, p2=p2, alpha=alpha)),
                (spin_orbit_kernel(q, p1, p2, alpha).operator,
                 oracle_fourier("spin_orbit", q, p1=p1, p2=p2, alpha=alpha)),
                (spin_spin_kernel(q, alpha, "tensor").operator,
                 oracle_fourier("spin_spin_tensor", q, alpha=alpha)),
            ]
            for closed, numeric in pairs:
                rel = np.linalg.norm(np.asarray(closed) - numeric) / np.linalg.norm(closed)
                worst_rel = max(worst_rel, float(rel))
    checks.append(_check("kernel_oracle_agreement", worst_rel <= 1e-4, worst_rel, 1e-4))

    kin = cm_kinematics(1.0, 1.0, 0.3)
    a, b, c, d = kin.p1_in, kin.p2_in, kin.p1_out, kin.p2_out
    crossed = crossed_element(c, d, a, b, crossed_grid(a, b, c, d))
    cn = float(np.linalg.norm(crossed))
    checks.append(_check("crossed_vanishing", cn <= 1e-15, cn, 1e-15))
    ladder = ladder_element(c, d, a, b, ladder_grid(a, b))
    s_tot = 0.5 * (SIGMA1 + SIGMA2)
    lad_off = off_block_norm(ladder) / np.linalg.norm(ladder)
    lad_comm = max(np.linalg.norm(commutator(ladder, s)) for s in s_tot) / np.linalg.norm(ladder)
    checks.append(_check("ladder_spin_structure", max(lad_off, lad_comm) <= 1e-14,
                         max(lad_off, lad_comm), 1e-14))

    for chk in checks:
        out.emit("check", chk)
    passed = all(c["passed"] for c in checks)
    out.emit("summary", {"passed": passed, "n_checks": len(checks),
                         "failed": [c["check"] for c in checks if not c["passed"]]})
    return passed, checks


def run_amplitude(config, out):
    c = config["amplitude"]
    kin = cm_kinematics(float(c["k"]), float(c["theta"]), float(c["phi"]))
    amp = first_born(kin, float(config["alpha"]))
    norms = amp.block_norms()
    record = {
        "k": c["k"], "theta": c["theta"], "phi": c["phi"],
        "q": kin.q, "q_ex": kin.q_ex,
        "direct": _matrix(amp.direct),
        "exchange": _matrix(amp.exchange),
        "total": _matrix(amp.total),
        "block_norms": norms,
        "off_block_ratio": norms["singlet_triplet"] / norms["operator"],
    }
    out.emit("amplitude", record)
    return [("off-block ratio", record["off_block_ratio"]),
            ("singlet block", norms["singlet_singlet"]),
            ("triplet block", norms["triplet_triplet"])]


def run_evolve(config, out):
    c = config["evolve"]
    chi = _spin(c["initial"])
    kin = cm_kinematics(float(c["k"]), float(c["theta"]), float(c["phi"]))
    final = scatter_spin(chi, kin, float(config["alpha"]))
    record = {
        "initial": c["initial"],
        "initial_concurrence": concurrence(chi),
        "final_re": final.amplitudes.real,
        "final_im": final.amplitudes.imag,
        "final_concurrence": concurrence(final),
        "exchange_class": final.exchange_class,
    }
    out.emit("evolve", record)
    return [("initial concurrence", record["initial_concurrence"]),
            ("final concurrence", record["final_concurrence"])]


def run_scan(config, out):
    c = config["scan"]
    label = c["initial"] if isinstance(c["initial"], str) else tuple(c["initial"])
    chi = _spin(label)
    result = scan_entanglement(chi, [float(k) for k in c["k_grid"]], theta_grid(int(c["n_theta"])),
                               phi_grid(int(c["n_phi"])), float(config["alpha"]))
    for r in result.records:
        rec = r.as_dict()
        rec["initial"] = str(c["initial"])
        out.emit("point", rec)
    out.emit("summary", result.summary)
    s = result.summary
    return [("points", s["points"]), ("forbidden", s["forbidden"]),
            ("min concurrence", s.get("min_concurrence")),
            ("max concurrence", s.get("max_concurrence"))]


def run_oracle(config, out):
    c = config["oracle"]
    alpha = float(config["alpha"])
    q = c["q"]
    q = np.array([float(q), 0.0, 0.0]) if np.isscalar(q) else np.asarray(q, dtype=float)
    p1, p2 = np.asarray(c["p1"], dtype=float), np.asarray(c["p2"], dtype=float)
    term = c["term"]
    numeric = oracle_fourier(term, q, p1=p1, p2=p2, alpha=alpha)
    closed = {
        "coulomb": lambda: coulomb_kernel(q, p1, p2, alpha, "leading").operator[0, 0].real,
        "coulomb_contact": lambda: coulomb_kernel(q, p1, p2, alpha, "contact").operator[0, 0].real,
        "retardation": lambda: coulomb_kernel(q, p1, p2, alpha, "retardation").operator[0, 0].real,
        "spin_orbit": lambda: spin_orbit_kernel(q, p1, p2, alpha).operator,
        "spin_spin_contact": lambda: spin_spin_kernel(q, alpha, "contact").operator,
        "spin_spin_tensor": lambda: spin_spin_kernel(q, alpha, "tensor").operator,
    }[term]()
    denom = np.linalg.norm(closed)
    rel = float(np.linalg.norm(np.asarray(closed) - numeric) / denom) if denom else 0.0
    scalar = np.ndim(numeric) == 0
    out.emit("oracle", {
        "term": term, "q": q,
        "oracle": numeric if scalar else _matrix(numeric),
        "closed_form": closed if scalar else _matrix(closed),
        "relative_difference": rel,
    })
    return [("term", term), ("|q|", float(np.linalg.norm(q))),
            ("oracle", numeric if scalar else float(np.linalg.norm(numeric))),
            ("relative difference", rel)]


def run_second_born(config, out):
    c = config["second_born"]
    kin = cm_kinematics(float(c["k"]), float(c["theta"]), float(c["phi"]))
    a, b, cc, d = kin.p1_in, kin.p2_in, kin.p1_out, kin.p2_out
    kernel = static_coulomb if c["kernel"] == "coulomb" else polynomial_energy_kernel()
    n, order, eta = int(c["n_radial"]), int(c["angular_order"]), float(c["eta"])
    ladder = ladder_element(cc, d, a, b, ladder_grid(a, b, n, order, eta), kernel)
    crossed = crossed_element(cc, d, a, b, crossed_grid(a, b, cc, d, n, order, eta), kernel)
    rows = ladder_convergence(cc, d, a, b, [int(x) for x in c["refine"]], order, eta)
    record = {
        "kernel": c["kernel"],
        "ladder": _matrix(ladder),
        "ladder_off_block": off_block_norm(ladder),
        "crossed": _matrix(crossed),
        "crossed_norm": float(np.linalg.norm(crossed)),
        "ladder_convergence": [{"n_radial": r[0], "value": r[1], "change": r[2]} for r in rows],
    }
    out.emit("second_born", record)
    return [("ladder scalar", complex(ladder[0, 0])), ("ladder off-block", record["ladder_off_block"]),
            ("crossed norm", record["crossed_norm"])]


def _print_table(rows, stream):
    width = max(len(str(k)) for k, _ in rows)
    for key, value in rows:
        stream.write(f"{str(key):<{width}}  {value}\n")


def build_parser():
    parser = argparse.ArgumentParser(prog="nrqed-entangle", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", type=Path, help="YAML configuration file")
        p.add_argument("--seed", type=int)
        p.add_argument("--alpha", type=float, help="fine-structure constant override")
        p.add_argument("--out", type=Path, help=f"output file (default: ${OUTDIR_ENV}/<command>.jsonl or stdout)")
        p.add_argument("--summary", action="store_true", help="print a human-readable table to stderr")
    return parser


def _open_output(args):
    if args.out is not None:
        return open(args.out, "w")
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir:
        Path(outdir).mkdir(parents=True, exist_ok=True)
        return open(Path(outdir) / f"{args.command}.jsonl", "w")
    return None


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        config = load_config(args.config, args.seed, args.alpha)
    except ConfigError as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2

    handle = _open_output(args)
    stream = handle if handle is not None else sys.stdout
    out = Emitter(stream, args.command, config)
    out.emit("config", config)
    try:
        if args.command == "verify":
            passed, checks = run_verify(config, out)
            rows = [(c["check"], "pass" if c["passed"] else f"FAIL ({c['value']:.3g})") for c in checks]
            code = 0 if passed else 1
        else:
            runner = {
                "amplitude": run_amplitude,
                "evolve": run_evolve,
                "scan": run_scan,
                "oracle": run_oracle,
                "second-born": run_second_born,
            }[args.command]
            rows = runner(config, out)
            code = 0
    except (ForwardSingularity, ForbiddenTransition, OracleDivergence, ValueError) as exc:
        out.emit("error", {"type": type(exc).__name__, "message": str(exc)})
        sys.stderr.write(f"error: {exc}\n")
        rows, code = None, 1
    finally:
        if handle is not None:
            handle.close()
    if args.summary and rows:
        _print_table(rows, sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
