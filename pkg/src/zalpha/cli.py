"""Experiment runner: constant estimators, certificate closure checks and witness derivation.

    zalpha qtriangle --alpha 1 --dims 16,64 --trials 1000 --seed 1 --out qt.csv
    zalpha pelczynski [AXIOM_FILE] --budget 10000 --format json --out w.json
    zalpha certify [CERT_FILE] --dims 8 --trials 100 --out cert.csv

Every numeric row points (``witness_ref``) into a sidecar ``<out>.witness.json``
holding the inputs that achieved the estimate.  Exit codes: 0 success,
1 certificate failed verification, 2 configuration error, 3 derivation failure.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import resources

from . import pelczynski as pz
from .cartesian import multiplier_constant_estimate, u_norm_estimate
from .centralizer import quasilinearity_estimate
from .estimation import register_ratio, trial_rng
from .ideal import (
    FactorizationCertificate,
    compose_certificate,
    conjugate_certificate,
    random_certificate,
    residual,
    sum_certificate,
    verify_certificate,
)
from .linalg import FAMILIES
from .zspace import quasi_triangle_estimate

COMMANDS = ("qtriangle", "qlinear", "multiplier", "unorm", "pelczynski", "certify")
COLUMNS = (
    "command",
    "alpha",
    "dim",
    "trials",
    "seed",
    "family_set",
    "constant_name",
    "estimate",
    "witness_ref",
    "timestamp",
)
EXIT_OK, EXIT_UNVERIFIED, EXIT_CONFIG, EXIT_DERIVATION = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass
class ExperimentConfig:
    command: str
    alpha: float = 1.0
    dims: list = field(default_factory=lambda: [16])
    trials: int = 1000
    seed: int = 0
    families: tuple = FAMILIES
    format: str = "csv"
    out: str | None = None
    budget: int = 10_000
    input: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not math.isfinite(self.alpha):
            raise ConfigError("--alpha must be finite")
        if not self.dims:
            raise ConfigError("--dims must list at least one dimension")
        if any(d < 1 for d in self.dims):
            raise ConfigError("--dims entries must be positive")
        if self.trials < 1:
            raise ConfigError("--trials must be >= 1")
        if self.budget < 1:
            raise ConfigError("--budget must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("--seed must be a 64-bit unsigned integer")
        if not self.families or any(f not in FAMILIES for f in self.families):
            raise ConfigError(f"--families must be a subset of {','.join(FAMILIES)}")
        if self.format not in ("csv", "json"):
            raise ConfigError("--format must be csv or json")
        if self.command == "unorm" and any(d % 2 for d in self.dims):
            raise ConfigError("unorm needs even --dims")


# -- estimators --------------------------------------------------------------


def _estimate(cfg: ExperimentConfig, n: int):
    a, t, s, fams = cfg.alpha, cfg.trials, cfg.seed, cfg.families
    if cfg.command == "qtriangle":
        return [quasi_triangle_estimate(n, a, t, seed=s, families=fams)]
    if cfg.command == "qlinear":
        return [quasilinearity_estimate(n, a, t, families=fams, seed=s)]
    if cfg.command == "multiplier":
        return [multiplier_constant_estimate(n, a, t, seed=s, families=fams)]
    return list(u_norm_estimate(n, a, t, seed=s, families=fams))


@register_ratio("closure_residual")
def closure_residual_ratio(w: dict, alpha: float) -> float:
    return residual(FactorizationCertificate.from_json(w["certificate"]))


def _closure(c1, c2, R, S):
    """sum, then two-sided composition, then conjugation; yields each certificate."""
    s = sum_certificate(c1, c2)
    c = compose_certificate(R, s, S)
    return [s, c, conjugate_certificate(c)]


def _certify_random(cfg: ExperimentConfig, n: int):
    worst, worst_c = -1.0, None
    for t in range(cfg.trials):
        rng = trial_rng(cfg.seed, t)
        k, m = (int(v) for v in rng.integers(1, 7, size=2))
        k2, m2 = (int(v) for v in rng.integers(1, 7, size=2))
        c1 = random_certificate(rng, k, m, n, cfg.alpha)
        c2 = random_certificate(rng, k, m, int(rng.integers(1, n + 1)), cfg.alpha)
        R = rng.standard_normal((m2, m)) + 1j * rng.standard_normal((m2, m))
        S = rng.standard_normal((k, k2)) + 1j * rng.standard_normal((k, k2))
        for c in [c1, c2, *_closure(c1, c2, R, S)]:
            r = residual(c)
            if r > worst:
                worst, worst_c = r, c
    return worst, worst_c


# -- report writing ----------------------------------------------------------


def _atomic_write(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _sidecar_path(out: str | None) -> str | None:
    return None if out is None else out + ".witness.json"


def render(rows: list[dict], fmt: str, extra: dict | None = None) -> str:
    rows = sorted(rows, key=lambda r: (r["dim"], r["constant_name"]))
    if fmt == "json":
        doc = {"rows": rows, **(extra or {})}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow({**r, "alpha": repr(r["alpha"]), "estimate": repr(r["estimate"])})
    return buf.getvalue()


def _row(cfg, dim, constant_name, estimate, ref, stamp, trials=None):
    return {
        "command": cfg.command,
        "alpha": float(cfg.alpha),
        "dim": int(dim),
        "trials": int(cfg.trials if trials is None else trials),
        "seed": int(cfg.seed),
        "family_set": "|".join(cfg.families),
        "constant_name": constant_name,
        "estimate": float(estimate),
        "witness_ref": ref,
        "timestamp": stamp,
    }


def run(cfg: ExperimentConfig, stdout=None) -> int:
    """Execute one experiment and write its report; returns the exit status."""
    stdout = stdout or sys.stdout
    stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    sidecar_path = _sidecar_path(cfg.out)
    sidecar_name = os.path.basename(sidecar_path) if sidecar_path else "-"
    rows, witnesses, extra = [], {}, {}
    status = EXIT_OK

    def ref(key):
        return f"{sidecar_name}#{key}"

    if cfg.command == "pelczynski":
        path = cfg.input or resources.files("zalpha").joinpath("data/pelczynski_standard.json")
        try:
            axioms, goal = pz.load_axiom_file(path)
        except (OSError, ValueError, KeyError) as exc:
            raise ConfigError(f"cannot read axiom file: {exc}") from exc
        if goal is None:
            raise ConfigError("axiom file has no goal")
        result = pz.derive(axioms, goal, cfg.budget)
        if not result:
            print(
                f"derivation failed: expanded {result.expanded}, frontier {result.frontier_size}",
                file=sys.stderr,
            )
            return EXIT_DERIVATION
        key = "pelczynski/witness"
        witness_doc = {
            "axioms": [pz.axiom_to_json(a) for a in axioms],
            "goal": [pz.expr_to_json(goal[0]), pz.expr_to_json(goal[1])],
            "witness": pz.witness_to_json(result),
        }
        witnesses[key] = witness_doc
        extra = witness_doc
        rows.append(_row(cfg, 0, "witness_steps", len(pz.steps(result)), ref(key), stamp, trials=cfg.budget))
    elif cfg.command == "certify":
        if cfg.input:
            try:
                with open(cfg.input) as fh:
                    cert = FactorizationCertificate.from_json(json.load(fh))
            except (OSError, ValueError, KeyError) as exc:
                raise ConfigError(f"cannot read certificate: {exc}") from exc
            rng = trial_rng(cfg.seed, 0)
            k, m = cert.domain_dim, cert.codomain_dim
            R = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
            S = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
            ok = verify_certificate(cert)
            worst = max([cert, *_closure(cert, cert, R, S)], key=residual)
            if not ok:
                status = EXIT_UNVERIFIED
            key = f"certify/{cert.zdim}/closure_residual"
            witnesses[key] = {"alpha": cert.alpha, "constant_name": "closure_residual",
                              "witness": {"certificate": worst.to_json()}}
            rows.append(_row(cfg, cert.zdim, "closure_residual", residual(worst), ref(key), stamp, trials=1))
        else:
            for n in cfg.dims:
                worst, c = _certify_random(cfg, n)
                key = f"certify/{n}/closure_residual"
                witnesses[key] = {"alpha": cfg.alpha, "constant_name": "closure_residual",
                                  "witness": {"certificate": c.to_json()}}
                rows.append(_row(cfg, n, "closure_residual", worst, ref(key), stamp))
                if worst > 1e-9:
                    status = EXIT_UNVERIFIED
    else:
        for n in cfg.dims:
            for rep in _estimate(cfg, n):
                key = f"{cfg.command}/{n}/{rep.constant_name}"
                witnesses[key] = {"alpha": rep.alpha, "constant_name": rep.constant_name,
                                  "witness": rep.witness_json()}
                rows.append(_row(cfg, n, rep.constant_name, rep.estimate, ref(key), stamp))

    report = render(rows, cfg.format, extra if cfg.format == "json" else None)
    side = json.dumps(witnesses, indent=1, sort_keys=True) + "\n"
    if cfg.out is None:
        stdout.write(report)
    else:
        _atomic_write(sidecar_path, side)
        _atomic_write(cfg.out, report)
    return status


# -- argument parsing --------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma list of integers: {text!r}")


def _families(text: str) -> tuple:
    return tuple(v.strip() for v in text.split(",") if v.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="zalpha", description="Z_alpha experiments")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for cmd in COMMANDS:
        p = sub.add_parser(cmd)
        p.add_argument("--alpha", type=float, default=1.0)
        p.add_argument("--dims", type=_int_list, default=[16])
        p.add_argument("--trials", type=int, default=1000)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--families", type=_families, default=FAMILIES)
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--out", default=None)
        if cmd == "pelczynski":
            p.add_argument("--budget", type=int, default=10_000)
            p.add_argument("input", nargs="?", help="axiom file (JSON); default: the standard instance")
        if cmd == "certify":
            p.add_argument("input", nargs="?", help="certificate JSON; default: random certificates")
    return parser


def parse_config(argv) -> ExperimentConfig:
    ns = build_parser().parse_args(argv)
    return ExperimentConfig(
        command=ns.command,
        alpha=ns.alpha,
        dims=ns.dims,
        trials=ns.trials,
        seed=ns.seed,
        families=ns.families,
        format=ns.format,
        out=ns.out,
        budget=getattr(ns, "budget", 10_000),
        input=getattr(ns, "input", None),
    )


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        return run(cfg)
    except ConfigError as exc:
        print(f"zalpha: error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
