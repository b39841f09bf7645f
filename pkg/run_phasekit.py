#!/usr/bin/env python3
"""
Command-line front end: verify → trig → stats → dist

    python run_phasekit.py verify --dim 16
    python run_phasekit.py trig --family sg --dim 16 --n 0..6
    python run_phasekit.py trig --family measured --k paper --n 1..8
    python run_phasekit.py stats --family sg --alpha-re 4 --dim 64
    python run_phasekit.py dist --r 0.8 --bins 128 --format csv --out data/dist.csv

Exit codes: 0 success, 1 a gating identity failed, 2 usage error.
"""

import argparse
import sys
from dataclasses import asdict, dataclass
from typing import List, Optional, Tuple

from config import Config
from report import FORMATS, ReportWriter
from src import __version__
from src.analysis import (
    BasisParams,
    gating_failures,
    integrate_density,
    phase_distribution,
    phase_statistics,
    trig_sum_table,
    verify_all,
)
from src.exceptions import PhaseKitError
from src.fock_core import Boundary, FockBasis
from src.logger import setup_logger
from src.phase_ops import Family, KConvention, PhaseFamily, UNITARY_FAMILIES
from src.states import StateKind, StateSpec, prepare

logger = setup_logger("cli")

EXIT_OK = 0
EXIT_IDENTITY_FAILURE = 1
EXIT_USAGE = 2

COMMANDS = ("verify", "trig", "stats", "dist")


class UsageError(PhaseKitError):
    """Invalid flag combination."""


@dataclass(frozen=True)
class RunConfig:
    command: str
    dim: int = Config.DIM
    half_width: int = Config.HALF_WIDTH
    boundary: str = Config.BOUNDARY
    family: Optional[str] = None
    k: Optional[str] = None
    state: Optional[str] = None
    alpha_re: float = 0.0
    alpha_im: float = 0.0
    r: float = 0.0
    theta: float = 0.0
    n: Optional[str] = None
    tol_identity: float = Config.TOL_IDENTITY
    tol_quadrature: float = Config.TOL_QUADRATURE
    bins: int = Config.BINS
    format: str = Config.OUTPUT_FORMAT
    out: Optional[str] = None

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.dim < 4:
            raise UsageError(f"--dim must be >= 4, got {self.dim}")
        if self.half_width < 2:
            raise UsageError(f"--half-width must be >= 2, got {self.half_width}")
        if self.tol_identity <= 0 or self.tol_quadrature <= 0:
            raise UsageError("tolerances must be > 0")
        if self.format not in FORMATS:
            raise UsageError(f"--format must be one of {FORMATS}")
        if self.k is not None and self.family != Family.MEASURED.value:
            raise UsageError("--k only applies to --family measured")

    def params(self) -> BasisParams:
        return BasisParams(self.dim, self.half_width, Boundary(self.boundary))

    def phase_family(self, default: Family) -> PhaseFamily:
        family = Family(self.family) if self.family else default
        if family is Family.MEASURED:
            return PhaseFamily(family, KConvention(self.k or KConvention.CLOSED_FORM.value))
        return PhaseFamily(family)

    def meta(self) -> dict:
        config = asdict(self)
        config.pop("out")
        return {"version": __version__, "config": config}


def parse_n_range(text: Optional[str]) -> Optional[List[int]]:
    """'5' -> [5]; '-3..3' -> [-3, ..., 3]."""
    if text is None:
        return None
    try:
        if ".." in text:
            lo, hi = (int(part) for part in text.split("..", 1))
            if hi < lo:
                raise UsageError(f"--n range {text!r} is empty")
            return list(range(lo, hi + 1))
        return [int(text)]
    except ValueError:
        raise UsageError(f"--n expects an integer or lo..hi, got {text!r}") from None


def state_spec(config: RunConfig) -> StateSpec:
    """Explicit --state, or inferred from which parameters are set."""
    alpha = complex(config.alpha_re, config.alpha_im)
    if config.state:
        kind = StateKind(config.state)
    elif config.r > 0:
        kind = StateKind.SQUEEZED_COHERENT if alpha != 0 else StateKind.SQUEEZED_VACUUM
    elif alpha != 0:
        kind = StateKind.COHERENT
    else:
        kind = StateKind.NUMBER

    n = 0
    if kind is StateKind.NUMBER:
        values = parse_n_range(config.n) or [0]
        if len(values) != 1:
            raise UsageError("a number state needs a single --n value")
        n = values[0]
    return StateSpec(kind, FockBasis.one_sided(config.dim), n=n, alpha=alpha, r=config.r, theta=config.theta)


def run_verify(config: RunConfig) -> Tuple[int, List[dict]]:
    family = config.phase_family(Family.UNITARY_DIRECT)
    if family.family not in UNITARY_FAMILIES:
        raise UsageError("verify selects the unitary construction: --family unitary or unitary-inverses")
    reports = verify_all(config.params(), family.family, config.tol_identity)
    failures = gating_failures(reports)
    for report in failures:
        logger.error(f"✗ {report.name} failed (interior residual {report.residual_interior:.3e})")
    status = EXIT_IDENTITY_FAILURE if failures else EXIT_OK
    return status, [r.to_dict() for r in reports]


def run_trig(config: RunConfig) -> Tuple[int, List[dict]]:
    family = config.phase_family(Family.SG_DIRECT)
    rows = trig_sum_table(family, config.params(), parse_n_range(config.n), config.tol_identity)
    return EXIT_OK, [row.to_dict() for row in rows]


def run_stats(config: RunConfig) -> Tuple[int, List[dict]]:
    family = config.phase_family(Family.SG_DIRECT)
    if family.family in UNITARY_FAMILIES:
        raise UsageError("stats prepares one-sided states; unitary families do not apply")
    ket = prepare(state_spec(config))
    return EXIT_OK, [phase_statistics(family, ket).to_dict()]


def run_dist(config: RunConfig) -> Tuple[int, List[dict]]:
    if config.bins < 4:
        raise UsageError(f"--bins must be >= 4, got {config.bins}")
    ket = prepare(state_spec(config))
    samples = phase_distribution(ket, config.bins)
    integral = integrate_density(samples)
    if abs(integral - 1.0) > config.tol_quadrature:
        logger.warning(f"Phase density integrates to {integral:.9f}")
    return EXIT_OK, [{"phi": phi, "density": density} for phi, density in samples]


HANDLERS = {
    "verify": run_verify,
    "trig": run_trig,
    "stats": run_stats,
    "dist": run_dist,
}


def run(config: RunConfig) -> Tuple[int, str]:
    """Execute one command; returns (exit status, serialized report)."""
    config.validate()
    logger.info(f"Running {config.command} (phasekit {__version__})")
    status, results = HANDLERS[config.command](config)
    text = ReportWriter(config.format).render(config.meta(), results)
    logger.info(f"{config.command} produced {len(results)} records (exit {status})")
    return status, text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Inverse-operator quantum phase toolkit")
    parser.add_argument("command", choices=COMMANDS, help="What to compute")
    parser.add_argument("--dim", type=int, default=Config.DIM, help=f"One-sided dimension D (default: {Config.DIM})")
    parser.add_argument("--half-width", type=int, default=Config.HALF_WIDTH,
                        help=f"Two-sided half width M (default: {Config.HALF_WIDTH})")
    parser.add_argument("--boundary", choices=[b.value for b in Boundary], default=Config.BOUNDARY,
                        help=f"Two-sided boundary mode (default: {Config.BOUNDARY})")
    parser.add_argument("--family", choices=[f.value for f in Family], help="Phase-operator family")
    parser.add_argument("--k", choices=[k.value for k in KConvention], help="Measured-phase k convention")
    parser.add_argument("--state", choices=[s.value for s in StateKind],
                        help="State kind (default: inferred from --alpha-*/--r)")
    parser.add_argument("--alpha-re", type=float, default=0.0, help="Coherent amplitude, real part")
    parser.add_argument("--alpha-im", type=float, default=0.0, help="Coherent amplitude, imaginary part")
    parser.add_argument("--r", type=float, default=0.0, help="Squeeze parameter r >= 0")
    parser.add_argument("--theta", type=float, default=0.0, help="Squeeze phase (radians)")
    parser.add_argument("--n", type=str, help="Photon number or inclusive range lo..hi")
    parser.add_argument("--tol-identity", type=float, default=Config.TOL_IDENTITY)
    parser.add_argument("--tol-quadrature", type=float, default=Config.TOL_QUADRATURE)
    parser.add_argument("--bins", type=int, default=Config.BINS)
    parser.add_argument("--format", choices=FORMATS, default=Config.OUTPUT_FORMAT)
    parser.add_argument("--out", type=str, help="Output path (default: stdout)")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = RunConfig(**vars(args))

    try:
        status, text = run(config)
    except PhaseKitError as e:
        logger.error(f"✗ {e}")
        return EXIT_USAGE

    ReportWriter(config.format).write(text, config.out)
    return status


if __name__ == "__main__":
    sys.exit(main())
