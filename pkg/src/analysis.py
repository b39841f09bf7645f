"""
Identity verification and phase statistics.

Every identity is checked twice: over the full finite matrix and over
the interior window (top two one-sided labels removed; one label per
edge removed on truncated two-sided lattices). A failed identity is a
report entry, never an exception.
"""

from __future__ import annotations

import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import trapezoid

sys.path.append(str(Path(__file__).parent.parent))
from config import Config
from src.exceptions import ContractError, DomainError
from src.fock_core import (
    Boundary,
    FockBasis,
    Ket,
    Op,
    compose,
    expectation,
    number_state,
    residual_matrix,
    rows_for_labels,
)
from src.ladder_ops import Ladder, ladder
from src.logger import setup_logger
from src.phase_ops import (
    Family,
    PhaseFamily,
    UNITARY_FAMILIES,
    build_pair,
    cosine,
    sg_pair,
    sine,
    unitary_pair,
)

logger = setup_logger("analysis")

MIN_BINS = 4
POSITIVITY_SLACK = 1e-12


@dataclass(frozen=True)
class BasisParams:
    dim: int = Config.DIM
    half_width: int = Config.HALF_WIDTH
    boundary: Boundary = Boundary(Config.BOUNDARY)

    def one_sided(self) -> FockBasis:
        return FockBasis.one_sided(self.dim)

    def two_sided(self) -> FockBasis:
        return FockBasis.two_sided(self.half_width, self.boundary)

    def basis_for(self, family: PhaseFamily) -> FockBasis:
        return self.one_sided() if family.needs_one_sided else self.two_sided()


@dataclass
class IdentityReport:
    name: str
    statement: str
    construction: str
    residual_full: float
    residual_interior: float
    excluded_rows: List[int]
    failing_labels: List[int]
    passed: bool
    gating: bool

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class TrigStats:
    family: str
    n: int
    cos_sq: float
    sin_sq: float
    sum: float
    claim_holds: bool
    k: Optional[float] = None

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class PhaseStatistics:
    family: str
    mean_cos: float
    mean_sin: float
    var_cos: float
    var_sin: float
    trig_sum: float
    n_context: Optional[int] = None

    def to_dict(self) -> dict:
        return asdict(self)


def interior_exclusions(basis: FockBasis) -> List[int]:
    """Lattice labels left out of interior comparisons."""
    if basis.is_one_sided:
        return [basis.dim - 2, basis.dim - 1]
    if basis.boundary is Boundary.TRUNCATED:
        return [basis.min_label, basis.max_label]
    return []


def _failing_labels(basis: FockBasis, diff_interior: np.ndarray, keep: np.ndarray, tol: float) -> set:
    if diff_interior.size == 0:
        return set()
    column_max = diff_interior.max(axis=0)
    return {basis.label_of(int(keep[i])) for i in np.nonzero(column_max > tol)[0]}


def compare(
    name: str,
    statement: str,
    pairs: Sequence[Tuple[Op, Op]],
    tol: float,
    gating: bool,
    construction: str,
) -> IdentityReport:
    """Build one report from (lhs, rhs) pairs; residuals are maxima over the pairs."""
    basis = pairs[0][0].basis
    excluded = interior_exclusions(basis)
    excluded_rows = rows_for_labels(basis, excluded)
    keep = np.setdiff1d(np.arange(basis.dim), excluded_rows)

    residual_full = 0.0
    residual_interior = 0.0
    failing = set()
    for lhs, rhs in pairs:
        residual_full = max(residual_full, float(np.max(residual_matrix(lhs, rhs), initial=0.0)))
        diff = residual_matrix(lhs, rhs, excluded_rows)
        residual_interior = max(residual_interior, float(np.max(diff, initial=0.0)))
        failing |= _failing_labels(basis, diff, keep, tol)

    report = IdentityReport(
        name=name,
        statement=statement,
        construction=construction,
        residual_full=residual_full,
        residual_interior=residual_interior,
        excluded_rows=sorted(excluded),
        failing_labels=sorted(failing),
        passed=residual_interior <= tol,
        gating=gating,
    )
    if report.passed:
        logger.debug(f"✓ {name}: interior residual {residual_interior:.3e}")
    else:
        logger.warning(f"✗ {name}: interior residual {residual_interior:.3e} at labels {report.failing_labels}")
    return report


def _one_sided_reports(basis: FockBasis, tol: float) -> List[IdentityReport]:
    def op(which: Ladder) -> Op:
        return ladder(basis, which)

    def chain(*ops: Op) -> Op:
        result = ops[0]
        for nxt in ops[1:]:
            result = compose(result, nxt)
        return result

    a, a_dag = op(Ladder.ANNIHILATE), op(Ladder.CREATE)
    a_inv, a_dag_inv = op(Ladder.INV_ANNIHILATE), op(Ladder.INV_CREATE)
    sqrt_n, inv_sqrt_n = op(Ladder.SQRT_NUMBER), op(Ladder.INV_SQRT_NUMBER)
    eye = op(Ladder.IDENTITY)
    no_vacuum = eye - op(Ladder.VACUUM_PROJECTOR)

    direct = sg_pair(basis, Family.SG_DIRECT)
    from_a = sg_pair(basis, Family.SG_FROM_ANNIHILATION)
    from_a_dag = sg_pair(basis, Family.SG_FROM_CREATION)

    return [
        compare("ladder-right-inverse", "a a^-1 = a_dag^-1 a_dag = I",
                [(compose(a, a_inv), eye), (compose(a_dag_inv, a_dag), eye)],
                tol, True, "ladder"),
        compare("ladder-left-inverse", "a^-1 a = a_dag a_dag^-1 = I - |0><0|",
                [(compose(a_inv, a), no_vacuum), (compose(a_dag, a_dag_inv), no_vacuum)],
                tol, False, "ladder"),
        compare("sg-plus-minus", "e_s^{i phi} e_s^{-i phi} = I",
                [(compose(direct.plus, direct.minus), eye)],
                tol, True, Family.SG_DIRECT.value),
        compare("sg-minus-plus", "e_s^{-i phi} e_s^{i phi} = I - |0><0|",
                [(compose(direct.minus, direct.plus), no_vacuum)],
                tol, True, Family.SG_DIRECT.value),
        compare("sg-annihilation-right", "a N^-1/2 N^1/2 a^-1 = I",
                [(chain(a, inv_sqrt_n, sqrt_n, a_inv), eye)],
                tol, True, Family.SG_FROM_ANNIHILATION.value),
        compare("sg-annihilation-left", "N^1/2 a^-1 a N^-1/2 = I - |0><0|",
                [(chain(sqrt_n, a_inv, a, inv_sqrt_n), no_vacuum)],
                tol, True, Family.SG_FROM_ANNIHILATION.value),
        compare("sg-creation-right", "a_dag^-1 N^1/2 N^-1/2 a_dag = I",
                [(chain(a_dag_inv, sqrt_n, inv_sqrt_n, a_dag), eye)],
                tol, True, Family.SG_FROM_CREATION.value),
        compare("sg-creation-left", "N^-1/2 a_dag a_dag^-1 N^1/2 = I - |0><0|",
                [(chain(inv_sqrt_n, a_dag, a_dag_inv, sqrt_n), no_vacuum)],
                tol, True, Family.SG_FROM_CREATION.value),
        compare("sg-agreement", "direct = a N^-1/2 = a_dag^-1 N^1/2 (and minus members)",
                [(direct.plus, from_a.plus), (direct.plus, from_a_dag.plus),
                 (direct.minus, from_a.minus), (direct.minus, from_a_dag.minus)],
                tol, False, "sg/all"),
    ]


def _two_sided_reports(basis: FockBasis, construction: Family, tol: float) -> List[IdentityReport]:
    eye = ladder(basis, Ladder.IDENTITY)
    pair = unitary_pair(basis, construction)
    direct = pair if construction is Family.UNITARY_DIRECT else unitary_pair(basis, Family.UNITARY_DIRECT)
    inverse_form = pair if construction is Family.UNITARY_FROM_INVERSES else unitary_pair(
        basis, Family.UNITARY_FROM_INVERSES
    )
    gating = construction is Family.UNITARY_DIRECT and basis.is_cyclic

    return [
        compare("unitary-plus-minus", "e_U^{i phi} e_U^{-i phi} = I",
                [(compose(pair.plus, pair.minus), eye)],
                tol, gating, construction.value),
        compare("unitary-minus-plus", "e_U^{-i phi} e_U^{i phi} = I",
                [(compose(pair.minus, pair.plus), eye)],
                tol, gating, construction.value),
        compare("unitary-agreement", "a_dag^-1 |N^1/2| = sum |n><n+1| (and minus members)",
                [(inverse_form.plus, direct.plus), (inverse_form.minus, direct.minus)],
                tol, False, "unitary/all"),
    ]


def verify_all(
    params: Optional[BasisParams] = None,
    unitary_construction: Family = Family.UNITARY_DIRECT,
    tol: Optional[float] = None,
) -> List[IdentityReport]:
    """The twelve identity reports, in a fixed order."""
    params = params or BasisParams()
    tol = Config.TOL_IDENTITY if tol is None else tol
    if unitary_construction not in UNITARY_FAMILIES:
        raise ContractError(f"{unitary_construction.value} is not a unitary construction")

    logger.info(
        f"Verifying identities (D={params.dim}, M={params.half_width}, "
        f"{params.boundary.value}, {unitary_construction.value})"
    )
    reports = _one_sided_reports(params.one_sided(), tol)
    reports += _two_sided_reports(params.two_sided(), unitary_construction, tol)

    failed = [r.name for r in reports if not r.passed]
    logger.info(f"{len(reports) - len(failed)}/{len(reports)} identities hold on the interior")
    return reports


def gating_failures(reports: Iterable[IdentityReport]) -> List[IdentityReport]:
    return [r for r in reports if r.gating and not r.passed]


def valid_labels(family: PhaseFamily, basis: FockBasis) -> range:
    """Labels whose trig statistics are free of truncation."""
    if basis.is_one_sided:
        # the raised neighbour n+1 must still be in the basis
        return range(0, basis.dim - 1)
    if basis.is_cyclic:
        return range(basis.min_label, basis.max_label + 1)
    return range(basis.min_label + 1, basis.max_label)


def _trig_row(family: PhaseFamily, basis: FockBasis, n: int, tol: float) -> TrigStats:
    pair = build_pair(family, basis, n_context=n)
    cos, sin = cosine(pair), sine(pair)
    ket = number_state(basis, n)
    cos_sq = expectation(compose(cos, cos), ket).real
    sin_sq = expectation(compose(sin, sin), ket).real
    if min(cos_sq, sin_sq) < -POSITIVITY_SLACK:
        logger.warning(f"Negative squared expectation at n={n} for {family.label()}")
    total = cos_sq + sin_sq
    return TrigStats(
        family=family.label(),
        n=int(n),
        cos_sq=float(cos_sq),
        sin_sq=float(sin_sq),
        sum=float(total),
        claim_holds=bool(abs(total - 1.0) < tol),
        k=pair.k,
    )


def trig_sum_table(
    family: PhaseFamily,
    params: Optional[BasisParams] = None,
    n_range: Optional[Iterable[int]] = None,
    tol: Optional[float] = None,
) -> List[TrigStats]:
    """<n|cos^2|n>, <n|sin^2|n> and their sum for each n."""
    params = params or BasisParams()
    tol = Config.TOL_IDENTITY if tol is None else tol
    basis = params.basis_for(family)
    allowed = valid_labels(family, basis)
    labels = list(allowed if n_range is None else n_range)

    outside = [n for n in labels if n not in allowed]
    if outside:
        raise DomainError(
            f"n values {outside} touch the boundary of {basis.describe()}; "
            f"allowed range is {allowed.start}..{allowed.stop - 1}"
        )

    rows = [_trig_row(family, basis, n, tol) for n in labels]
    broken = [row.n for row in rows if not row.claim_holds]
    if broken:
        logger.warning(f"{family.label()}: trig sum differs from 1 at n={broken}")
    return rows


def phase_statistics(family: PhaseFamily, ket: Ket) -> PhaseStatistics:
    """Means and variances of cos/sin phase operators in `ket`."""
    family.check_basis(ket.basis)
    if ket.basis.is_one_sided:
        top_weight = float(abs(ket.amps[-1]) ** 2)
        if top_weight > Config.TOL_IDENTITY:
            logger.warning(
                f"{family.label()}: ket has weight {top_weight:.3g} on the truncated top label "
                f"{ket.basis.dim - 1}; the statistics include that column's truncation artifact"
            )
    n_context = None
    if family.family is Family.MEASURED:
        number = ladder(ket.basis, Ladder.NUMBER)
        n_context = int(round(expectation(number, ket).real))

    pair = build_pair(family, ket.basis, n_context=n_context or 0)
    cos, sin = cosine(pair), sine(pair)
    mean_cos = expectation(cos, ket).real
    mean_sin = expectation(sin, ket).real
    cos_sq = expectation(compose(cos, cos), ket).real
    sin_sq = expectation(compose(sin, sin), ket).real

    return PhaseStatistics(
        family=family.label(),
        mean_cos=float(mean_cos),
        mean_sin=float(mean_sin),
        var_cos=float(cos_sq - mean_cos ** 2),
        var_sin=float(sin_sq - mean_sin ** 2),
        trig_sum=float(cos_sq + sin_sq),
        n_context=n_context,
    )


def phase_distribution(ket: Ket, bins: int = Config.BINS) -> List[Tuple[float, float]]:
    """P(phi) = |sum_n e^{-i n phi} c_n|^2 / (2 pi) on a uniform grid over [-pi, pi)."""
    if not ket.basis.is_one_sided:
        raise ContractError(f"phase distribution needs a one-sided basis, got {ket.basis.describe()}")
    if bins < MIN_BINS:
        raise DomainError(f"bins must be >= {MIN_BINS}, got {bins}")

    phis = -np.pi + 2.0 * np.pi * np.arange(bins) / bins
    overlaps = np.exp(-1j * np.outer(phis, ket.basis.labels)) @ ket.amps
    density = np.abs(overlaps) ** 2 / (2.0 * np.pi)
    return [(float(phi), float(p)) for phi, p in zip(phis, density)]


def integrate_density(samples: Sequence[Tuple[float, float]]) -> float:
    """Trapezoid over the closed period: the phi = pi sample repeats phi = -pi."""
    phis = np.array([phi for phi, _ in samples] + [np.pi])
    density = np.array([p for _, p in samples] + [samples[0][1]])
    return float(trapezoid(density, phis))
