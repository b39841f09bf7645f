"""
Number, coherent, squeezed-vacuum and squeezed-coherent kets on a
one-sided Fock basis.

Squeeze convention: S(xi) = exp((xi* a^2 - xi a_dag^2) / 2), xi = r e^{i theta},
so S(xi)|0> is annihilated by cosh(r) a + e^{i theta} sinh(r) a_dag.
Squeezed coherent states are S(xi) D(alpha)|0> (displace first, then squeeze).
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional

import numpy as np
from scipy.linalg import expm

sys.path.append(str(Path(__file__).parent.parent))
from config import Config
from src.exceptions import ContractError, DomainError, TruncationError
from src.fock_core import FockBasis, Ket
from src.ladder_ops import Ladder, ladder
from src.logger import setup_logger

logger = setup_logger("states")

NORM_TOL = 1e-10


class StateKind(Enum):
    NUMBER = "number"
    COHERENT = "coherent"
    SQUEEZED_VACUUM = "squeezed-vacuum"
    SQUEEZED_COHERENT = "squeezed-coherent"


@dataclass(frozen=True)
class StateSpec:
    kind: StateKind
    basis: FockBasis
    n: int = 0
    alpha: complex = 0j
    r: float = 0.0
    theta: float = 0.0

    def __post_init__(self):
        if not self.basis.is_one_sided:
            raise ContractError(f"states are prepared on one-sided bases, got {self.basis.describe()}")
        if self.r < 0:
            raise DomainError(f"squeeze parameter r must be >= 0, got {self.r}")
        if self.kind is StateKind.NUMBER and self.n < 0:
            raise DomainError(f"photon number must be >= 0, got {self.n}")

    def describe(self) -> str:
        if self.kind is StateKind.NUMBER:
            return f"|{self.n}>"
        if self.kind is StateKind.COHERENT:
            return f"coherent(alpha={self.alpha})"
        if self.kind is StateKind.SQUEEZED_VACUUM:
            return f"squeezed vacuum(r={self.r}, theta={self.theta})"
        return f"squeezed coherent(alpha={self.alpha}, r={self.r}, theta={self.theta})"


def coherent_amplitudes(alpha: complex, dim: int) -> np.ndarray:
    """e^{-|alpha|^2/2} alpha^n / sqrt(n!) for n < dim, by recurrence."""
    ratios = np.ones(dim, dtype=complex)
    ratios[1:] = alpha / np.sqrt(np.arange(1, dim))
    return np.exp(-abs(alpha) ** 2 / 2.0) * np.cumprod(ratios)


def squeezed_vacuum_amplitudes(r: float, theta: float, dim: int) -> np.ndarray:
    """Closed form: c_{2m} = (-e^{i theta} tanh r)^m sqrt((2m)!) / (2^m m! sqrt(cosh r))."""
    amps = np.zeros(dim, dtype=complex)
    m = np.arange(1, (dim - 1) // 2 + 1)
    ratios = np.ones(len(m) + 1, dtype=complex)
    ratios[1:] = -np.exp(1j * theta) * np.tanh(r) * np.sqrt((2 * m - 1) / (2 * m))
    amps[0::2] = np.cumprod(ratios) / np.sqrt(np.cosh(r))
    return amps


def squeeze_generator(basis: FockBasis, r: float, theta: float) -> np.ndarray:
    xi = r * np.exp(1j * theta)
    a = ladder(basis, Ladder.ANNIHILATE).mat
    a_dag = ladder(basis, Ladder.CREATE).mat
    return 0.5 * (np.conj(xi) * (a @ a) - xi * (a_dag @ a_dag))


def displace_generator(basis: FockBasis, alpha: complex) -> np.ndarray:
    a = ladder(basis, Ladder.ANNIHILATE).mat
    a_dag = ladder(basis, Ladder.CREATE).mat
    return alpha * a_dag - np.conj(alpha) * a


def exponential_amplitudes(
    dim: int,
    alpha: complex = 0j,
    r: float = 0.0,
    theta: float = 0.0,
    pad: Optional[int] = None,
) -> np.ndarray:
    """S(xi) D(alpha)|0> via scipy's scaling-and-squaring expm.

    Evaluated on a basis `pad` times larger and cropped to `dim`, so the
    returned amplitudes carry no truncation artifact of their own.
    """
    pad = pad or Config.ORACLE_PAD
    big = FockBasis.one_sided(max(dim * pad, dim + 8))
    vacuum = np.zeros(big.dim, dtype=complex)
    vacuum[0] = 1.0
    state = vacuum
    if alpha != 0:
        state = expm(displace_generator(big, alpha)) @ state
    if r != 0:
        state = expm(squeeze_generator(big, r, theta)) @ state
    return state[:dim]


def _raw_amplitudes(spec: StateSpec, dim: int) -> np.ndarray:
    if spec.kind is StateKind.NUMBER:
        amps = np.zeros(dim, dtype=complex)
        if spec.n < dim:
            amps[spec.n] = 1.0
        return amps
    if spec.kind is StateKind.COHERENT:
        return coherent_amplitudes(spec.alpha, dim)
    if spec.kind is StateKind.SQUEEZED_VACUUM:
        return squeezed_vacuum_amplitudes(spec.r, spec.theta, dim)
    return exponential_amplitudes(dim, spec.alpha, spec.r, spec.theta)


def required_dim(spec: StateSpec, min_norm: Optional[float] = None, limit: int = 512) -> int:
    """Smallest one-sided dimension whose truncated norm reaches min_norm."""
    min_norm = Config.MIN_PREP_NORM if min_norm is None else min_norm
    if spec.kind is StateKind.NUMBER:
        return max(spec.n + 1, 4)
    dim = max(spec.basis.dim, 4)
    while dim <= limit:
        # the squeezed-coherent oracle is exact only well inside its padded basis
        cumulative = np.sqrt(np.cumsum(np.abs(_raw_amplitudes(spec, 2 * dim)) ** 2))
        hits = np.nonzero(cumulative >= min_norm)[0]
        if len(hits):
            return max(int(hits[0]) + 1, 4)
        dim *= 2
    raise DomainError(f"{spec.describe()} needs more than {limit} basis states")


def prepare(spec: StateSpec) -> Ket:
    """Normalized ket for `spec`; raises TruncationError when the basis is too small."""
    dim = spec.basis.dim
    if spec.kind is StateKind.NUMBER and spec.n >= dim:
        raise TruncationError(
            f"number state |{spec.n}> does not fit in {spec.basis.describe()}",
            required_dim=max(spec.n + 1, 4),
        )

    amps = _raw_amplitudes(spec, dim)
    norm = float(np.linalg.norm(amps))
    if norm < Config.MIN_PREP_NORM:
        raise TruncationError(
            f"{spec.describe()} keeps norm {norm:.6f} < {Config.MIN_PREP_NORM} "
            f"in {spec.basis.describe()}",
            required_dim=required_dim(spec),
        )
    if norm < 1.0 - 1e-6:
        logger.warning(f"{spec.describe()} loses {1.0 - norm:.2e} of its norm to truncation")

    ket = Ket(spec.basis, amps / norm)
    if abs(ket.norm() - 1.0) > NORM_TOL:
        raise DomainError(f"normalization of {spec.describe()} failed (norm {ket.norm()})")
    logger.debug(f"Prepared {spec.describe()} on {spec.basis.describe()}")
    return ket


def bogoliubov_residual(ket: Ket, r: float, theta: float) -> float:
    """Norm of (cosh r a + e^{i theta} sinh r a_dag)|ket> on rows 0..D-3."""
    basis = ket.basis
    if not basis.is_one_sided:
        raise ContractError(f"Bogoliubov check needs a one-sided basis, got {basis.describe()}")
    a = ladder(basis, Ladder.ANNIHILATE).mat
    a_dag = ladder(basis, Ladder.CREATE).mat
    b = np.cosh(r) * a + np.exp(1j * theta) * np.sinh(r) * a_dag
    image = b @ ket.amps
    return float(np.linalg.norm(image[: basis.dim - 2]))
