"""
Exponential phase operators and their cosine/sine combinations.

Three families are built:

* Susskind-Glogower (one-sided): the direct shift sums, a N^{-1/2} /
  N^{1/2} a^{-1}, and a_dag^{-1} N^{1/2} / N^{-1/2} a_dag.
* Unitary (two-sided): the direct shift on the lattice (with a wrap
  entry in cyclic mode) and a_dag^{-1}|N^{1/2}| / |N^{1/2}| a^{-1}.
* Measured (one-sided): 2k a_dag^{-1} / 2k a^{-1} with a scalar k fixed
  by the photon number of the state the pair is used with.

cos = (plus + minus)/2 and sin = (plus - minus)/(2i) for every family.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Optional

import numpy as np

sys.path.append(str(Path(__file__).parent.parent))
from src.exceptions import ContractError, DomainError
from src.fock_core import FockBasis, Op, adjoint, compose, residual_norm
from src.ladder_ops import Ladder, build_extended_inverse, ladder
from src.logger import setup_logger

logger = setup_logger("phase_ops")


class Family(Enum):
    SG_DIRECT = "sg"
    SG_FROM_ANNIHILATION = "sg-annihilation"
    SG_FROM_CREATION = "sg-creation"
    UNITARY_DIRECT = "unitary"
    UNITARY_FROM_INVERSES = "unitary-inverses"
    MEASURED = "measured"


class KConvention(Enum):
    CLOSED_FORM = "paper"
    NORMALIZED = "normalized"


SG_FAMILIES = frozenset({Family.SG_DIRECT, Family.SG_FROM_ANNIHILATION, Family.SG_FROM_CREATION})
UNITARY_FAMILIES = frozenset({Family.UNITARY_DIRECT, Family.UNITARY_FROM_INVERSES})


@dataclass(frozen=True)
class PhaseFamily:
    family: Family
    k_convention: Optional[KConvention] = None

    def __post_init__(self):
        if self.family is Family.MEASURED and self.k_convention is None:
            object.__setattr__(self, "k_convention", KConvention.CLOSED_FORM)
        if self.family is not Family.MEASURED and self.k_convention is not None:
            raise ContractError(f"k convention only applies to the measured family, not {self.family.value}")

    @property
    def needs_one_sided(self) -> bool:
        return self.family not in UNITARY_FAMILIES

    def check_basis(self, basis: FockBasis):
        if self.needs_one_sided != basis.is_one_sided:
            wanted = "one-sided" if self.needs_one_sided else "two-sided"
            raise ContractError(
                f"{self.family.value} phase operators need a {wanted} basis, got {basis.describe()}"
            )

    def label(self) -> str:
        if self.family is Family.MEASURED:
            return f"{self.family.value}/{self.k_convention.value}"
        return self.family.value


@dataclass(frozen=True)
class ExpPhasePair:
    """e^{+i phi} (plus) and e^{-i phi} (minus) members of one family."""

    plus: Op
    minus: Op
    family: PhaseFamily
    k: Optional[float] = None

    @property
    def basis(self) -> FockBasis:
        return self.plus.basis

    def adjoint_residual(self) -> float:
        """How far minus is from adjoint(plus); measured, not assumed."""
        return residual_norm(self.minus, adjoint(self.plus))


def sg_pair(basis: FockBasis, construction: Family = Family.SG_DIRECT) -> ExpPhasePair:
    """Susskind-Glogower exponential phase operators."""
    family = PhaseFamily(construction)
    if construction not in SG_FAMILIES:
        raise ContractError(f"{construction.value} is not a Susskind-Glogower construction")
    family.check_basis(basis)

    if construction is Family.SG_DIRECT:
        # sum |n><n+1| and sum |n+1><n|
        plus = Op(basis, np.eye(basis.dim, k=1, dtype=complex))
        minus = Op(basis, np.eye(basis.dim, k=-1, dtype=complex))
    elif construction is Family.SG_FROM_ANNIHILATION:
        plus = compose(ladder(basis, Ladder.ANNIHILATE), ladder(basis, Ladder.INV_SQRT_NUMBER))
        minus = compose(ladder(basis, Ladder.SQRT_NUMBER), ladder(basis, Ladder.INV_ANNIHILATE))
    else:
        plus = compose(ladder(basis, Ladder.INV_CREATE), ladder(basis, Ladder.SQRT_NUMBER))
        minus = compose(ladder(basis, Ladder.INV_SQRT_NUMBER), ladder(basis, Ladder.CREATE))

    logger.debug(f"Built {construction.value} pair on {basis.describe()}")
    return ExpPhasePair(plus, minus, family)


def unitary_pair(basis: FockBasis, construction: Family = Family.UNITARY_DIRECT) -> ExpPhasePair:
    """Unitary exponential phase operators on the two-sided lattice."""
    family = PhaseFamily(construction)
    if construction not in UNITARY_FAMILIES:
        raise ContractError(f"{construction.value} is not a unitary construction")
    family.check_basis(basis)

    if construction is Family.UNITARY_DIRECT:
        mat = np.eye(basis.dim, k=1, dtype=complex)
        if basis.is_cyclic:
            # <+M| e^{i phi} |-M> = 1 closes the ring
            mat[basis.dim - 1, 0] = 1.0
        plus = Op(basis, mat)
        minus = adjoint(plus)
    else:
        amplitude = ladder(basis, Ladder.ABS_SQRT_NUMBER)
        plus = compose(build_extended_inverse(basis, Ladder.INV_CREATE), amplitude)
        minus = compose(amplitude, build_extended_inverse(basis, Ladder.INV_ANNIHILATE))

    logger.debug(f"Built {construction.value} pair on {basis.describe()}")
    return ExpPhasePair(plus, minus, family)


def _measured_diagonal(n: int) -> float:
    """<n| a_dag^-1 a^-1 + a^-1 a_dag^-1 |n>, evaluated by dense products."""
    basis = FockBasis.one_sided(max(n + 2, 4))
    inv_a = ladder(basis, Ladder.INV_ANNIHILATE)
    inv_a_dag = ladder(basis, Ladder.INV_CREATE)
    both = compose(inv_a_dag, inv_a) + compose(inv_a, inv_a_dag)
    return float(both.element(n, n).real)


def k_of_n(n: int, k_convention: KConvention = KConvention.CLOSED_FORM) -> float:
    """State-dependent scale of the measured phase operators.

    CLOSED_FORM is k = (1/2) sqrt(n(n+1)) / (n + 1/2). NORMALIZED is the value
    for which <n|cos^2 + sin^2|n> = 2 k^2 <n|a_dag^-1 a^-1 + a^-1 a_dag^-1|n>
    equals 1.
    """
    if n < 0:
        raise DomainError(f"photon number must be >= 0, got {n}")
    if k_convention is KConvention.CLOSED_FORM:
        return 0.5 * math.sqrt(n * (n + 1)) / (n + 0.5)

    diagonal = _measured_diagonal(n)
    if diagonal <= 0.0:
        logger.warning(f"No finite normalized k at n={n}; using 0")
        return 0.0
    return 1.0 / math.sqrt(2.0 * diagonal)


def measured_pair(
    basis: FockBasis,
    k_convention: KConvention = KConvention.CLOSED_FORM,
    n_context: int = 0,
) -> ExpPhasePair:
    """Measured phase pair 2k a_dag^-1, 2k a^-1 for expectations in |n_context>."""
    family = PhaseFamily(Family.MEASURED, k_convention)
    family.check_basis(basis)
    if not 0 <= n_context < basis.dim - 1:
        raise DomainError(
            f"n_context must lie in 0..{basis.dim - 2} for {basis.describe()}, got {n_context}"
        )

    k = k_of_n(n_context, k_convention)
    plus = ladder(basis, Ladder.INV_CREATE) * (2.0 * k)
    minus = ladder(basis, Ladder.INV_ANNIHILATE) * (2.0 * k)
    logger.debug(f"Built measured pair (k={k:.6f}, n_context={n_context}) on {basis.describe()}")
    return ExpPhasePair(plus, minus, family, k=k)


def build_pair(family: PhaseFamily, basis: FockBasis, n_context: int = 0) -> ExpPhasePair:
    """Dispatch to the constructor for any family."""
    if family.family in SG_FAMILIES:
        return sg_pair(basis, family.family)
    if family.family in UNITARY_FAMILIES:
        return unitary_pair(basis, family.family)
    return measured_pair(basis, family.k_convention, n_context)


def cosine(pair: ExpPhasePair) -> Op:
    return (pair.plus + pair.minus) * 0.5


def sine(pair: ExpPhasePair) -> Op:
    return (pair.plus - pair.minus) / 2j
