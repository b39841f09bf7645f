"""
Elementary ladder operators on one-sided and two-sided Fock bases.

Truncation convention: whenever an operator would map a basis state
outside the lattice, that image is dropped and the column is left zero.
Analysis reports name the affected labels instead of hiding them.

Negative labels: the amplitude operator |N^{1/2}| has entries sqrt(|n|)
and the extended inverses use weights 1/sqrt(|n|). No weight exists at
the n = 0 crossing, so those columns are zero.

Every sqrt(n) entry and its matching 1/sqrt(n) weight multiply to exactly
1.0 in floating point, so interior products such as a a^-1 are exact.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from pathlib import Path

import numpy as np

sys.path.append(str(Path(__file__).parent.parent))
from src.exceptions import ContractError
from src.fock_core import FockBasis, Op, adjoint
from src.logger import setup_logger

logger = setup_logger("ladder_ops")


class Ladder(Enum):
    ANNIHILATE = "a"
    CREATE = "a_dag"
    INV_ANNIHILATE = "a_inv"
    INV_CREATE = "a_dag_inv"
    NUMBER = "N"
    SQRT_NUMBER = "N^1/2"
    INV_SQRT_NUMBER = "N^-1/2"
    ABS_SQRT_NUMBER = "|N^1/2|"
    VACUUM_PROJECTOR = "|0><0|"
    IDENTITY = "I"


ONE_SIDED_ONLY = frozenset({Ladder.SQRT_NUMBER, Ladder.INV_SQRT_NUMBER})
TWO_SIDED_ONLY = frozenset({Ladder.ABS_SQRT_NUMBER})


@dataclass(frozen=True)
class LadderSpec:
    basis: FockBasis
    which: Ladder

    def __post_init__(self):
        if self.which in ONE_SIDED_ONLY and not self.basis.is_one_sided:
            raise ContractError(
                f"{self.which.value} is defined on one-sided bases only "
                f"(use {Ladder.ABS_SQRT_NUMBER.value} on {self.basis.describe()})"
            )
        if self.which in TWO_SIDED_ONLY and self.basis.is_one_sided:
            raise ContractError(
                f"{self.which.value} is the extended amplitude operator and needs "
                f"a two-sided basis, got {self.basis.describe()}"
            )


_STEPS = (0, 1, -1, 2, -2, 3, -3, 4, -4)


def _nudge(x: float, steps: int) -> float:
    toward = math.inf if steps > 0 else -math.inf
    for _ in range(abs(steps)):
        x = math.nextafter(x, toward)
    return x


@lru_cache(maxsize=None)
def _root_pair(v: float) -> tuple[float, float]:
    """(r, w) with r ~ sqrt(v), w ~ 1/sqrt(v) and r * w == 1.0 in floating point.

    w moves first; r leaves the correctly rounded sqrt only when no nearby
    w closes the product. Both stay within a few ulps.
    """
    base = math.sqrt(v)
    for dr in _STEPS:
        root = _nudge(base, dr)
        for dw in _STEPS:
            inv = _nudge(1.0 / root, dw)
            if root * inv == 1.0:
                return root, inv
    logger.warning(f"No exact reciprocal pair for sqrt({v}); products may be off by an ulp")
    return base, 1.0 / base


def _roots(values: np.ndarray) -> np.ndarray:
    """sqrt(|v|), consistent with _inv_sqrt."""
    return np.array([_root_pair(float(abs(v)))[0] if v != 0 else 0.0 for v in values], dtype=float)


def _inv_sqrt(values: np.ndarray) -> np.ndarray:
    """1/sqrt(|v|) with 0 where v == 0; _roots(v) * _inv_sqrt(v) == 1 entrywise."""
    return np.array([_root_pair(float(abs(v)))[1] if v != 0 else 0.0 for v in values], dtype=float)


def _lowering(basis: FockBasis, weights: np.ndarray) -> np.ndarray:
    """Matrix with <n-1|M|n> = weights[row(n)] for every n that has a lower neighbour."""
    mat = np.zeros((basis.dim, basis.dim), dtype=complex)
    cols = np.arange(1, basis.dim)
    mat[cols - 1, cols] = weights[cols]
    return mat


def _raising(basis: FockBasis, weights: np.ndarray) -> np.ndarray:
    """Matrix with <n+1|M|n> = weights[row(n)] for every n that has an upper neighbour."""
    mat = np.zeros((basis.dim, basis.dim), dtype=complex)
    cols = np.arange(0, basis.dim - 1)
    mat[cols + 1, cols] = weights[cols]
    return mat


def build(spec: LadderSpec) -> Op:
    """Matrix of one elementary operator."""
    basis, which = spec.basis, spec.which
    labels = basis.labels.astype(float)
    logger.debug(f"Building {which.value} on {basis.describe()}")

    if which is Ladder.IDENTITY:
        return Op(basis, np.eye(basis.dim, dtype=complex))
    if which is Ladder.VACUUM_PROJECTOR:
        mat = np.zeros((basis.dim, basis.dim), dtype=complex)
        zero_row = basis.index_of(0)
        mat[zero_row, zero_row] = 1.0
        return Op(basis, mat)
    if which is Ladder.NUMBER:
        return Op(basis, np.diag(labels).astype(complex))
    if which is Ladder.SQRT_NUMBER:
        return Op(basis, np.diag(_roots(labels)).astype(complex))
    if which is Ladder.INV_SQRT_NUMBER:
        return Op(basis, np.diag(_inv_sqrt(labels)).astype(complex))
    if which is Ladder.ABS_SQRT_NUMBER:
        return Op(basis, np.diag(_roots(labels)).astype(complex))

    if which is Ladder.ANNIHILATE:
        # a|n> = sqrt(|n|) |n-1>; on two-sided bases this is a convention only
        return Op(basis, _lowering(basis, _roots(labels)))
    if which is Ladder.CREATE:
        return adjoint(build(LadderSpec(basis, Ladder.ANNIHILATE)))

    if not basis.is_one_sided:
        return build_extended_inverse(basis, which)
    if which is Ladder.INV_ANNIHILATE:
        # a^-1|n> = |n+1>/sqrt(n+1); the top column falls off the basis
        return Op(basis, _raising(basis, _inv_sqrt(labels + 1.0)))
    if which is Ladder.INV_CREATE:
        # a_dag^-1|n> = |n-1>/sqrt(n), zero on the vacuum
        return Op(basis, _lowering(basis, _inv_sqrt(labels)))

    raise ContractError(f"unsupported ladder operator {which!r}")


def build_extended_inverse(basis: FockBasis, which: Ladder) -> Op:
    """a^-1 or a_dag^-1 on the two-sided lattice.

    Weights follow 1/sqrt(|n|): the target label for a^-1, the source
    label for a_dag^-1. Columns whose weight would be 1/sqrt(0) are zero.
    In cyclic mode the edge columns wrap with the same rule.
    """
    if basis.is_one_sided:
        raise ContractError(
            f"extended inverses need a two-sided basis, got {basis.describe()}"
        )
    if which not in (Ladder.INV_ANNIHILATE, Ladder.INV_CREATE):
        raise ContractError(
            f"extended inverse must be {Ladder.INV_ANNIHILATE.value} or "
            f"{Ladder.INV_CREATE.value}, got {which.value}"
        )

    labels = basis.labels
    dim = basis.dim
    mat = np.zeros((dim, dim), dtype=complex)

    if which is Ladder.INV_ANNIHILATE:
        mat[:] = _raising(basis, _inv_sqrt(labels + 1))
        if basis.is_cyclic:
            # |+M> -> |-M>, weighted by the wrapped target label
            mat[0, dim - 1] = _inv_sqrt(np.array([labels[0]]))[0]
    else:
        mat[:] = _lowering(basis, _inv_sqrt(labels))
        if basis.is_cyclic:
            # |-M> -> |+M>, weighted by the source label
            mat[dim - 1, 0] = _inv_sqrt(np.array([labels[0]]))[0]

    logger.debug(f"Built extended {which.value} on {basis.describe()}")
    return Op(basis, mat)


def ladder(basis: FockBasis, which: Ladder) -> Op:
    """Shorthand for build(LadderSpec(basis, which))."""
    return build(LadderSpec(basis, which))
