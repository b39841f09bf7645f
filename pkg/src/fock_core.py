"""
Fock-basis bookkeeping and dense complex linear algebra.

A FockBasis is either one-sided (labels n = 0..D-1) or two-sided
(labels n = -M..M with a truncated or cyclic boundary). Kets and
operators are tagged with the basis they live on; every binary
operation checks that the tags agree.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

sys.path.append(str(Path(__file__).parent.parent))
from src.exceptions import BasisMismatchError, ContractError, DomainError
from src.logger import setup_logger

logger = setup_logger("fock_core")

MIN_ONE_SIDED_DIM = 4
MIN_HALF_WIDTH = 2


class BasisKind(Enum):
    ONE_SIDED = "one-sided"
    TWO_SIDED = "two-sided"


class Boundary(Enum):
    TRUNCATED = "truncated"
    CYCLIC = "cyclic"


@dataclass(frozen=True)
class FockBasis:
    """Index lattice of number states.

    `size` is the dimension D for one-sided bases and the half width M
    for two-sided ones. `boundary` only matters on two-sided bases.
    """

    kind: BasisKind
    size: int
    boundary: Boundary = Boundary.TRUNCATED

    def __post_init__(self):
        if self.kind is BasisKind.ONE_SIDED:
            if self.size < MIN_ONE_SIDED_DIM:
                raise DomainError(
                    f"one-sided basis needs dim >= {MIN_ONE_SIDED_DIM}, got {self.size}"
                )
            # boundary is meaningless here; normalize so equality is structural
            object.__setattr__(self, "boundary", Boundary.TRUNCATED)
        elif self.size < MIN_HALF_WIDTH:
            raise DomainError(
                f"two-sided basis needs half_width >= {MIN_HALF_WIDTH}, got {self.size}"
            )

    @classmethod
    def one_sided(cls, dim: int) -> "FockBasis":
        return cls(BasisKind.ONE_SIDED, int(dim))

    @classmethod
    def two_sided(cls, half_width: int, boundary: Boundary = Boundary.CYCLIC) -> "FockBasis":
        return cls(BasisKind.TWO_SIDED, int(half_width), boundary)

    @property
    def is_one_sided(self) -> bool:
        return self.kind is BasisKind.ONE_SIDED

    @property
    def is_cyclic(self) -> bool:
        return self.kind is BasisKind.TWO_SIDED and self.boundary is Boundary.CYCLIC

    @property
    def dim(self) -> int:
        return self.size if self.is_one_sided else 2 * self.size + 1

    @property
    def offset(self) -> int:
        """Row of label 0; also the shift between labels and rows."""
        return 0 if self.is_one_sided else self.size

    @property
    def min_label(self) -> int:
        return -self.offset

    @property
    def max_label(self) -> int:
        return self.dim - 1 - self.offset

    @property
    def labels(self) -> np.ndarray:
        return np.arange(self.min_label, self.max_label + 1)

    def contains(self, n: int) -> bool:
        return self.min_label <= n <= self.max_label

    def index_of(self, n: int) -> int:
        if not self.contains(n):
            raise DomainError(
                f"label {n} outside {self.describe()}; valid range is "
                f"{self.min_label}..{self.max_label}"
            )
        return int(n) + self.offset

    def label_of(self, row: int) -> int:
        if not 0 <= row < self.dim:
            raise DomainError(f"row {row} outside 0..{self.dim - 1}")
        return int(row) - self.offset

    def describe(self) -> str:
        if self.is_one_sided:
            return f"one-sided basis D={self.size}"
        return f"two-sided basis M={self.size} ({self.boundary.value})"


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=complex, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class Ket:
    """Complex amplitude vector over a FockBasis."""

    basis: FockBasis
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = _frozen(self.amps)
        if amps.shape != (self.basis.dim,):
            raise ContractError(
                f"ket needs {self.basis.dim} amplitudes, got shape {amps.shape}"
            )
        if not np.all(np.isfinite(amps)):
            raise DomainError("ket amplitudes must be finite")
        object.__setattr__(self, "amps", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def normalized(self) -> "Ket":
        norm = self.norm()
        if norm == 0.0:
            raise DomainError("cannot normalize the zero vector")
        return Ket(self.basis, self.amps / norm)

    def amplitude(self, n: int) -> complex:
        return complex(self.amps[self.basis.index_of(n)])


@dataclass(frozen=True, eq=False)
class Op:
    """Dense complex square matrix over a FockBasis."""

    basis: FockBasis
    mat: np.ndarray = field(repr=False)

    def __post_init__(self):
        mat = _frozen(self.mat)
        dim = self.basis.dim
        if mat.shape != (dim, dim):
            raise ContractError(f"operator needs shape ({dim}, {dim}), got {mat.shape}")
        object.__setattr__(self, "mat", mat)

    def element(self, row_label: int, col_label: int) -> complex:
        """<row_label| op |col_label>."""
        return complex(self.mat[self.basis.index_of(row_label), self.basis.index_of(col_label)])

    def diagonal(self) -> np.ndarray:
        return np.diagonal(self.mat).copy()

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        return float(np.max(np.abs(self.mat - self.mat.conj().T), initial=0.0)) <= tol

    def __matmul__(self, other):
        if isinstance(other, Op):
            return compose(self, other)
        if isinstance(other, Ket):
            return apply(self, other)
        return NotImplemented

    def __add__(self, other: "Op") -> "Op":
        _check_same_basis(self.basis, other.basis, "add")
        return Op(self.basis, self.mat + other.mat)

    def __sub__(self, other: "Op") -> "Op":
        _check_same_basis(self.basis, other.basis, "subtract")
        return Op(self.basis, self.mat - other.mat)

    def __mul__(self, scalar: complex) -> "Op":
        return Op(self.basis, self.mat * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: complex) -> "Op":
        return Op(self.basis, self.mat / scalar)


def _check_same_basis(left: FockBasis, right: FockBasis, operation: str):
    if left != right:
        raise BasisMismatchError(left, right, operation)


def identity(basis: FockBasis) -> Op:
    return Op(basis, np.eye(basis.dim, dtype=complex))


def zero(basis: FockBasis) -> Op:
    return Op(basis, np.zeros((basis.dim, basis.dim), dtype=complex))


def number_state(basis: FockBasis, n: int) -> Ket:
    """|n> as a unit vector; raises DomainError outside the lattice."""
    amps = np.zeros(basis.dim, dtype=complex)
    amps[basis.index_of(n)] = 1.0
    return Ket(basis, amps)


def apply(op: Op, ket: Ket) -> Ket:
    _check_same_basis(op.basis, ket.basis, "apply")
    return Ket(op.basis, op.mat @ ket.amps)


def compose(left: Op, right: Op) -> Op:
    """Operator product left·right (right acts first)."""
    _check_same_basis(left.basis, right.basis, "compose")
    return Op(left.basis, left.mat @ right.mat)


def adjoint(op: Op) -> Op:
    return Op(op.basis, op.mat.conj().T)


def expectation(op: Op, ket: Ket) -> complex:
    """<ket|op|ket> without normalizing ket."""
    _check_same_basis(op.basis, ket.basis, "expectation")
    return complex(np.vdot(ket.amps, op.mat @ ket.amps))


def rows_for_labels(basis: FockBasis, labels: Iterable[int]) -> list:
    return sorted({basis.index_of(n) for n in labels})


def residual_matrix(a: Op, b: Op, excluded_rows: Optional[Iterable[int]] = None) -> np.ndarray:
    """|a - b| with the excluded rows AND columns deleted.

    `excluded_rows` holds matrix row indices (use rows_for_labels to
    convert lattice labels).
    """
    _check_same_basis(a.basis, b.basis, "residual_norm")
    excluded = sorted(set(excluded_rows or ()))
    for row in excluded:
        if not 0 <= row < a.basis.dim:
            raise DomainError(f"excluded row {row} outside 0..{a.basis.dim - 1}")
    keep = np.setdiff1d(np.arange(a.basis.dim), excluded)
    diff = np.abs(a.mat - b.mat)
    return diff[np.ix_(keep, keep)]


def residual_norm(a: Op, b: Op, excluded_rows: Optional[Iterable[int]] = None) -> float:
    """Max-abs entry of (a - b) after deleting excluded rows and columns."""
    return float(np.max(residual_matrix(a, b, excluded_rows), initial=0.0))
