"""Dense complex matrix substrate: norms, commutators, Hermitian exponentials.

All matrices are square complex128 arrays. The norm used throughout is the
operator norm induced by the Euclidean vector norm, i.e. the largest
singular value. Structural properties (unitarity, hermiticity) are tracked
as measured defects against configurable tolerances that scale linearly
with the dimension.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, NumericalError


@dataclass(frozen=True)
class ToleranceConfig:
    """Per-dimension tolerance coefficients.

    unitarity_tol, hermiticity_tol and commute_tol are multiplied by the
    matrix dimension n where they are applied; series_target is an absolute
    truncation accuracy for the log series.
    """

    unitarity_tol: float = 1e-8
    hermiticity_tol: float = 1e-8
    commute_tol: float = 1e-10
    series_target: float = 1e-6

    def __post_init__(self):
        for name in ("unitarity_tol", "hermiticity_tol", "commute_tol", "series_target"):
            if not getattr(self, name) > 0:
                raise InvalidInputError(f"{name} must be strictly positive")

    def unitarity(self, n: int) -> float:
        return self.unitarity_tol * n

    def hermiticity(self, n: int) -> float:
        return self.hermiticity_tol * n

    def commute(self, n: int) -> float:
        return self.commute_tol * n


DEFAULT_TOLERANCES = ToleranceConfig()


def as_square_array(m, name: str = "matrix") -> np.ndarray:
    """Coerce to a square, finite complex128 array, raising on bad input."""
    a = np.asarray(getattr(m, "mat", m), dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInputError(f"{name} must be square, got shape {a.shape}")
    if a.shape[0] == 0:
        raise InvalidInputError(f"{name} must have positive dimension")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return a


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.complex128, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class ComplexMatrix:
    """A square finite complex matrix."""

    mat: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mat", _frozen(as_square_array(self.mat)))

    @property
    def n(self) -> int:
        return self.mat.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.mat, dtype=dtype)


@dataclass(frozen=True)
class HermitianMatrix:
    """A matrix certified Hermitian up to the recorded defect |M - M^H|."""

    mat: np.ndarray
    defect: float

    def __post_init__(self):
        object.__setattr__(self, "mat", _frozen(as_square_array(self.mat)))

    @classmethod
    def from_array(cls, m, tolerances: ToleranceConfig = DEFAULT_TOLERANCES) -> "HermitianMatrix":
        a = as_square_array(m)
        d = hermiticity_defect(a)
        tol = tolerances.hermiticity(a.shape[0])
        if d > tol:
            raise InvalidInputError(f"hermiticity defect {d:.3e} exceeds tolerance {tol:.3e}")
        return cls(a, d)

    @property
    def n(self) -> int:
        return self.mat.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.mat, dtype=dtype)


@dataclass(frozen=True)
class UnitaryMatrix:
    """A matrix certified unitary up to the recorded defect |M^H M - I|."""

    mat: np.ndarray
    defect: float

    def __post_init__(self):
        object.__setattr__(self, "mat", _frozen(as_square_array(self.mat)))

    @classmethod
    def from_array(cls, m, tolerances: ToleranceConfig = DEFAULT_TOLERANCES) -> "UnitaryMatrix":
        a = as_square_array(m)
        d = unitarity_defect(a)
        tol = tolerances.unitarity(a.shape[0])
        if d > tol:
            raise InvalidInputError(f"unitarity defect {d:.3e} exceeds tolerance {tol:.3e}")
        return cls(a, d)

    @property
    def n(self) -> int:
        return self.mat.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.mat, dtype=dtype)


def operator_norm(m) -> float:
    """Largest singular value (spectral norm) of a square complex matrix."""
    a = as_square_array(m)
    return float(np.linalg.norm(a, ord=2))


def commutator(m, n) -> np.ndarray:
    """MN - NM. Antisymmetric in its arguments."""
    a = as_square_array(m, "first operand")
    b = as_square_array(n, "second operand")
    if a.shape != b.shape:
        raise InvalidInputError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def unitarity_defect(m) -> float:
    """Operator norm of M^H M - I."""
    a = as_square_array(m)
    return float(np.linalg.norm(a.conj().T @ a - np.eye(a.shape[0]), ord=2))


def hermiticity_defect(m) -> float:
    """Operator norm of M - M^H."""
    a = as_square_array(m)
    return float(np.linalg.norm(a - a.conj().T, ord=2))


def herm_exp(h, tolerances: ToleranceConfig = DEFAULT_TOLERANCES) -> UnitaryMatrix:
    """exp(iH) for Hermitian H, via eigendecomposition.

    The eigendecomposition route keeps the result unitary to rounding and
    makes the eigenangles of the output equal the eigenvalues of H mod 2pi.
    """
    a = as_square_array(h, "hermitian matrix")
    n = a.shape[0]
    d = hermiticity_defect(a)
    tol = tolerances.hermiticity(n)
    if d > tol:
        raise InvalidInputError(f"hermiticity defect {d:.3e} exceeds tolerance {tol:.3e}")
    try:
        w, q = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigendecomposition failed for {n}x{n} input: {exc}") from exc
    u = (q * np.exp(1j * w)) @ q.conj().T
    du = unitarity_defect(u)
    if du > tolerances.unitarity(n):
        raise NumericalError(
            f"exponential lost unitarity: defect {du:.3e} for {n}x{n} input"
        )
    return UnitaryMatrix(u, du)
