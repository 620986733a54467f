"""Eigensystems of unitary matrices and spectral gaps on the unit circle.

A unitary matrix is normal, so its Schur form is diagonal and the Schur
basis is an orthonormal eigenbasis; this is numerically more robust than a
generic eigensolver when eigenvalues cluster. Gap discovery works on the
sorted eigenangles; centering multiplies by a scalar phase so the widest
empty arc straddles angle 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import InvalidInputError, NumericalError
from .linalg import (
    DEFAULT_TOLERANCES,
    ToleranceConfig,
    UnitaryMatrix,
    as_square_array,
    unitarity_defect,
)

TWO_PI = 2.0 * np.pi

# eigenvalues of a numerically unitary matrix must sit this close to the
# unit circle before radial projection is considered safe
MODULUS_TOL = 1e-6


def wrap_to_pi(phi):
    """Map angles to the principal interval (-pi, pi]."""
    w = np.mod(np.asarray(phi, dtype=float) + np.pi, TWO_PI) - np.pi
    return np.where(w == -np.pi, np.pi, w) if np.ndim(w) else (np.pi if w == -np.pi else float(w))


@dataclass(frozen=True)
class Eigensystem:
    """Eigenangles in [0, 2pi), ascending, with an orthonormal eigenbasis.

    basis column j is the eigenvector belonging to angles[j]; the matrix is
    reconstructed as sum_j exp(i*angles[j]) v_j v_j^H.
    """

    angles: np.ndarray
    basis: np.ndarray

    def __post_init__(self):
        a = np.array(self.angles, dtype=float, copy=True)
        b = np.array(self.basis, dtype=np.complex128, copy=True)
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "angles", a)
        object.__setattr__(self, "basis", b)

    @property
    def n(self) -> int:
        return len(self.angles)

    def reconstruct(self) -> np.ndarray:
        return (self.basis * np.exp(1j * self.angles)) @ self.basis.conj().T


@dataclass(frozen=True)
class GapInfo:
    """The widest eigenvalue-free open arc of the unit circle.

    center is the arc midpoint in [0, 2pi); half_width is half the arc
    length, capped at pi; lo and hi are the bounding eigenangles (lo == hi
    for a single distinct eigenvalue, where the arc is the whole circle
    minus a point).
    """

    center: float
    half_width: float
    lo: float
    hi: float


def unitary_eigensystem(
    u, tolerances: ToleranceConfig = DEFAULT_TOLERANCES
) -> Eigensystem:
    """Eigenangles and orthonormal eigenbasis of a unitary matrix."""
    a = as_square_array(u, "unitary matrix")
    n = a.shape[0]
    if not isinstance(u, UnitaryMatrix):
        d = unitarity_defect(a)
        if d > tolerances.unitarity(n):
            raise InvalidInputError(
                f"unitarity defect {d:.3e} exceeds tolerance {tolerances.unitarity(n):.3e}"
            )
    try:
        t, z = scipy.linalg.schur(a, output="complex")
    except (scipy.linalg.LinAlgError, ValueError) as exc:
        raise NumericalError(f"Schur decomposition failed: {exc}") from exc
    lam = np.diag(t)
    moduli = np.abs(lam)
    worst = float(np.max(np.abs(moduli - 1.0)))
    if worst > MODULUS_TOL:
        raise InvalidInputError(
            f"eigenvalue modulus deviates from 1 by {worst:.3e}; input is not numerically unitary"
        )
    angles = np.mod(np.angle(lam / moduli), TWO_PI)
    order = np.argsort(angles, kind="stable")
    es = Eigensystem(angles[order], z[:, order])
    resid = float(np.linalg.norm(es.reconstruct() - a, ord=2))
    if resid > 1e-8 * n:
        raise NumericalError(f"eigensystem reconstruction residual {resid:.3e} too large")
    return es


def _arcs(angles: np.ndarray):
    """Consecutive empty arcs (lo, hi, length) of sorted angles, circularly."""
    n = len(angles)
    if n == 1:
        yield angles[0], angles[0], TWO_PI
        return
    for i in range(n):
        lo = angles[i]
        hi = angles[(i + 1) % n]
        length = (hi - lo) if i + 1 < n else (hi + TWO_PI - lo)
        yield lo, hi, length


def largest_gap(es: Eigensystem) -> GapInfo:
    """Widest empty open arc between consecutive eigenangles.

    Ties between equally long arcs are broken by the smallest center in
    [0, 2pi) so the result is deterministic. The half-width is capped at
    pi (relevant only when a single distinct eigenvalue leaves the whole
    punctured circle empty).
    """
    angles = np.sort(np.asarray(es.angles, dtype=float))
    if len(angles) < 1:
        raise InvalidInputError("eigensystem has no angles")
    best = None
    for lo, hi, length in _arcs(angles):
        center = float(np.mod(lo + length / 2.0, TWO_PI))
        key = (-length, center)
        if best is None or key < best[0]:
            best = (key, lo, hi, length, center)
    _, lo, hi, length, center = best
    return GapInfo(center=center, half_width=float(min(length / 2.0, np.pi)), lo=float(lo), hi=float(hi))


def center_gap(
    u, tolerances: ToleranceConfig = DEFAULT_TOLERANCES
) -> tuple[UnitaryMatrix, float, GapInfo]:
    """Rotate a unitary by a scalar phase so its largest gap sits at angle 0.

    Returns (exp(-i*zeta) * U, zeta, recomputed gap). When the gap is
    already centered the matrix is returned unchanged with zeta = 0.
    """
    a = as_square_array(u, "unitary matrix")
    es = unitary_eigensystem(u if isinstance(u, UnitaryMatrix) else a, tolerances)
    gap = largest_gap(es)
    zeta = gap.center
    if zeta == 0.0:
        cu = u if isinstance(u, UnitaryMatrix) else UnitaryMatrix(a, unitarity_defect(a))
        return cu, 0.0, gap
    shifted_angles = np.mod(es.angles - zeta, TWO_PI)
    order = np.argsort(shifted_angles, kind="stable")
    shifted = Eigensystem(shifted_angles[order], es.basis[:, order])
    new_gap = largest_gap(shifted)
    mat = np.exp(-1j * zeta) * a
    return UnitaryMatrix(mat, unitarity_defect(mat)), float(zeta), new_gap
