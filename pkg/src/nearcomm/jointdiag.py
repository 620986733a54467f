"""Nearest commuting Hermitian pair via Jacobi joint approximate diagonalization.

Sweeps of 2x2 unitary rotations drive both matrices toward a common
diagonal basis; each rotation maximizes, in closed form, the summed
squared diagonals restricted to its (i, j) plane. The diagonal parts in
the final basis commute exactly, whatever the convergence status, so the
output pair always satisfies the commuting contract.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .linalg import (
    DEFAULT_TOLERANCES,
    HermitianMatrix,
    ToleranceConfig,
    as_square_array,
    hermiticity_defect,
    operator_norm,
)


@dataclass(frozen=True)
class JadeOptions:
    """Sweep control: pairs are visited in lexicographic (i < j) order."""

    max_sweeps: int = 100
    rel_improvement_tol: float = 1e-12

    def __post_init__(self):
        if self.max_sweeps < 1:
            raise InvalidInputError(f"max_sweeps must be >= 1, got {self.max_sweeps}")
        if not self.rel_improvement_tol >= 0:
            raise InvalidInputError("rel_improvement_tol must be nonnegative")


DEFAULT_JADE = JadeOptions()


@dataclass(frozen=True)
class CommutingHermitianPair:
    """Exactly commuting pair with its common eigenbasis and distances.

    a_prime = Q diag(Q^H A Q) Q^H and likewise b_prime, so the commutator
    of the outputs vanishes to rounding. off_history records the
    off-diagonal mass before each sweep and after the last.
    """

    a_prime: HermitianMatrix
    b_prime: HermitianMatrix
    basis: np.ndarray
    dist_a: float
    dist_b: float
    converged: bool
    sweeps: int
    off_history: tuple[float, ...]

    def __post_init__(self):
        b = np.array(self.basis, dtype=np.complex128, copy=True)
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)


def off_measure(a, b) -> float:
    """Sum of squared moduli of the off-diagonal entries of both matrices."""
    ma = as_square_array(a, "first matrix")
    mb = as_square_array(b, "second matrix")
    if ma.shape != mb.shape:
        raise InvalidInputError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    mask = ~np.eye(ma.shape[0], dtype=bool)
    return float(np.sum(np.abs(ma[mask]) ** 2) + np.sum(np.abs(mb[mask]) ** 2))


def _rotation(a: np.ndarray, b: np.ndarray, p: int, q: int) -> tuple[float, complex]:
    """Closed-form rotation maximizing the (p, q)-plane diagonal mass."""
    h = np.empty((3, 2), dtype=np.complex128)
    for col, m in enumerate((a, b)):
        h[0, col] = m[p, p] - m[q, q]
        h[1, col] = m[p, q] + m[q, p]
        h[2, col] = 1j * (m[q, p] - m[p, q])
    g3 = np.real(h @ h.conj().T)
    _, vecs = np.linalg.eigh(g3)
    x, y, z = vecs[:, -1]
    if x < 0 or (x == 0 and (y < 0 or (y == 0 and z < 0))):
        x, y, z = -x, -y, -z
    c = np.sqrt(0.5 + x / 2.0)
    s = 0.5 * (y - 1j * z) / c
    return float(c), complex(s)


def _apply(m: np.ndarray, p: int, q: int, g: np.ndarray) -> None:
    m[[p, q], :] = g.conj().T @ m[[p, q], :]
    m[:, [p, q]] = m[:, [p, q]] @ g


def nearest_commuting_pair(
    a,
    b,
    opts: JadeOptions = DEFAULT_JADE,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> CommutingHermitianPair:
    """Exactly commuting Hermitian pair (A', B') near Hermitian (A, B).

    Jacobi sweeps rotate toward a joint near-diagonalizer Q; A' and B' are
    the diagonal parts in that basis conjugated back. For commuting inputs
    with simple spectrum this reproduces the pair to rounding. If
    max_sweeps is exhausted while the objective still improves, the result
    is flagged unconverged but still commutes exactly.
    """
    ma = as_square_array(a, "first matrix")
    mb = as_square_array(b, "second matrix")
    if ma.shape != mb.shape:
        raise InvalidInputError(f"dimension mismatch: {ma.shape} vs {mb.shape}")
    n = ma.shape[0]
    for name, m in (("first", ma), ("second", mb)):
        d = hermiticity_defect(m)
        if d > tolerances.hermiticity(n):
            raise InvalidInputError(
                f"{name} matrix has hermiticity defect {d:.3e}, beyond tolerance"
            )

    wa, wb = ma.copy(), mb.copy()
    basis = np.eye(n, dtype=np.complex128)
    scale = float(np.sum(np.abs(wa) ** 2) + np.sum(np.abs(wb) ** 2))
    floor = 1e-30 * max(scale, 1.0)

    history = [off_measure(wa, wb)]
    converged = history[0] <= floor
    sweeps = 0
    while not converged and sweeps < opts.max_sweeps:
        for p in range(n):
            for q in range(p + 1, n):
                c, s = _rotation(wa, wb, p, q)
                g = np.array([[c, -np.conj(s)], [s, c]])
                _apply(wa, p, q, g)
                _apply(wb, p, q, g)
                basis[:, [p, q]] = basis[:, [p, q]] @ g
        sweeps += 1
        cur = off_measure(wa, wb)
        history.append(cur)
        prev = history[-2]
        if cur <= floor or (prev - cur) <= opts.rel_improvement_tol * max(prev, floor):
            converged = True

    diag_a = np.diag(wa).real
    diag_b = np.diag(wb).real
    a_prime = (basis * diag_a) @ basis.conj().T
    b_prime = (basis * diag_b) @ basis.conj().T
    a_prime = (a_prime + a_prime.conj().T) / 2.0
    b_prime = (b_prime + b_prime.conj().T) / 2.0
    return CommutingHermitianPair(
        a_prime=HermitianMatrix(a_prime, hermiticity_defect(a_prime)),
        b_prime=HermitianMatrix(b_prime, hermiticity_defect(b_prime)),
        basis=basis,
        dist_a=operator_norm(a_prime - ma),
        dist_b=operator_norm(b_prime - mb),
        converged=converged,
        sweeps=sweeps,
        off_history=tuple(history),
    )
