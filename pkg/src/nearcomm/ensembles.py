"""Deterministic test-ensemble generators.

All generators draw from a counter-based Philox stream keyed by the seed
and explicit stream indices, so the same arguments always produce
bit-identical matrices no matter how calls are scheduled.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError, NumericalError
from .linalg import UnitaryMatrix, commutator, herm_exp, operator_norm, unitarity_defect
from .spectral import TWO_PI, unitary_eigensystem, wrap_to_pi

MAX_REGEN_RETRIES = 8


def stream_rng(seed: int, *stream: int) -> np.random.Generator:
    """Philox generator keyed by (seed, stream indices)."""
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.Philox(seed=ss))


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Gaussian with phase fixing.

    Rescaling Q's columns by the phases of R's diagonal makes the
    distribution exactly Haar and the output independent of LAPACK's sign
    conventions.
    """
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_hermitian_unit_norm(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random Hermitian matrix scaled to unit operator norm."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = (z + z.conj().T) / 2.0
    return h / operator_norm(h)


def gen_gapped_unitary(n: int, delta: float, seed: int, *stream: int) -> UnitaryMatrix:
    """Unitary with Haar-random eigenbasis and spectrum avoiding [-delta, delta].

    Eigenangles are sampled uniformly from (delta, 2pi - delta), so the
    empty arc around angle 0 has half-width at least delta.
    """
    if not 0 < delta < np.pi:
        raise InvalidInputError(f"delta must lie in (0, pi), got {delta}")
    if n < 1:
        raise InvalidInputError(f"dimension must be positive, got {n}")
    rng = stream_rng(seed, *stream)
    angles = rng.uniform(delta, TWO_PI - delta, size=n)
    basis = haar_unitary(n, rng)
    mat = (basis * np.exp(1j * angles)) @ basis.conj().T
    return UnitaryMatrix(mat, unitarity_defect(mat))


def _gap_at_zero(u) -> float:
    es = unitary_eigensystem(u)
    return float(np.min(np.abs(wrap_to_pi(es.angles))))


def gen_almost_commuting_pair(
    n: int, delta: float, eps_target: float, seed: int, *stream: int
) -> tuple[UnitaryMatrix, UnitaryMatrix, float]:
    """Commuting gapped pair with one side perturbed by exp(i*eps*G).

    The perturbation is a unitary factor within eps_target of the identity,
    so the measured commutator norm is at most 2*eps_target. If it pushes
    the spectrum of U closer than delta/2 to angle 0, the draw is retried
    with a fresh sub-stream; a bounded number of retries guards against
    pathological parameters.
    """
    if eps_target < 0:
        raise InvalidInputError(f"eps_target must be nonnegative, got {eps_target}")
    for attempt in range(MAX_REGEN_RETRIES):
        rng = stream_rng(seed, *stream, attempt)
        angles_u = rng.uniform(delta, TWO_PI - delta, size=n)
        angles_v = rng.uniform(delta, TWO_PI - delta, size=n)
        basis = haar_unitary(n, rng)
        u0 = (basis * np.exp(1j * angles_u)) @ basis.conj().T
        v0 = (basis * np.exp(1j * angles_v)) @ basis.conj().T
        g = random_hermitian_unit_norm(n, rng)
        u_mat = herm_exp(eps_target * g).mat @ u0
        u = UnitaryMatrix(u_mat, unitarity_defect(u_mat))
        v = UnitaryMatrix(v0, unitarity_defect(v0))
        if _gap_at_zero(u) >= delta / 2.0 and _gap_at_zero(v) >= delta / 2.0:
            eps_actual = operator_norm(commutator(u_mat, v0))
            return u, v, eps_actual
    raise NumericalError(
        f"perturbation kept closing the gap below {delta / 2.0:.4f} "
        f"after {MAX_REGEN_RETRIES} retries (eps_target = {eps_target})"
    )


def gen_voiculescu_pair(n: int) -> tuple[UnitaryMatrix, UnitaryMatrix]:
    """Clock and cyclic-shift matrices: commutator norm 2*sin(pi/n).

    Both spectra are the n-th roots of unity, so every spectral gap
    half-width is pi/n; the pair asymptotically commutes as n grows yet
    stays far from any commuting pair.
    """
    if n < 2:
        raise InvalidInputError(f"need n >= 2, got {n}")
    omega = np.exp(2j * np.pi / n)
    clock = np.diag(omega ** np.arange(n))
    shift = np.zeros((n, n), dtype=np.complex128)
    shift[np.arange(1, n), np.arange(n - 1)] = 1.0
    shift[0, n - 1] = 1.0
    return (
        UnitaryMatrix(clock, unitarity_defect(clock)),
        UnitaryMatrix(shift, unitarity_defect(shift)),
    )
