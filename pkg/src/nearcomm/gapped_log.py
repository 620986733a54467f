"""Principal-branch logarithm of a gapped unitary via a smoothed Fourier series.

The 2pi-periodic sawtooth f(theta) = theta on [0, 2pi) has Fourier
coefficients pi (k = 0) and i/k (k != 0), but its series converges only
conditionally. Convolving f with the compactly supported bump

    chi_gamma(x) = (1 - (x/gamma)^2)^3   on |x| <= gamma,

normalized to unit mass, leaves f unchanged on (gamma, 2pi - gamma) while
damping the coefficients by the bump's transform, which decays like
1/(gamma*k)^4. Summing the damped series in powers of a unitary U whose
spectrum stays at least gamma away from angle 0 yields a Hermitian H with
exp(iH) = U, plus a certified truncation tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BranchPointError,
    InvalidInputError,
    NumericalError,
    PreconditionError,
    TruncationError,
)
from .linalg import (
    DEFAULT_TOLERANCES,
    HermitianMatrix,
    ToleranceConfig,
    as_square_array,
    hermiticity_defect,
)
from .spectral import unitary_eigensystem, wrap_to_pi

# Decay constant of the coefficient envelope |c_k| <= C/(gamma*k^4):
# sup_s s^3 |X(s)| for the unit-mass kernel transform X is 25.3834 (attained
# near s = 4.514); the default adds margin so truncation orders chosen from
# it always satisfy the measured tail check. Scales as 1/gamma^2.
ENVELOPE_CONSTANT = 26.0

_TAYLOR_CUTOFF = 2.0
# h(s) = 105 * sum_m (-1)^m s^(2m) / ((2m)! (2m+1)(2m+3)(2m+5)(2m+7));
# 18 terms reach full float64 accuracy for |s| < 2
_TAYLOR_COEFFS = np.array(
    [
        105.0 * (-1.0) ** m
        / (math.factorial(2 * m) * (2 * m + 1) * (2 * m + 3) * (2 * m + 5) * (2 * m + 7))
        for m in range(18)
    ]
)


def sawtooth_coefficient(k: int) -> complex:
    """Fourier coefficient of the periodic ramp theta on [0, 2pi)."""
    if k == 0:
        return complex(np.pi)
    return 1j / k


@dataclass(frozen=True)
class SmearingKernel:
    """The bump (1 - (x/gamma)^2)^3 on |x| <= gamma, scaled to unit mass."""

    gamma: float

    def __post_init__(self):
        if not self.gamma > 0:
            raise InvalidInputError(f"gamma must be positive, got {self.gamma}")

    @property
    def normalization(self) -> float:
        """Prefactor 35/(32*gamma) making the kernel integrate to 1."""
        return 35.0 / (32.0 * self.gamma)

    def density(self, x):
        x = np.asarray(x, dtype=float)
        inside = np.abs(x) <= self.gamma
        vals = np.where(inside, (1.0 - (x / self.gamma) ** 2) ** 3, 0.0)
        return self.normalization * vals

    def transform(self, t):
        return kernel_transform(self.gamma, t)


def kernel_transform(gamma: float, t):
    """Transform of the unit-mass smoothing bump of half-width gamma.

    Returns (35/(32*gamma)) * integral_{-gamma}^{gamma} (1-(x/gamma)^2)^3
    cos(t*x) dx, an even function of t equal to 1 at t = 0. Evaluated in
    closed form, with a Taylor series below |gamma*t| = 2 where the closed
    form cancels catastrophically. Accepts scalar or array t.
    """
    if not gamma > 0:
        raise InvalidInputError(f"gamma must be positive, got {gamma}")
    s = gamma * np.asarray(t, dtype=float)
    scalar = s.ndim == 0
    s = np.atleast_1d(np.abs(s))
    out = np.empty_like(s)
    small = s < _TAYLOR_CUTOFF
    if np.any(small):
        s2 = s[small] ** 2
        acc = np.zeros_like(s2)
        for c in _TAYLOR_COEFFS[::-1]:
            acc = acc * s2 + c
        out[small] = acc
    if np.any(~small):
        sl = s[~small]
        sin, cos = np.sin(sl), np.cos(sl)
        out[~small] = (
            105.0 * cos / sl**4
            - 630.0 * sin / sl**5
            - 1575.0 * cos / sl**6
            + 1575.0 * sin / sl**7
        )
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class LaurentCoefficients:
    """Smoothed sawtooth coefficients c_k for |k| <= trunc_order.

    coeffs[trunc_order + k] holds c_k; c_{-k} = conj(c_k) by construction.
    c_emp is the measured decay constant max |c_k|*gamma*k^4 and tail the
    certified bound on sum_{|k| > trunc_order} |c_k|.
    """

    gamma: float
    trunc_order: int
    coeffs: np.ndarray
    c_emp: float
    tail: float

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=np.complex128, copy=True)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def coefficient(self, k: int) -> complex:
        if abs(k) > self.trunc_order:
            raise InvalidInputError(f"|k| = {abs(k)} beyond truncation order {self.trunc_order}")
        return complex(self.coeffs[self.trunc_order + k])

    def weighted_sum(self) -> float:
        """sum_k |k| * |c_k|, the series' commutator amplification factor."""
        k = np.arange(-self.trunc_order, self.trunc_order + 1)
        return float(np.sum(np.abs(k) * np.abs(self.coeffs)))


def laurent_coefficients(gamma: float, trunc_order: int) -> LaurentCoefficients:
    """Coefficients c_k = d_k * X(k) of the smoothed sawtooth, |k| <= K."""
    if not 0 < gamma < np.pi:
        raise InvalidInputError(f"gamma must lie in (0, pi), got {gamma}")
    if trunc_order < 1:
        raise InvalidInputError(f"truncation order must be >= 1, got {trunc_order}")
    k = np.arange(1, trunc_order + 1)
    damp = kernel_transform(gamma, k)
    pos = (1j / k) * damp
    coeffs = np.concatenate([np.conj(pos[::-1]), [complex(np.pi)], pos])
    c_emp = float(np.max(np.abs(pos) * gamma * k**4))
    tail = 2.0 * c_emp / (3.0 * gamma * trunc_order**3)
    return LaurentCoefficients(gamma=float(gamma), trunc_order=int(trunc_order),
                               coeffs=coeffs, c_emp=c_emp, tail=tail)


def smoothed_coefficients(delta: float, gamma: float, trunc_order: int) -> LaurentCoefficients:
    """laurent_coefficients gated by the gap hypothesis 0 < gamma < delta < pi."""
    if not 0 < delta < np.pi:
        raise InvalidInputError(f"delta must lie in (0, pi), got {delta}")
    if not gamma < delta:
        raise PreconditionError(
            f"smoothing width gamma = {gamma} must be below the gap half-width delta = {delta}"
        )
    return laurent_coefficients(gamma, trunc_order)


def evaluate_smoothed_sawtooth(theta: float, gamma: float, trunc_order: int) -> float:
    """Value of the truncated smoothed-sawtooth series at angle theta.

    Equals theta up to the tail bound whenever theta keeps a margin of
    gamma from the jump at 0 (mod 2pi); inside the smoothing window the
    value merely stays in [0, 2pi].
    """
    lc = laurent_coefficients(gamma, trunc_order)
    k = np.arange(1, trunc_order + 1)
    pos = lc.coeffs[lc.trunc_order + 1:]
    return float(np.pi + 2.0 * np.real(np.sum(pos * np.exp(1j * k * theta))))


def choose_truncation(gamma: float, target: float, c_est: float | None = None) -> int:
    """Smallest K with 2*C/(3*gamma*K^3) <= target.

    c_est defaults to the envelope constant rescaled by 1/gamma^2, its
    measured scaling.
    """
    if not gamma > 0 or not target > 0 or (c_est is not None and not c_est > 0):
        raise InvalidInputError("gamma, target and c_est must be positive")
    if c_est is None:
        c_est = ENVELOPE_CONSTANT / gamma**2
    k = max(1, math.ceil((2.0 * c_est / (3.0 * gamma * target)) ** (1.0 / 3.0)))
    while k > 1 and 2.0 * c_est / (3.0 * gamma * (k - 1) ** 3) <= target:
        k -= 1
    while 2.0 * c_est / (3.0 * gamma * k**3) > target:
        k += 1
    return k


def certified_truncation(gamma: float, target: float) -> int:
    """Truncation order whose measured tail bound certifies the target.

    Starts from choose_truncation's estimate and re-solves with the
    measured decay constant if that estimate falls short; the constant
    stops changing once the envelope's peak is inside the summed range, so
    a couple of rounds always settle it.
    """
    k = choose_truncation(gamma, target)
    for _ in range(4):
        lc = laurent_coefficients(gamma, k)
        if lc.tail <= target:
            return k
        k = max(k + 1, choose_truncation(gamma, target, c_est=lc.c_emp))
    raise NumericalError(
        f"could not certify tail <= {target:.3e} at gamma = {gamma} (reached order {k})"
    )


def _measured_gap(u, tolerances: ToleranceConfig) -> float:
    """Distance of the spectrum of u from angle 0 (the branch cut)."""
    es = unitary_eigensystem(u, tolerances)
    return float(np.min(np.abs(wrap_to_pi(es.angles))))


def gapped_log(
    u,
    gamma: float,
    trunc_order: int,
    series_target: float | None = None,
    tolerances: ToleranceConfig = DEFAULT_TOLERANCES,
) -> tuple[HermitianMatrix, LaurentCoefficients]:
    """Hermitian H with exp(iH) = U, summed as sum_k c_k U^k.

    Requires the spectrum of U to stay more than gamma away from angle 0
    (gap centered there) and the certified tail to meet series_target.
    Positive powers are accumulated by repeated multiplication; the
    negative half of the series is their conjugate transpose, which makes
    H exactly Hermitian.
    """
    a = as_square_array(u, "unitary matrix")
    target = tolerances.series_target if series_target is None else series_target
    measured = _measured_gap(u, tolerances)
    if not gamma < measured:
        raise PreconditionError(
            f"smoothing width gamma = {gamma} not below measured gap half-width {measured:.6f}"
        )
    lc = laurent_coefficients(gamma, trunc_order)
    if lc.tail > target:
        raise TruncationError(
            f"certified tail {lc.tail:.3e} exceeds target {target:.3e}; "
            "increase the truncation order or the smoothing width",
            tail=lc.tail,
            target=target,
        )
    pos = lc.coeffs[lc.trunc_order + 1:]
    acc = np.zeros_like(a)
    power = np.eye(a.shape[0], dtype=np.complex128)
    for k in range(1, trunc_order + 1):
        power = power @ a
        acc += pos[k - 1] * power
    h = acc + acc.conj().T
    np.fill_diagonal(h, h.diagonal() + np.pi)
    return HermitianMatrix(h, hermiticity_defect(h)), lc


def direct_log(u, tolerances: ToleranceConfig = DEFAULT_TOLERANCES) -> HermitianMatrix:
    """Principal-branch log by eigendecomposition: H = sum_j phi_j v_j v_j^H.

    Eigenangles are taken in (0, 2pi); an angle within 1e-9 of the branch
    cut at 0 is rejected as ambiguous. Serves as the oracle for the series
    log.
    """
    es = unitary_eigensystem(u, tolerances)
    dist = np.abs(wrap_to_pi(es.angles))
    if np.any(dist < 1e-9):
        raise BranchPointError(
            f"eigenangle within {np.min(dist):.3e} of the branch point at angle 0"
        )
    h = (es.basis * es.angles) @ es.basis.conj().T
    h = (h + h.conj().T) / 2.0
    return HermitianMatrix(h, hermiticity_defect(h))
