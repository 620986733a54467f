"""End-to-end construction of a commuting unitary pair near an almost-commuting one.

Steps: center each input's spectral gap at angle 0, take the smoothed
series logarithm of each, rescale the logs into the unit-norm window,
replace them by the nearest commuting Hermitian pair, exponentiate, and
undo phases. Every inequality used along the way (commutator
amplification of the series, Lipschitz bound of the exponential,
truncation slack) is measured and checked on each run.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GapTooSmallError, NumericalError
from .gapped_log import LaurentCoefficients, certified_truncation, gapped_log
from .jointdiag import JadeOptions, nearest_commuting_pair
from .linalg import (
    ToleranceConfig,
    UnitaryMatrix,
    as_square_array,
    commutator,
    herm_exp,
    operator_norm,
)
from .spectral import GapInfo, center_gap


@dataclass(frozen=True)
class PipelineOptions:
    min_gap: float = 0.1
    series_target: float = 1e-6
    jade: JadeOptions = field(default_factory=JadeOptions)
    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)


DEFAULT_OPTIONS = PipelineOptions()


@dataclass(frozen=True)
class BoundReport:
    """Commutator amplification of the two log series.

    alpha_emp is the product of the truncated sums sum_k |k||c_k| of each
    coefficient set; the commutator of the logs is bounded by
    epsilon * alpha_emp up to truncation slack. alpha_normalized rescales
    by delta1*delta2, the gap-free form of the same constant.
    """

    epsilon: float
    delta1: float
    delta2: float
    alpha_emp: float
    alpha_normalized: float
    predicted: float
    measured_log_comm: float


@dataclass(frozen=True)
class PipelineResult:
    """Commuting pair (x, y) with every measured distance and bound."""

    x: UnitaryMatrix
    y: UnitaryMatrix
    dist_u: float
    dist_v: float
    comm_before: float
    comm_after: float
    bound: BoundReport
    herm_dist_a: float
    herm_dist_b: float
    exp_dist_a: float
    exp_dist_b: float
    zeta1: float
    zeta2: float
    gap1: GapInfo
    gap2: GapInfo
    gamma1: float
    gamma2: float
    trunc_order1: int
    trunc_order2: int
    tail1: float
    tail2: float
    converged: bool
    sweeps: int

    def flat(self) -> dict[str, float | int | bool]:
        """Scalar summary, suitable for key=value or CSV output."""
        return {
            "n": self.x.n,
            "dist_u": self.dist_u,
            "dist_v": self.dist_v,
            "comm_before": self.comm_before,
            "comm_after": self.comm_after,
            "epsilon": self.bound.epsilon,
            "alpha_emp": self.bound.alpha_emp,
            "alpha_normalized": self.bound.alpha_normalized,
            "predicted_bound": self.bound.predicted,
            "measured_log_comm": self.bound.measured_log_comm,
            "herm_dist_a": self.herm_dist_a,
            "herm_dist_b": self.herm_dist_b,
            "exp_dist_a": self.exp_dist_a,
            "exp_dist_b": self.exp_dist_b,
            "zeta1": self.zeta1,
            "zeta2": self.zeta2,
            "delta1": self.gap1.half_width,
            "delta2": self.gap2.half_width,
            "gamma1": self.gamma1,
            "gamma2": self.gamma2,
            "trunc_order1": self.trunc_order1,
            "trunc_order2": self.trunc_order2,
            "tail1": self.tail1,
            "tail2": self.tail2,
            "defect_x": self.x.defect,
            "defect_y": self.y.defect,
            "converged": self.converged,
            "sweeps": self.sweeps,
        }


def log_commutator_bound(
    coeffs_u: LaurentCoefficients,
    coeffs_v: LaurentCoefficients,
    epsilon: float,
    delta1: float = float("nan"),
    delta2: float = float("nan"),
    measured_log_comm: float = float("nan"),
) -> BoundReport:
    """Bound on the commutator of the two series logs from their coefficients.

    The commutator of U^j and V^k expands into |j|*|k| conjugated copies of
    [U, V], so the series commutator is controlled by the product of the
    weighted coefficient sums.
    """
    su = coeffs_u.weighted_sum()
    sv = coeffs_v.weighted_sum()
    alpha = su * sv
    return BoundReport(
        epsilon=float(epsilon),
        delta1=float(delta1),
        delta2=float(delta2),
        alpha_emp=alpha,
        alpha_normalized=alpha * float(delta1) * float(delta2),
        predicted=float(epsilon) * alpha,
        measured_log_comm=float(measured_log_comm),
    )


def shift_to_unit_window(h: np.ndarray) -> np.ndarray:
    """Affine map (H - pi*I)/pi taking spectrum from (0, 2pi) into (-1, 1).

    Identity shifts and positive scalings preserve commutators, so the
    commuting property transports back exactly through the inverse.
    """
    a = as_square_array(h)
    out = a.copy()
    np.fill_diagonal(out, out.diagonal() - np.pi)
    return out / np.pi


def unshift_from_unit_window(h: np.ndarray) -> np.ndarray:
    """Inverse of shift_to_unit_window: pi*H + pi*I."""
    a = as_square_array(h)
    out = a * np.pi
    np.fill_diagonal(out, out.diagonal() + np.pi)
    return out


def near_commuting_unitaries(
    u, v, opts: PipelineOptions = DEFAULT_OPTIONS
) -> PipelineResult:
    """Commuting unitary pair (X, Y) near the almost-commuting input (U, V).

    Rejects inputs whose largest spectral gap half-width is at or below
    opts.min_gap. The returned pair commutes within the commute tolerance;
    the result carries all measured distances and the bound report.
    """
    tol = opts.tolerances
    a_u = as_square_array(u, "U")
    a_v = as_square_array(v, "V")
    n = a_u.shape[0]
    eps = operator_norm(commutator(a_u, a_v))

    centered_u, zeta1, gap1 = center_gap(u, tol)
    centered_v, zeta2, gap2 = center_gap(v, tol)
    if gap1.half_width <= opts.min_gap or gap2.half_width <= opts.min_gap:
        raise GapTooSmallError(
            f"gap half-widths ({gap1.half_width:.6f}, {gap2.half_width:.6f}) "
            f"not above min_gap = {opts.min_gap}",
            gaps=(gap1.half_width, gap2.half_width),
            min_gap=opts.min_gap,
        )

    gamma1 = gap1.half_width / 2.0
    gamma2 = gap2.half_width / 2.0
    k1 = certified_truncation(gamma1, opts.series_target)
    k2 = certified_truncation(gamma2, opts.series_target)
    log_u, coeffs_u = gapped_log(centered_u, gamma1, k1, opts.series_target, tol)
    log_v, coeffs_v = gapped_log(centered_v, gamma2, k2, opts.series_target, tol)

    measured_log_comm = operator_norm(commutator(log_u.mat, log_v.mat))
    bound = log_commutator_bound(
        coeffs_u, coeffs_v, eps, gap1.half_width, gap2.half_width, measured_log_comm
    )
    slack = 2.0 * (
        coeffs_u.tail * operator_norm(log_v.mat) + coeffs_v.tail * operator_norm(log_u.mat)
    )
    if measured_log_comm > bound.predicted + slack + 1e-12 * n:
        raise NumericalError(
            f"log commutator {measured_log_comm:.3e} exceeds predicted bound "
            f"{bound.predicted:.3e} plus slack {slack:.3e}"
        )

    norm_a = shift_to_unit_window(log_u.mat)
    norm_b = shift_to_unit_window(log_v.mat)
    pair = nearest_commuting_pair(norm_a, norm_b, opts.jade, tol)
    a_prime = unshift_from_unit_window(pair.a_prime.mat)
    b_prime = unshift_from_unit_window(pair.b_prime.mat)
    herm_dist_a = operator_norm(a_prime - log_u.mat)
    herm_dist_b = operator_norm(b_prime - log_v.mat)

    x_centered = herm_exp(a_prime, tol)
    y_centered = herm_exp(b_prime, tol)
    exp_dist_a = operator_norm(x_centered.mat - herm_exp(log_u, tol).mat)
    exp_dist_b = operator_norm(y_centered.mat - herm_exp(log_v, tol).mat)
    if exp_dist_a > herm_dist_a + 1e-10 * n or exp_dist_b > herm_dist_b + 1e-10 * n:
        raise NumericalError("exponentiation exceeded its Lipschitz bound")

    dist_u = operator_norm(x_centered.mat - centered_u.mat)
    dist_v = operator_norm(y_centered.mat - centered_v.mat)
    if dist_u > herm_dist_a + coeffs_u.tail + 1e-10 * n:
        raise NumericalError("distance to X exceeds log distance plus tail slack")
    if dist_v > herm_dist_b + coeffs_v.tail + 1e-10 * n:
        raise NumericalError("distance to Y exceeds log distance plus tail slack")

    x_mat = np.exp(1j * zeta1) * x_centered.mat
    y_mat = np.exp(1j * zeta2) * y_centered.mat
    x = UnitaryMatrix.from_array(x_mat, tol)
    y = UnitaryMatrix.from_array(y_mat, tol)
    comm_after = operator_norm(commutator(x_mat, y_mat))
    if comm_after > tol.commute(n):
        raise NumericalError(
            f"output commutator {comm_after:.3e} exceeds tolerance {tol.commute(n):.3e}"
        )

    return PipelineResult(
        x=x,
        y=y,
        dist_u=dist_u,
        dist_v=dist_v,
        comm_before=eps,
        comm_after=comm_after,
        bound=bound,
        herm_dist_a=herm_dist_a,
        herm_dist_b=herm_dist_b,
        exp_dist_a=exp_dist_a,
        exp_dist_b=exp_dist_b,
        zeta1=zeta1,
        zeta2=zeta2,
        gap1=gap1,
        gap2=gap2,
        gamma1=gamma1,
        gamma2=gamma2,
        trunc_order1=k1,
        trunc_order2=k2,
        tail1=coeffs_u.tail,
        tail2=coeffs_v.tail,
        converged=pair.converged,
        sweeps=pair.sweeps,
    )
