"""End-to-end pipeline behavior and the commutator bound report."""

import numpy as np
import pytest

from nearcomm import (
    GapTooSmallError,
    LaurentCoefficients,
    PipelineOptions,
    commutator,
    gen_almost_commuting_pair,
    gen_voiculescu_pair,
    laurent_coefficients,
    log_commutator_bound,
    near_commuting_unitaries,
    operator_norm,
)
from nearcomm.pipeline import shift_to_unit_window, unshift_from_unit_window


def single_term_coefficients() -> LaurentCoefficients:
    """c_{-1} = -i, c_0 = 0, c_1 = i; weighted sum 2."""
    return LaurentCoefficients(
        gamma=1.0,
        trunc_order=1,
        coeffs=np.array([-1j, 0.0, 1j]),
        c_emp=1.0,
        tail=0.0,
    )


class TestLogCommutatorBound:
    def test_zero_epsilon(self):
        lc = laurent_coefficients(0.5, 50)
        report = log_commutator_bound(lc, lc, 0.0)
        assert report.predicted == 0.0

    def test_single_term_hand_value(self):
        # sum |j| |c_j| = 2 per set, so alpha = 2 * 2 = 4
        lc = single_term_coefficients()
        report = log_commutator_bound(lc, lc, 0.5)
        assert report.alpha_emp == pytest.approx(4.0, abs=1e-14)
        assert report.predicted == pytest.approx(2.0, abs=1e-14)

    def test_alpha_scales_inverse_gamma(self):
        # sum_k |k||c_k| = 2 sum_k |X(gamma k)| behaves like const/gamma, so
        # alpha over two equal sets should fit a log-log slope near -2
        gammas = np.array([0.2, 0.3, 0.5, 0.8])
        alphas = []
        for g in gammas:
            lc = laurent_coefficients(float(g), 2000)
            alphas.append(log_commutator_bound(lc, lc, 1.0).alpha_emp)
        slope = np.polyfit(np.log(gammas), np.log(alphas), 1)[0]
        assert slope == pytest.approx(-2.0, abs=0.4)

    def test_normalized_constant(self):
        lc = single_term_coefficients()
        report = log_commutator_bound(lc, lc, 1.0, delta1=0.5, delta2=0.25)
        assert report.alpha_normalized == pytest.approx(4.0 * 0.5 * 0.25)


class TestNormalizationWindow:
    def test_round_trip(self):
        rng = np.random.default_rng(31)
        z = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
        h = (z + z.conj().T) / 2 + np.pi * np.eye(6)
        back = unshift_from_unit_window(shift_to_unit_window(h))
        assert operator_norm(back - h) <= 1e-13 * 6

    def test_spectrum_lands_in_unit_ball(self):
        h = np.diag([0.3, np.pi, 2 * np.pi - 0.3])
        w = np.linalg.eigvalsh(shift_to_unit_window(h))
        assert np.all(np.abs(w) < 1.0)


class TestNearCommutingUnitaries:
    def test_commuting_diagonal_inputs(self):
        u = np.diag(np.exp(1j * np.array([0.9, 2.0, 4.0])))
        v = np.diag(np.exp(1j * np.array([1.5, 3.0, 5.2])))
        res = near_commuting_unitaries(u, v)
        assert res.dist_u + res.dist_v <= 1e-6
        assert res.comm_after <= 1e-10 * 3

    def test_voiculescu_rejected(self):
        u, v = gen_voiculescu_pair(16)
        with pytest.raises(GapTooSmallError) as info:
            near_commuting_unitaries(u, v, PipelineOptions(min_gap=0.3))
        assert info.value.gaps[0] == pytest.approx(np.pi / 16, abs=1e-12)

    def test_perturbed_pair_full_contract(self):
        u, v, eps = gen_almost_commuting_pair(8, 1.0, 1e-3, 77)
        res = near_commuting_unitaries(u, v)
        n = 8
        assert res.comm_after <= 1e-10 * n
        assert res.dist_u + res.dist_v <= 0.5
        assert res.x.defect <= 1e-8 * n and res.y.defect <= 1e-8 * n
        # measured log commutator within predicted bound plus truncation slack
        slack = 2 * (res.tail1 * 2 * np.pi + res.tail2 * 2 * np.pi)
        assert res.bound.measured_log_comm <= res.bound.predicted + slack
        # exponentiation Lipschitz bound
        assert res.exp_dist_a <= res.herm_dist_a + 1e-10 * n
        assert res.exp_dist_b <= res.herm_dist_b + 1e-10 * n
        # distance chain
        assert res.dist_u <= res.herm_dist_a + res.tail1 + 1e-10 * n
        assert res.dist_v <= res.herm_dist_b + res.tail2 + 1e-10 * n

    def test_distance_decreases_with_epsilon(self):
        sums = []
        for eps in (1e-1, 1e-2, 1e-3):
            vals = []
            for seed in (1, 2, 3):
                u, v, _ = gen_almost_commuting_pair(8, 1.0, eps, seed)
                res = near_commuting_unitaries(u, v)
                vals.append(res.dist_u + res.dist_v)
            sums.append(np.median(vals))
        assert sums[0] > sums[1] > sums[2]

    def test_phase_undo_preserves_commutator(self):
        u, v, _ = gen_almost_commuting_pair(6, 1.0, 1e-2, 41)
        res = near_commuting_unitaries(u, v)
        before = operator_norm(
            commutator(
                np.exp(-1j * res.zeta1) * res.x.mat, np.exp(-1j * res.zeta2) * res.y.mat
            )
        )
        assert abs(before - res.comm_after) <= 1e-14

    def test_scalar_inputs(self):
        u = np.array([[np.exp(2.1j)]])
        v = np.array([[np.exp(0.7j)]])
        res = near_commuting_unitaries(u, v)
        assert res.comm_after == 0.0
        assert res.dist_u + res.dist_v <= 1e-6

    def test_unconverged_is_flagged_but_commuting(self):
        u, v, _ = gen_almost_commuting_pair(8, 1.0, 5e-2, 13)
        opts = PipelineOptions(jade=__import__("nearcomm").JadeOptions(max_sweeps=1))
        res = near_commuting_unitaries(u, v, opts)
        assert not res.converged
        assert res.comm_after <= 1e-10 * 8

    def test_flat_summary_keys(self):
        u, v, _ = gen_almost_commuting_pair(4, 1.0, 1e-3, 19)
        res = near_commuting_unitaries(u, v)
        flat = res.flat()
        for key in ("dist_u", "dist_v", "comm_after", "predicted_bound", "trunc_order1"):
            assert key in flat
