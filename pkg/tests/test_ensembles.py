"""Deterministic generators: gapped unitaries, perturbed pairs, clock/shift."""

import numpy as np
import pytest

from nearcomm import (
    InvalidInputError,
    commutator,
    gen_almost_commuting_pair,
    gen_gapped_unitary,
    gen_voiculescu_pair,
    haar_unitary,
    operator_norm,
    stream_rng,
    unitary_eigensystem,
    wrap_to_pi,
)


class TestGappedUnitary:
    def test_scalar_case(self):
        u = gen_gapped_unitary(1, 0.8, 3)
        phase = np.angle(u.mat[0, 0]) % (2 * np.pi)
        assert 0.8 < phase < 2 * np.pi - 0.8

    def test_spectrum_avoids_gap(self):
        u = gen_gapped_unitary(32, 0.5, 11)
        assert u.defect <= 1e-10 * 32
        es = unitary_eigensystem(u)
        assert np.min(np.abs(wrap_to_pi(es.angles))) > 0.5

    def test_seed_determinism(self):
        a = gen_gapped_unitary(16, 0.7, 123)
        b = gen_gapped_unitary(16, 0.7, 123)
        assert np.array_equal(a.mat, b.mat)
        c = gen_gapped_unitary(16, 0.7, 124)
        assert not np.array_equal(a.mat, c.mat)

    def test_rejects_bad_delta(self):
        with pytest.raises(InvalidInputError):
            gen_gapped_unitary(4, 0.0, 1)
        with pytest.raises(InvalidInputError):
            gen_gapped_unitary(4, np.pi, 1)


class TestHaar:
    def test_unitary(self):
        q = haar_unitary(20, stream_rng(1))
        assert operator_norm(q.conj().T @ q - np.eye(20)) <= 1e-12 * 20

    def test_deterministic_given_stream(self):
        assert np.array_equal(haar_unitary(6, stream_rng(9, 2)), haar_unitary(6, stream_rng(9, 2)))


class TestAlmostCommutingPair:
    def test_zero_eps_commutes(self):
        u, v, eps = gen_almost_commuting_pair(8, 1.0, 0.0, 5)
        assert eps <= 1e-12 * 8
        assert operator_norm(commutator(u.mat, v.mat)) == eps

    @pytest.mark.parametrize("eps_target", [1e-4, 1e-2, 1e-1])
    def test_eps_bound(self, eps_target):
        for seed in range(4):
            _, _, eps = gen_almost_commuting_pair(12, 1.0, eps_target, seed)
            assert eps <= 2 * eps_target * (1 + 1e-10)

    def test_gaps_survive_perturbation(self):
        u, v, _ = gen_almost_commuting_pair(16, 1.0, 0.1, 2)
        for m in (u, v):
            es = unitary_eigensystem(m)
            assert np.min(np.abs(wrap_to_pi(es.angles))) >= 0.5

    def test_determinism(self):
        a = gen_almost_commuting_pair(10, 0.9, 1e-2, 42)
        b = gen_almost_commuting_pair(10, 0.9, 1e-2, 42)
        assert np.array_equal(a[0].mat, b[0].mat)
        assert np.array_equal(a[1].mat, b[1].mat)
        assert a[2] == b[2]

    def test_rejects_negative_eps(self):
        with pytest.raises(InvalidInputError):
            gen_almost_commuting_pair(4, 1.0, -0.1, 1)


class TestVoiculescu:
    @pytest.mark.parametrize("n", list(range(2, 129, 7)) + [128])
    def test_commutator_norm_formula(self, n):
        u, v = gen_voiculescu_pair(n)
        got = operator_norm(commutator(u.mat, v.mat))
        assert got == pytest.approx(2 * np.sin(np.pi / n), abs=1e-12)

    def test_hand_values(self):
        u2, v2 = gen_voiculescu_pair(2)
        assert operator_norm(commutator(u2.mat, v2.mat)) == pytest.approx(2.0, abs=1e-12)
        u4, v4 = gen_voiculescu_pair(4)
        assert operator_norm(commutator(u4.mat, v4.mat)) == pytest.approx(np.sqrt(2), abs=1e-12)

    def test_equally_spaced_spectra(self):
        u, v = gen_voiculescu_pair(16)
        for m in (u, v):
            angles = np.sort(unitary_eigensystem(m).angles)
            assert np.allclose(np.diff(angles), 2 * np.pi / 16, atol=1e-10)

    def test_rejects_small_n(self):
        with pytest.raises(InvalidInputError):
            gen_voiculescu_pair(1)
