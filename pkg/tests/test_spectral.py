"""Eigensystems, spectral gaps, and gap centering."""

import numpy as np
import pytest

from nearcomm import (
    Eigensystem,
    InvalidInputError,
    ToleranceConfig,
    commutator,
    gen_gapped_unitary,
    haar_unitary,
    largest_gap,
    center_gap,
    operator_norm,
    stream_rng,
    unitary_eigensystem,
    wrap_to_pi,
)

TWO_PI = 2 * np.pi


class TestEigensystem:
    def test_identity(self):
        es = unitary_eigensystem(np.eye(3))
        assert np.allclose(es.angles, 0.0, atol=1e-12)

    def test_diag_i_minus_i(self):
        es = unitary_eigensystem(np.diag([1j, -1j]))
        assert np.allclose(es.angles, [np.pi / 2, 3 * np.pi / 2], atol=1e-12)

    def test_reconstruction_haar(self):
        u = haar_unitary(16, stream_rng(5))
        es = unitary_eigensystem(u)
        assert operator_norm(es.reconstruct() - u) <= 1e-10 * 16

    def test_angles_sorted_in_range(self):
        u = haar_unitary(12, stream_rng(6))
        es = unitary_eigensystem(u)
        assert np.all(np.diff(es.angles) >= 0)
        assert np.all((es.angles >= 0) & (es.angles < TWO_PI))

    def test_basis_orthonormal(self):
        u = haar_unitary(10, stream_rng(7))
        es = unitary_eigensystem(u)
        gram = es.basis.conj().T @ es.basis
        assert operator_norm(gram - np.eye(10)) <= 1e-10 * 10

    def test_rejects_non_unitary(self):
        with pytest.raises(InvalidInputError):
            unitary_eigensystem(np.diag([1.1, 1.0]))

    def test_modulus_check_behind_loose_tolerance(self):
        # with the defect gate opened wide, the radial-projection guard fires
        loose = ToleranceConfig(unitarity_tol=1.0)
        with pytest.raises(InvalidInputError, match="modulus"):
            unitary_eigensystem(np.diag([1.0 + 2e-5, 1.0]), tolerances=loose)


class TestLargestGap:
    def test_two_opposite_eigenvalues_tiebreak(self):
        # arcs (pi/2, 3pi/2) and (3pi/2, pi/2 + 2pi) both have length pi;
        # the tie-break picks the arc centered at 0
        es = Eigensystem(np.array([np.pi / 2, 3 * np.pi / 2]), np.eye(2, dtype=complex))
        gap = largest_gap(es)
        assert gap.center == pytest.approx(0.0, abs=1e-15)
        assert gap.half_width == pytest.approx(np.pi / 2, abs=1e-15)

    def test_single_eigenvalue(self):
        es = Eigensystem(np.array([np.pi]), np.eye(1, dtype=complex))
        gap = largest_gap(es)
        assert gap.center == pytest.approx(0.0, abs=1e-15)
        assert gap.half_width == pytest.approx(np.pi, abs=1e-15)

    @pytest.mark.parametrize("n", [2, 5, 8])
    def test_equally_spaced(self, n):
        angles = TWO_PI * np.arange(n) / n
        es = Eigensystem(angles, np.eye(n, dtype=complex))
        assert largest_gap(es).half_width == pytest.approx(np.pi / n, abs=1e-12)

    def test_permutation_invariant(self):
        rng = np.random.default_rng(3)
        angles = np.sort(rng.uniform(0, TWO_PI, 9))
        es = Eigensystem(angles, np.eye(9, dtype=complex))
        ref = largest_gap(es)
        perm = rng.permutation(9)
        es_p = Eigensystem(angles[perm], np.eye(9, dtype=complex))
        got = largest_gap(es_p)
        assert got == ref

    def test_repeated_angles_are_legal(self):
        es = Eigensystem(np.array([1.0, 1.0, 4.0]), np.eye(3, dtype=complex))
        gap = largest_gap(es)
        # arcs: (1,1) len 0, (1,4) len 3, (4, 1+2pi) len 2pi-3
        assert gap.half_width == pytest.approx((TWO_PI - 3.0) / 2, abs=1e-12)

    def test_arc_truly_empty(self):
        rng = np.random.default_rng(9)
        angles = np.sort(rng.uniform(0, TWO_PI, 7))
        es = Eigensystem(angles, np.eye(7, dtype=complex))
        gap = largest_gap(es)
        dist = np.abs(wrap_to_pi(angles - gap.center))
        assert np.min(dist) >= gap.half_width - 1e-12


class TestCenterGap:
    def test_already_centered_unchanged(self):
        u = np.diag([np.exp(1j * np.pi / 2), np.exp(-1j * np.pi / 2)])
        cu, zeta, gap = center_gap(u)
        assert zeta == 0.0
        assert np.array_equal(cu.mat, u)

    def test_hand_example(self):
        # angles {0, pi/2}: arcs (0, pi/2) and (pi/2, 2pi); the latter has
        # length 3pi/2 and center 5pi/4
        u = np.diag([1.0, np.exp(1j * np.pi / 2)])
        cu, zeta, gap = center_gap(u)
        assert zeta == pytest.approx(5 * np.pi / 4, abs=1e-12)
        assert np.allclose(cu.mat, np.exp(-1j * zeta) * u, atol=1e-15)
        assert gap.center == pytest.approx(0.0, abs=1e-12)
        assert gap.half_width == pytest.approx(3 * np.pi / 4, abs=1e-12)

    def test_idempotent(self):
        u = gen_gapped_unitary(10, 0.6, 21)
        cu, zeta1, gap1 = center_gap(u)
        cu2, zeta2, gap2 = center_gap(cu)
        assert abs(wrap_to_pi(zeta2)) <= 1e-12
        assert gap2.half_width == pytest.approx(gap1.half_width, abs=1e-10)

    def test_spectrum_avoids_centered_gap(self):
        for seed in range(5):
            u = haar_unitary(9, stream_rng(100, seed))
            cu, _, gap = center_gap(u)
            es = unitary_eigensystem(cu)
            assert np.min(np.abs(wrap_to_pi(es.angles))) > gap.half_width - 1e-10

    def test_phase_preserves_commutator(self):
        rng = np.random.default_rng(12)
        u = haar_unitary(6, stream_rng(101, 0))
        v = haar_unitary(6, stream_rng(101, 1))
        zeta = rng.uniform(0, TWO_PI)
        lhs = commutator(np.exp(1j * zeta) * u, v)
        rhs = np.exp(1j * zeta) * commutator(u, v)
        assert operator_norm(lhs - rhs) <= 1e-13
