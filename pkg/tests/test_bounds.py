import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as hs

from conftest import PAULI
from witness_bounds import bounds as B
from witness_bounds import linalg as la
from witness_bounds import states as st
from witness_bounds.errors import (
    ContractViolation,
    InvalidOperatorError,
    InvalidParameterError,
    NotApplicableError,
    NotConstructibleError,
)

seeds = hs.integers(0, 2**63 - 1)
DIMS = [(2, 2), (2, 3), (3, 3)]


def qubit_grid(n=48):
    """Pure qubit states on an (n x 2n) polar/azimuth grid."""
    th = np.linspace(0, np.pi, n)
    ph = np.linspace(0, 2 * np.pi, 2 * n, endpoint=False)
    T, P = np.meshgrid(th, ph, indexing="ij")
    return np.stack([np.cos(T / 2), np.exp(1j * P) * np.sin(T / 2)], axis=-1).reshape(-1, 2)


def grid_alpha(L):
    """Brute-force two-qubit product-state maximum of <ab|L|ab>."""
    v = qubit_grid()
    Lt = L.reshape(2, 2, 2, 2)
    # M[p, q] = <a_p b_q| L |a_p b_q>
    M = np.einsum("pi,qk,ikjl,pj,ql->pq", v.conj(), v.conj(), Lt, v, v, optimize=True)
    return M.real.max()


def bell_L(bell):
    return bell.density().matrix


# -- alpha --------------------------------------------------------------------


def test_alpha_rank_one_examples(bell, ket00):
    assert B.alpha_rank_one(ket00) == pytest.approx(1, abs=1e-15)
    assert B.alpha_rank_one(bell) == pytest.approx(0.5, abs=1e-15)
    assert B.alpha_rank_one(st.pure_family_2x2(1.0)) == pytest.approx(2 / 3, abs=1e-15)


def test_alpha_correlation_examples(bell):
    assert B.alpha_correlation(np.eye(4) / 4, 2, 2) == pytest.approx(0.25, abs=1e-15)
    assert B.alpha_correlation(np.eye(9) / 9, 3, 3) == pytest.approx(1 / 9, abs=1e-15)
    assert B.alpha_correlation(bell_L(bell), 2, 2) == pytest.approx(0.5, abs=1e-15)
    half = la.bloch_compose(la.BlochForm(2, 2, np.zeros(3), np.zeros(3), 0.5 * np.diag([1, -1, 1])))
    assert B.alpha_correlation(half, 2, 2) == pytest.approx(0.375, abs=1e-15)


def test_alpha_correlation_rejects_local_terms(ket00):
    with pytest.raises(ContractViolation):
        B.alpha_correlation(ket00.density().matrix, 2, 2)


def test_closed_forms_against_grid_oracle(bell):
    L1 = st.pure_family_2x2(1.0).density().matrix
    assert grid_alpha(L1) == pytest.approx(2 / 3, abs=2e-3)
    assert grid_alpha(L1) <= 2 / 3 + 1e-12
    for seed in range(5):
        L = st.random_correlation_operator(2, 2, seed)
        alpha = B.alpha_correlation(L, 2, 2)
        g = grid_alpha(L)
        assert g <= alpha + 1e-12
        assert g == pytest.approx(alpha, abs=5e-3)


def test_qutrit_maximally_entangled_alpha():
    phi = la.StateVector.normalized(3, 3, np.eye(3).ravel())
    L = phi.density().matrix
    assert B.alpha_correlation(L, 3, 3) == pytest.approx(1 / 3, abs=1e-14)
    assert B.alpha_variational(L, 3, 3) == pytest.approx(1 / 3, abs=1e-10)


def test_unit_correlation_constant_underestimates_qutrit_maximum():
    # With kappa = 1 the qutrit formula would give 1/9 + 4*1.5/81 = 15/81,
    # below the product-state maximum 1/3 reached by |00>.
    phi = la.StateVector.normalized(3, 3, np.eye(3).ravel())
    L = phi.density().matrix
    R = la.bloch_decompose(L, 3, 3).R
    unit = 1 / 9 + 4 * la.spectral_norm(R) / 81
    assert unit == pytest.approx(15 / 81)
    ket00 = np.zeros(9)
    ket00[0] = 1
    assert ket00 @ L.real @ ket00 == pytest.approx(1 / 3)
    assert B.correlation_constant(3, 3) == 3
    assert B.correlation_constant(2, 2) == 1


def test_alpha_variational_examples(bell):
    assert B.alpha_variational(np.eye(4) / 4, 2, 2) == pytest.approx(0.25, abs=1e-15)
    assert B.alpha_variational(np.eye(6) / 6, 2, 3) == pytest.approx(1 / 6, abs=1e-15)
    assert B.alpha_variational(bell_L(bell), 2, 2, restarts=20) == pytest.approx(0.5, abs=1e-9)


def test_alpha_variational_rejects_non_hermitian():
    M = np.eye(4, dtype=complex) / 4
    M[0, 3] = 0.2
    with pytest.raises(ContractViolation):
        B.alpha_variational(M, 2, 2)


def test_alpha_variational_deterministic():
    L = st.random_correlation_operator(3, 3, 3)
    assert B.alpha_variational(L, 3, 3, seed=5) == B.alpha_variational(L, 3, 3, seed=5)


@settings(max_examples=25, deadline=None)
@given(seed=seeds, dims=hs.sampled_from([(2, 2), (3, 3), (2, 3)]))
def test_oracle_matches_rank_one(seed, dims):
    psi = st.random_pure(*dims, seed)
    assert abs(B.alpha_variational(psi.density().matrix, *dims, seed=seed) - B.alpha_rank_one(psi)) < 1e-8


@settings(max_examples=25, deadline=None)
@given(seed=seeds, dims=hs.sampled_from(DIMS))
def test_oracle_never_exceeds_correlation_closed_form(seed, dims):
    L = st.random_correlation_operator(*dims, seed)
    gap = B.alpha_variational(L, *dims, seed=seed) - B.alpha_correlation(L, *dims)
    assert gap <= 1e-8
    if dims == (2, 2):
        assert abs(gap) < 1e-8


# -- witness assembly -----------------------------------------------------------


def test_build_witness_examples(bell, ket00):
    W0 = B.build_witness(np.eye(4) / 4, 2, 2, 0.25)
    assert np.max(np.abs(W0.W)) == 0
    W = B.build_witness(bell_L(bell), 2, 2, 0.5)
    np.testing.assert_allclose(W.W, 0.5 * np.eye(4) - bell_L(bell))
    assert np.trace(W.W @ bell.density().matrix).real == pytest.approx(-0.5)
    assert B.witness_expectation(W, bell.density()) == pytest.approx(0.5)
    assert np.trace(W.W @ ket00.density().matrix).real == pytest.approx(0.0, abs=1e-15)
    maxmix = la.DensityMatrix(2, 2, np.eye(4) / 4)
    assert B.witness_expectation(W0, maxmix) == 0


def test_build_witness_rejects_operators_outside_m1(bell):
    with pytest.raises(InvalidOperatorError, match="trace"):
        B.build_witness(np.eye(4) / 2, 2, 2, 0.5)
    with pytest.raises(InvalidOperatorError, match="PSD"):
        B.build_witness(np.diag([0.7, 0.7, -0.2, -0.2]), 2, 2, 0.7)
    with pytest.raises(InvalidOperatorError):
        B.build_witness(np.eye(6) / 6, 2, 2, 0.2)
    with pytest.raises(InvalidParameterError):
        B.build_witness(bell_L(bell), 2, 2, -0.1)


def test_witness_expectation_dimension_mismatch(bell):
    W = B.build_witness(bell_L(bell), 2, 2, 0.5)
    with pytest.raises(ContractViolation):
        B.witness_expectation(W, st.random_density(2, 3, 0))


# -- closed-form bounds -----------------------------------------------------------


def test_bound_pure_examples(bell, ket00):
    assert B.bound_pure(ket00) == pytest.approx(0, abs=1e-15)
    assert B.bound_pure(bell) == pytest.approx(0.5, abs=1e-15)


@pytest.mark.parametrize("a", np.linspace(0, 2, 21))
def test_bound_pure_fig1_closed_form(a):
    expected = math.sqrt(2) * a / (2 * a * a + 1)
    assert B.bound_pure(st.pure_family_2x2(a)) == pytest.approx(expected, abs=1e-12)


def test_bound_pure_3x3_family_value():
    # mu = (3/5, 1/5, 1/5) at a = 1
    expected = ((math.sqrt(0.6) + 2 * math.sqrt(0.2)) ** 2 - 1) / 3
    assert B.bound_pure(st.pure_family_3x3(1.0)) == pytest.approx(expected, abs=1e-14)


def test_bound_mixed_examples(bell):
    assert B.bound_mixed(la.DensityMatrix(2, 2, np.eye(4) / 4)) == 0
    assert B.bound_mixed(bell.density()) == pytest.approx(1 / (4 * math.sqrt(3)), abs=1e-14)
    assert B.bound_mixed(st.isotropic_mix(0.1, bell)) == pytest.approx(2 * 1.7 / (16 * math.sqrt(3)), abs=1e-14)


def test_bound_qubit_examples(bell):
    assert B.bound_qubit(la.DensityMatrix(2, 2, np.eye(4) / 4)) == 0
    assert B.bound_qubit(bell.density()) == pytest.approx(0.5, abs=1e-14)
    assert B.bound_qubit(st.isotropic_mix(0.1, bell)) == pytest.approx(0.425, abs=1e-14)
    assert B.bound_qubit(st.isotropic_mix(0.1, bell)) > B.bound_mixed(st.isotropic_mix(0.1, bell))


def test_bound_qubit_not_applicable():
    with pytest.raises(NotApplicableError):
        B.bound_qubit(st.random_density(3, 3, 0))
    with pytest.raises(NotApplicableError):
        B.construct_L_qubit(st.random_density(2, 3, 0))


TETRA = np.array([[-1, -1, -1], [1, 1, -1], [1, -1, 1], [-1, 1, 1]], dtype=float)


def test_bound_qubit_matches_search_over_tetrahedron():
    """Random search over the PSD tetrahedron of diagonal correlation vectors."""
    rng = np.random.default_rng(11)
    pts = rng.dirichlet(np.ones(4), size=200_000) @ TETRA
    pts = np.vstack([pts, TETRA])
    for seed in range(10):
        rho = st.random_density(2, 2, seed) if seed else st.isotropic_mix(0.1, st.pure_family_2x2(0.4))
        R = la.bloch_decompose(rho.matrix, 2, 2).R
        m = la.singular_values(R)
        m_signed = np.array([m[0], m[1], np.sign(np.linalg.det(R)) * m[2]])
        # every orthogonally diagonal alignment: all coordinate permutations/sign flips of r
        values = (pts @ m_signed - np.max(np.abs(pts), axis=1)) / 4
        best = max(values.max(), 0.0)
        bound = B.bound_qubit(rho)
        assert best <= bound + 1e-12
        assert best >= bound - 2e-2


# -- constructive witnesses -------------------------------------------------------


def test_construct_pure_examples(bell, ket00):
    w = B.construct_L_pure(bell)
    np.testing.assert_allclose(w.L, bell_L(bell), atol=1e-15)
    assert w.alpha == pytest.approx(0.5)
    assert B.witness_expectation(B.construct_L_pure(ket00), ket00.density()) == pytest.approx(0, abs=1e-15)
    psi = st.pure_family_2x2(1.0)
    assert B.witness_expectation(B.construct_L_pure(psi), psi.density()) == pytest.approx(math.sqrt(2) / 3, abs=1e-14)


def test_construct_mixed_examples(bell, ket00):
    w = B.construct_L_mixed(bell.density())
    assert np.trace(w.L).real == pytest.approx(1)
    assert np.linalg.eigvalsh(w.L)[0] >= -1e-12
    assert B.witness_expectation(w, bell.density()) == pytest.approx(1 / (4 * math.sqrt(3)), abs=1e-14)
    w1 = B.construct_L_mixed(ket00.density())  # R = diag(0, 0, 1), rank one
    assert w1.meta["c"] == 2
    assert la.frobenius_norm(la.bloch_decompose(w1.L, 2, 2).R) == pytest.approx(0.5)
    with pytest.raises(NotConstructibleError):
        B.construct_L_mixed(la.DensityMatrix(2, 2, np.eye(4) / 4))


def test_construct_qubit_examples(bell):
    w = B.construct_L_qubit(bell.density())
    assert w.meta["vertex"] == (1.0, 1.0, -1.0)
    assert B.witness_expectation(w, bell.density()) == pytest.approx(0.5, abs=1e-14)
    maxmix = la.DensityMatrix(2, 2, np.eye(4) / 4)
    w0 = B.construct_L_qubit(maxmix)
    assert w0.meta["vertex"] == (0.0, 0.0, 0.0)
    assert B.witness_expectation(w0, maxmix) == pytest.approx(0, abs=1e-15)
    iso = st.isotropic_mix(0.1, bell)
    wi = B.construct_L_qubit(iso)
    assert wi.meta["vertex"] == (1.0, 1.0, -1.0)
    assert B.witness_expectation(wi, iso) == pytest.approx(0.425, abs=1e-14)


@settings(max_examples=60, deadline=None)
@given(seed=seeds, dims=hs.sampled_from(DIMS))
def test_constructive_consistency(seed, dims):
    psi = st.random_pure(*dims, seed)
    rho = st.random_density(*dims, seed)
    assert abs(B.witness_expectation(B.construct_L_pure(psi), psi.density()) - B.bound_pure(psi)) < 1e-10
    w = B.construct_L_mixed(rho)
    assert np.linalg.eigvalsh(w.L)[0] >= -1e-9
    assert abs(B.witness_expectation(w, rho) - B.bound_mixed(rho)) < 1e-10
    q = st.random_density(2, 2, seed)
    assert abs(B.witness_expectation(B.construct_L_qubit(q), q) - B.bound_qubit(q)) < 1e-10


# -- aggregate and invariants -------------------------------------------------------


def test_evaluate_examples(bell):
    r = B.evaluate(la.DensityMatrix(2, 2, np.eye(4) / 4))
    assert r.bound_pure is None and r.bound_mixed <= 0 and r.bound_qubit <= 0
    assert not r.entangled
    r = B.evaluate(bell.density())
    assert r.best == pytest.approx(0.5) and r.entangled
    assert r.applicable == {"bound_pure": True, "bound_mixed": True, "bound_qubit": True}
    r = B.evaluate(st.random_density(3, 3, 1))
    assert r.bound_pure is None and r.bound_qubit is None and r.best == r.bound_mixed


@settings(max_examples=200, deadline=None)
@given(seed=seeds, dims=hs.sampled_from(DIMS), k=hs.integers(1, 4))
def test_soundness_on_separable_states(seed, dims, k):
    report = B.evaluate(st.random_separable_mixed(*dims, k, seed))
    for v in (report.bound_pure, report.bound_mixed, report.bound_qubit):
        assert v is None or v <= 1e-8
    assert not report.entangled


@settings(max_examples=60, deadline=None)
@given(seed=seeds, dims=hs.sampled_from(DIMS), k=hs.integers(1, 4))
def test_witnesses_nonnegative_on_separable_states(seed, dims, k):
    ws = [B.construct_L_pure(st.random_pure(*dims, seed)), B.construct_L_mixed(st.random_density(*dims, seed))]
    if dims == (2, 2):
        ws.append(B.construct_L_qubit(st.random_density(2, 2, seed + 1)))
    sigma = st.random_separable_mixed(*dims, k, seed + 2)
    for w in ws:
        assert np.trace(w.W @ sigma.matrix).real >= -1e-9


@settings(max_examples=40, deadline=None)
@given(seed=seeds, dims=hs.sampled_from(DIMS))
def test_local_unitary_invariance(seed, dims):
    rho = st.random_density(*dims, seed)
    rng = st.make_rng(seed)
    for _ in range(3):
        rot = st.conjugate_local(rho, *st.random_local_unitary_pair(*dims, rng))
        assert abs(B.bound_mixed(rot) - B.bound_mixed(rho)) < 1e-9
        if dims == (2, 2):
            assert abs(B.bound_qubit(rot) - B.bound_qubit(rho)) < 1e-9


@settings(max_examples=40, deadline=None)
@given(seed=seeds, dims=hs.sampled_from(DIMS))
def test_continuity_under_white_noise(seed, dims):
    rho = st.random_density(*dims, seed)
    n = dims[0] * dims[1]
    for eps in (1e-2, 1e-3, 1e-4):
        near = la.DensityMatrix(*dims, (1 - eps) * rho.matrix + eps * np.eye(n) / n)
        assert abs(B.bound_mixed(near) - B.bound_mixed(rho)) <= eps
        if dims == (2, 2):
            assert abs(B.bound_qubit(near) - B.bound_qubit(rho)) <= eps


@settings(max_examples=40, deadline=None)
@given(seed=seeds, dims=hs.sampled_from(DIMS))
def test_fixed_witness_family_is_convex(seed, dims):
    ws = [B.construct_L_pure(st.random_pure(*dims, seed + i)) for i in range(2)]
    ws.append(B.construct_L_mixed(st.random_density(*dims, seed)))
    r1, r2 = st.random_density(*dims, seed + 1), st.random_density(*dims, seed + 2)

    def f(r):
        return max(B.witness_expectation(w, r) for w in ws)

    for lam in (0.0, 0.25, 0.5, 0.75, 1.0):
        mix = la.DensityMatrix(*dims, lam * r1.matrix + (1 - lam) * r2.matrix)
        assert f(mix) <= lam * f(r1) + (1 - lam) * f(r2) + 1e-12


def test_pure_state_agreement_on_fig1_grid():
    for a in np.linspace(0, 2, 201):
        psi = st.pure_family_2x2(float(a))
        assert abs(B.bound_pure(psi) - B.bound_qubit(psi.density())) < 1e-9


def test_qubit_bound_dominates_mixed_bound_on_families():
    for x in (0.0, 0.01, 0.1, 0.5):
        for a in np.linspace(0, 2, 41):
            rho = st.isotropic_mix(x, st.pure_family_2x2(float(a)))
            assert B.bound_qubit(rho) >= B.bound_mixed(rho) - 1e-12
