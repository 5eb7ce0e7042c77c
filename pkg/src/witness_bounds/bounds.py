"""Witness operators and lower bounds on the witness-based entanglement measure.

Every test operator ``L`` is normalized to unit trace. A witness is
``W = alpha(L) I - L`` where ``alpha(L)`` is the largest expectation of ``L``
over product pure states, so ``-tr(W rho)`` lower-bounds the measure for
any admissible ``L``.

Correlation-only operators ``L = (I + sum r_ij l_i (x) l_j) / (d1 d2)`` use
the constant ``kappa = sqrt(d1 (d1-1) d2 (d2-1)) / 2``, the product of the
Bloch-vector lengths of local pure states. ``kappa = 1`` for two qubits;
for larger systems it keeps ``alpha`` an upper bound on the product-state
maximum, which is what makes the resulting witnesses valid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import (
    ContractViolation,
    InvalidOperatorError,
    InvalidParameterError,
    NotApplicableError,
    NotConstructibleError,
)
from .linalg import (
    HERMITIAN_TOL,
    PSD_TOL,
    TRACE_TOL,
    BlochForm,
    DensityMatrix,
    StateVector,
    bloch_compose,
    bloch_decompose,
    is_hermitian,
    min_eigenvalue,
    schmidt_coefficients,
    singular_values,
    spectral_norm,
)
from .states import haar_vector, make_rng

VERDICT_TOL = 1e-9
PURITY_TOL = 1e-9
ZERO_CORRELATION_TOL = 1e-12
RANK_RTOL = 1e-10
LOCAL_VECTOR_TOL = 1e-10

# Vertices of the reduced tetrahedron searched by the two-qubit bound.
# (1, 0, 0) is omitted: it never beats (1, 1, -1).
QUBIT_VERTICES = np.array([[0.0, 0.0, 0.0], [1.0, 1.0, -1.0], [1 / 3, 1 / 3, 1 / 3]])


@dataclass(frozen=True)
class WitnessOperator:
    L: np.ndarray
    d1: int
    d2: int
    alpha: float
    W: np.ndarray
    trace_target: float = 1.0
    meta: dict = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class BoundReport:
    d1: int
    d2: int
    purity: float
    bound_pure: Optional[float]
    bound_mixed: float
    bound_qubit: Optional[float]
    best: float
    entangled: bool

    @property
    def applicable(self) -> dict:
        return {
            "bound_pure": self.bound_pure is not None,
            "bound_mixed": True,
            "bound_qubit": self.bound_qubit is not None,
        }


def correlation_constant(d1: int, d2: int) -> float:
    """Largest ``s . R t`` scale: product of local pure-state Bloch lengths."""
    return math.sqrt(d1 * (d1 - 1) * d2 * (d2 - 1)) / 2


def correlation_rank(R: np.ndarray) -> int:
    sv = singular_values(R)
    if sv.size == 0 or sv[0] <= ZERO_CORRELATION_TOL:
        return 0
    return int(np.sum(sv > RANK_RTOL * sv[0]))


# -- alpha(L) -------------------------------------------------------------------


def alpha_rank_one(L_pure: StateVector) -> float:
    """Product-state maximum of ``|psi><psi|``: the largest squared Schmidt coefficient."""
    return float(schmidt_coefficients(L_pure)[0])


def alpha_correlation(L, d1: int, d2: int) -> float:
    """Product-state maximum for an operator with vanishing local Bloch vectors.

    Returns ``1/(d1 d2) + 4 kappa ||R_L||_2 / (d1 d2)^2``. Exact for two
    qubits; an upper bound in higher dimensions.
    """
    form = bloch_decompose(L, d1, d2)
    local = max(np.max(np.abs(form.s), initial=0.0), np.max(np.abs(form.t), initial=0.0))
    if local > LOCAL_VECTOR_TOL:
        raise ContractViolation(
            f"operator has nonzero local Bloch vectors (max |s|,|t| entry {local:.3g})"
        )
    n = d1 * d2
    return 1 / n + 4 * correlation_constant(d1, d2) * spectral_norm(form.R) / n**2


def alpha_variational(
    L,
    d1: int,
    d2: int,
    restarts: int = 20,
    max_iters: int = 500,
    seed=0,
    tol: float = 1e-12,
) -> float:
    """Lower estimate of the product-state maximum of ``<a b|L|a b>``.

    Alternating maximization: with ``|b>`` fixed, the optimal ``|a>`` is the
    top eigenvector of ``(I (x) <b|) L (I (x) |b>)`` and vice versa. Each
    half-step is monotone; a run stops when the relative gain drops below
    ``tol``. The best of ``restarts`` random product starts is returned.
    """
    L = np.asarray(L, dtype=complex)
    n = d1 * d2
    if L.shape != (n, n) or not is_hermitian(L):
        raise ContractViolation("variational oracle needs a Hermitian (d1 d2) x (d1 d2) matrix")
    Lt = L.reshape(d1, d2, d1, d2)
    rng = make_rng(seed)
    best = -np.inf
    for _ in range(max(1, restarts)):
        a = haar_vector(d1, rng)
        b = haar_vector(d2, rng)
        value = np.einsum("i,k,ikjl,j,l->", a.conj(), b.conj(), Lt, a, b).real
        for _ in range(max_iters):
            MA = np.einsum("k,ikjl,l->ij", b.conj(), Lt, b)
            a = np.linalg.eigh((MA + MA.conj().T) / 2)[1][:, -1]
            MB = np.einsum("i,ikjl,j->kl", a.conj(), Lt, a)
            w, v = np.linalg.eigh((MB + MB.conj().T) / 2)
            b = v[:, -1]
            gain = w[-1] - value
            value = max(value, w[-1])
            if gain <= tol * max(abs(value), 1e-300):
                break
        best = max(best, value)
    return float(best)


# -- witness assembly -----------------------------------------------------------


def check_trace_one_psd(L, d1: int, d2: int) -> np.ndarray:
    L = np.asarray(L, dtype=complex)
    n = d1 * d2
    if L.shape != (n, n):
        raise InvalidOperatorError(f"operator has shape {L.shape}, expected ({n}, {n})")
    if not is_hermitian(L, HERMITIAN_TOL):
        raise InvalidOperatorError("operator is not Hermitian")
    tr = np.trace(L).real
    if abs(tr - 1) > TRACE_TOL:
        raise InvalidOperatorError(f"operator trace is {tr:.12g}, expected 1")
    lam = min_eigenvalue(L)
    if lam < -PSD_TOL:
        raise InvalidOperatorError(f"operator is not PSD (minimum eigenvalue {lam:.3g})")
    return L


def build_witness(L, d1: int, d2: int, alpha: float, **meta) -> WitnessOperator:
    """Assemble ``W = alpha I - L`` after checking ``L`` is trace-one PSD."""
    L = check_trace_one_psd(L, d1, d2)
    if not math.isfinite(alpha) or alpha < 0:
        raise InvalidParameterError(f"alpha must be finite and nonnegative, got {alpha!r}")
    W = alpha * np.eye(d1 * d2) - L
    return WitnessOperator(L=L, d1=d1, d2=d2, alpha=float(alpha), W=W, meta=meta)


def witness_expectation(witness: WitnessOperator, rho: DensityMatrix) -> float:
    """``-tr(W rho)``; a lower bound on the measure whenever ``alpha`` is valid."""
    if (witness.d1, witness.d2) != (rho.d1, rho.d2):
        raise ContractViolation(
            f"witness dims ({witness.d1}, {witness.d2}) do not match state dims ({rho.d1}, {rho.d2})"
        )
    return float(-np.sum(witness.W * rho.matrix.T).real)


# -- closed-form bounds -----------------------------------------------------------


def bound_pure(psi: StateVector) -> float:
    """``((sum_i sqrt(mu_i))^2 - 1) / min(d1, d2)`` from the Schmidt coefficients."""
    mu = schmidt_coefficients(psi)
    return float((np.sum(np.sqrt(mu)) ** 2 - 1) / min(psi.d1, psi.d2))


def bound_mixed(rho: DensityMatrix) -> float:
    """Correlation-matrix bound ``2(||R||_1 - kappa) / ((d1 d2)^2 sqrt(rank R))``."""
    R = bloch_decompose(rho.matrix, rho.d1, rho.d2).R
    if np.max(np.abs(R)) <= ZERO_CORRELATION_TOL:
        return 0.0
    sv = singular_values(R)
    rank = int(np.sum(sv > RANK_RTOL * sv[0]))
    kappa = correlation_constant(rho.d1, rho.d2)
    n = rho.d1 * rho.d2
    return float(2 * (np.sum(sv) - kappa) / (n**2 * math.sqrt(rank)))


def _det_sign(R: np.ndarray) -> float:
    return float(np.sign(np.linalg.det(R)))


def bound_qubit(rho: DensityMatrix) -> float:
    """Two-qubit bound from the singular values ``m1 >= m2 >= m3`` of ``R``."""
    if (rho.d1, rho.d2) != (2, 2):
        raise NotApplicableError(f"two-qubit bound needs a 2x2 system, got {rho.d1}x{rho.d2}")
    R = bloch_decompose(rho.matrix, 2, 2).R
    m1, m2, m3 = singular_values(R)
    sm3 = _det_sign(R) * m3
    return float(max(0.0, m1 + m2 - sm3 - 1, (m1 + m2 + sm3 - 1) / 3) / 4)


# -- constructive witnesses -------------------------------------------------------


def construct_L_pure(psi: StateVector) -> WitnessOperator:
    """Maximally entangled projector in the Schmidt basis of ``psi``."""
    d = min(psi.d1, psi.d2)
    u, _, vh = np.linalg.svd(psi.amplitudes.reshape(psi.d1, psi.d2))
    phi = StateVector.normalized(psi.d1, psi.d2, (u[:, :d] @ vh[:d, :]).reshape(-1))
    L = np.outer(phi.amplitudes, phi.amplitudes.conj())
    return build_witness(L, psi.d1, psi.d2, alpha_rank_one(phi), kind="pure")


def construct_L_mixed(rho: DensityMatrix) -> WitnessOperator:
    """Correlation-only ``L`` aligned with the SVD of ``R_rho``, scaled to stay PSD."""
    d1, d2 = rho.d1, rho.d2
    R = bloch_decompose(rho.matrix, d1, d2).R
    if np.max(np.abs(R)) <= ZERO_CORRELATION_TOL:
        raise NotConstructibleError("correlation matrix vanishes; the bound is trivially 0")
    u, sv, vh = np.linalg.svd(R)
    rank = int(np.sum(sv > RANK_RTOL * sv[0]))
    c = 2 * math.sqrt(rank)
    R_L = (u[:, :rank] @ vh[:rank, :]) / c
    form = BlochForm(d1, d2, np.zeros(d1 * d1 - 1), np.zeros(d2 * d2 - 1), R_L)
    L = bloch_compose(form)
    return build_witness(L, d1, d2, alpha_correlation(L, d1, d2), kind="mixed", rank=rank, c=c)


def _proper_svd(R: np.ndarray):
    """``R = O1 diag(sigma) O2^T`` with det O1 = det O2 = +1; only sigma[-1] may be negative."""
    u, sv, vh = np.linalg.svd(R)
    v = vh.T.copy()
    u = u.copy()
    sigma = sv.copy()
    if np.linalg.det(u) < 0:
        u[:, -1] *= -1
        sigma[-1] *= -1
    if np.linalg.det(v) < 0:
        v[:, -1] *= -1
        sigma[-1] *= -1
    return u, sigma, v


def construct_L_qubit(rho: DensityMatrix) -> WitnessOperator:
    """Two-qubit witness whose diagonalized correlation vector is a tetrahedron vertex."""
    if (rho.d1, rho.d2) != (2, 2):
        raise NotApplicableError(f"two-qubit construction needs a 2x2 system, got {rho.d1}x{rho.d2}")
    R = bloch_decompose(rho.matrix, 2, 2).R
    o1, sigma, o2 = _proper_svd(R)
    b = np.array([sigma[0] - 1, sigma[1], sigma[2]])
    idx = int(np.argmax(QUBIT_VERTICES @ b))
    r = QUBIT_VERTICES[idx]
    R_L = o1 @ np.diag(r) @ o2.T
    L = bloch_compose(BlochForm(2, 2, np.zeros(3), np.zeros(3), R_L))
    return build_witness(L, 2, 2, alpha_correlation(L, 2, 2), kind="qubit", vertex=tuple(float(x) for x in r))


# -- aggregate ---------------------------------------------------------------------


def dominant_state(rho: DensityMatrix) -> StateVector:
    w, v = np.linalg.eigh(rho.matrix)
    return StateVector.normalized(rho.d1, rho.d2, v[:, -1])


def evaluate(rho: DensityMatrix) -> BoundReport:
    purity = rho.purity()
    pure = dominant_state(rho) if purity > 1 - PURITY_TOL else None
    b_pure = bound_pure(pure) if pure is not None else None
    b_mixed = bound_mixed(rho)
    b_qubit = bound_qubit(rho) if (rho.d1, rho.d2) == (2, 2) else None
    best = max(v for v in (b_pure, b_mixed, b_qubit) if v is not None)
    return BoundReport(
        d1=rho.d1,
        d2=rho.d2,
        purity=purity,
        bound_pure=b_pure,
        bound_mixed=b_mixed,
        bound_qubit=b_qubit,
        best=best,
        entangled=best > VERDICT_TOL,
    )
