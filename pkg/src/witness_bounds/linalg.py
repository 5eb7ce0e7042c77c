"""Dense linear algebra for bipartite operators.

Composite indices are row-major with the A index major, i.e. the basis
state |i>|k> sits at position ``i * d2 + k``, matching ``np.kron``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ContractViolation, InvalidDimensionError

STATE_NORM_TOL = 1e-12
HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9


def _as_matrix(M) -> np.ndarray:
    M = np.asarray(M)
    if M.ndim != 2:
        raise ContractViolation(f"expected a 2-d matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ContractViolation("matrix has non-finite entries")
    return M


def _check_dims(d1: int, d2: int) -> None:
    if int(d1) != d1 or int(d2) != d2 or d1 < 2 or d2 < 2:
        raise InvalidDimensionError(f"local dimensions must be integers >= 2, got ({d1}, {d2})")


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state of a d1 x d2 system."""

    d1: int
    d2: int
    amplitudes: np.ndarray

    def __post_init__(self):
        _check_dims(self.d1, self.d2)
        amp = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        if amp.shape != (self.d1 * self.d2,):
            raise ContractViolation(
                f"amplitude vector has length {amp.size}, expected {self.d1 * self.d2}"
            )
        if not np.all(np.isfinite(amp)):
            raise ContractViolation("amplitudes have non-finite entries")
        norm = np.linalg.norm(amp)
        if abs(norm - 1) > STATE_NORM_TOL:
            raise ContractViolation(f"state vector norm is {norm!r}, expected 1")
        object.__setattr__(self, "amplitudes", amp)

    @classmethod
    def normalized(cls, d1: int, d2: int, amplitudes) -> StateVector:
        amp = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(amp)
        if norm == 0:
            raise ContractViolation("cannot normalize the zero vector")
        return cls(d1, d2, amp / norm)

    def density(self) -> DensityMatrix:
        return DensityMatrix(self.d1, self.d2, np.outer(self.amplitudes, self.amplitudes.conj()))


@dataclass(frozen=True)
class DensityMatrix:
    """Hermitian, unit-trace, positive semidefinite operator on C^d1 (x) C^d2."""

    d1: int
    d2: int
    matrix: np.ndarray

    def __post_init__(self):
        _check_dims(self.d1, self.d2)
        M = _as_matrix(np.asarray(self.matrix, dtype=complex))
        n = self.d1 * self.d2
        if M.shape != (n, n):
            raise ContractViolation(f"matrix has shape {M.shape}, expected ({n}, {n})")
        herm_err = np.max(np.abs(M - M.conj().T))
        if herm_err > HERMITIAN_TOL:
            raise ContractViolation(f"Hermiticity violated: max |M - M^dagger| = {herm_err:.3g}")
        tr = np.trace(M).real
        if abs(tr - 1) > TRACE_TOL:
            raise ContractViolation(f"trace invariant violated: trace = {tr:.12g}, expected 1")
        min_eig = np.linalg.eigvalsh(M)[0]
        if min_eig < -PSD_TOL:
            raise ContractViolation(
                f"positivity invariant violated: minimum eigenvalue = {min_eig:.3g}"
            )
        object.__setattr__(self, "matrix", M)

    def purity(self) -> float:
        M = self.matrix
        return float(np.real(np.vdot(M, M)))


@dataclass(frozen=True)
class GellMannBasis:
    d: int
    matrices: np.ndarray  # shape (d*d - 1, d, d)

    def __len__(self):
        return len(self.matrices)

    def __iter__(self):
        return iter(self.matrices)

    def __getitem__(self, i):
        return self.matrices[i]


@dataclass(frozen=True)
class BlochForm:
    """Local Bloch vectors ``s``, ``t`` and correlation matrix ``R``."""

    d1: int
    d2: int
    s: np.ndarray
    t: np.ndarray
    R: np.ndarray


@lru_cache(maxsize=None)
def _gell_mann_array(d: int) -> np.ndarray:
    sym, antisym, diag = [], [], []
    for j in range(d):
        for k in range(j + 1, d):
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = m[k, j] = 1
            sym.append(m)
            m = np.zeros((d, d), dtype=complex)
            m[j, k] = -1j
            m[k, j] = 1j
            antisym.append(m)
    for l in range(1, d):
        m = np.zeros((d, d), dtype=complex)
        m[np.arange(l), np.arange(l)] = 1
        m[l, l] = -l
        diag.append(np.sqrt(2 / (l * (l + 1))) * m)
    out = np.array(sym + antisym + diag)
    out.setflags(write=False)
    return out


def gell_mann_basis(d: int) -> GellMannBasis:
    """Generalized Gell-Mann matrices of dimension ``d``.

    Ordered as symmetric pair matrices, antisymmetric pair matrices (both
    lexicographic in (j, k)), then diagonal matrices of increasing size.
    Normalized so that ``tr(l_i l_j) = 2 delta_ij``; for ``d = 2`` this is
    the Pauli triple (X, Y, Z).
    """
    if int(d) != d or d < 2:
        raise InvalidDimensionError(f"Gell-Mann basis needs d >= 2, got {d}")
    return GellMannBasis(int(d), _gell_mann_array(int(d)))


@lru_cache(maxsize=None)
def _product_basis(d1: int, d2: int):
    ga, gb = _gell_mann_array(d1), _gell_mann_array(d2)
    local_a = np.array([np.kron(g, np.eye(d2)) for g in ga])
    local_b = np.array([np.kron(np.eye(d1), g) for g in gb])
    corr = np.array([[np.kron(a, b) for b in gb] for a in ga])
    for arr in (local_a, local_b, corr):
        arr.setflags(write=False)
    return local_a, local_b, corr


def bloch_decompose(op, d1: int, d2: int) -> BlochForm:
    """Expand a Hermitian unit-trace operator in the Gell-Mann product basis."""
    _check_dims(d1, d2)
    op = _as_matrix(np.asarray(op, dtype=complex))
    n = d1 * d2
    if op.shape != (n, n):
        raise ContractViolation(f"operator has shape {op.shape}, expected ({n}, {n})")
    if np.max(np.abs(op - op.conj().T)) > HERMITIAN_TOL:
        raise ContractViolation("operator is not Hermitian")
    if abs(np.trace(op) - 1) > TRACE_TOL:
        raise ContractViolation("operator does not have unit trace")
    local_a, local_b, corr = _product_basis(d1, d2)
    # tr(op X) = sum_ij op_ij X_ji
    opT = op.T
    s = (d1 / 2) * np.einsum("ij,kij->k", opT, local_a).real
    t = (d2 / 2) * np.einsum("ij,kij->k", opT, local_b).real
    R = (d1 * d2 / 4) * np.einsum("ij,abij->ab", opT, corr).real
    return BlochForm(d1, d2, s, t, R)


def bloch_compose(form: BlochForm) -> np.ndarray:
    """Inverse of :func:`bloch_decompose`."""
    d1, d2 = form.d1, form.d2
    _check_dims(d1, d2)
    s, t, R = np.asarray(form.s, float), np.asarray(form.t, float), np.asarray(form.R, float)
    if s.shape != (d1 * d1 - 1,) or t.shape != (d2 * d2 - 1,) or R.shape != (s.size, t.size):
        raise ContractViolation(
            f"Bloch form shapes s{s.shape} t{t.shape} R{R.shape} inconsistent with ({d1}, {d2})"
        )
    local_a, local_b, corr = _product_basis(d1, d2)
    op = (
        np.eye(d1 * d2, dtype=complex)
        + np.tensordot(s, local_a, axes=1)
        + np.tensordot(t, local_b, axes=1)
        + np.tensordot(R, corr, axes=2)
    )
    return op / (d1 * d2)


def schmidt_coefficients(psi: StateVector) -> np.ndarray:
    """Squared Schmidt coefficients, sorted nonincreasing and summing to one."""
    sv = np.linalg.svd(psi.amplitudes.reshape(psi.d1, psi.d2), compute_uv=False)
    return sv**2


def _operator_and_dims(rho, dims):
    if isinstance(rho, DensityMatrix):
        return rho.matrix, rho.d1, rho.d2
    if dims is None:
        raise ContractViolation("dims=(d1, d2) required for a bare matrix")
    d1, d2 = dims
    M = _as_matrix(rho)
    if M.shape != (d1 * d2, d1 * d2):
        raise ContractViolation(f"matrix has shape {M.shape}, expected ({d1 * d2}, {d1 * d2})")
    return M, d1, d2


def partial_transpose(rho, dims=None) -> np.ndarray:
    """Transpose the A subsystem: ((i,k),(j,l)) -> ((j,k),(i,l)).

    Accepts a :class:`DensityMatrix`, or any square matrix together with
    ``dims=(d1, d2)``.
    """
    M, d1, d2 = _operator_and_dims(rho, dims)
    return M.reshape(d1, d2, d1, d2).transpose(2, 1, 0, 3).reshape(d1 * d2, d1 * d2)


def realign(rho, dims=None) -> np.ndarray:
    """Realigned matrix with entry ((i,j),(k,l)) = rho[(i,k),(j,l)], shape (d1^2, d2^2)."""
    M, d1, d2 = _operator_and_dims(rho, dims)
    return M.reshape(d1, d2, d1, d2).transpose(0, 2, 1, 3).reshape(d1 * d1, d2 * d2)


def singular_values(M) -> np.ndarray:
    return np.linalg.svd(_as_matrix(M), compute_uv=False)


def trace_norm(M) -> float:
    return float(np.sum(singular_values(M)))


def frobenius_norm(M) -> float:
    return float(np.sqrt(np.sum(singular_values(M) ** 2)))


def spectral_norm(M) -> float:
    sv = singular_values(M)
    return float(sv[0]) if sv.size else 0.0


def is_hermitian(M, tol: float = HERMITIAN_TOL) -> bool:
    M = np.asarray(M)
    return M.ndim == 2 and M.shape[0] == M.shape[1] and np.max(np.abs(M - M.conj().T)) <= tol


def min_eigenvalue(M) -> float:
    return float(np.linalg.eigvalsh(np.asarray(M))[0])
