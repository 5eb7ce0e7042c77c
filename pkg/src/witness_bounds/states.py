"""State families and seeded random generators.

Every random generator takes an explicit ``seed`` (an integer, or an
existing ``numpy.random.Generator`` to continue a stream). Integer seeds
feed a Philox counter-based generator, so distinct seeds give independent
streams and parallel sweeps can split work by seed.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidDimensionError, InvalidParameterError
from .linalg import BlochForm, DensityMatrix, StateVector, bloch_compose


def make_rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    if not isinstance(seed, np.random.SeedSequence):
        seed = int(seed)
    return np.random.Generator(np.random.Philox(seed))


def _check_family_param(a) -> float:
    if not math.isfinite(a) or a < 0:
        raise InvalidParameterError(f"family parameter a must be finite and >= 0, got {a!r}")
    return float(a)


def pure_family_2x2(a: float) -> StateVector:
    """(a, 0, 0, 1/sqrt(2)) / sqrt(a^2 + 1/2)."""
    a = _check_family_param(a)
    amp = np.array([a, 0, 0, 1 / math.sqrt(2)], dtype=complex)
    return StateVector(2, 2, amp / math.sqrt(a * a + 0.5))


def pure_family_3x3(a: float) -> StateVector:
    """a|00> + (|11> + |22>)/sqrt(3), normalized by sqrt(a^2 + 2/3)."""
    a = _check_family_param(a)
    amp = np.zeros(9, dtype=complex)
    amp[0] = a
    amp[4] = amp[8] = 1 / math.sqrt(3)
    return StateVector(3, 3, amp / math.sqrt(a * a + 2 / 3))


def isotropic_mix(x: float, psi: StateVector) -> DensityMatrix:
    """White-noise mixture ``x I/(d1 d2) + (1 - x)|psi><psi|``."""
    if not (0 <= x <= 1):
        raise InvalidParameterError(f"noise weight x must lie in [0, 1], got {x!r}")
    n = psi.d1 * psi.d2
    proj = np.outer(psi.amplitudes, psi.amplitudes.conj())
    return DensityMatrix(psi.d1, psi.d2, (x / n) * np.eye(n) + (1 - x) * proj)


def _check_dims(d1, d2):
    if d1 < 2 or d2 < 2:
        raise InvalidDimensionError(f"local dimensions must be >= 2, got ({d1}, {d2})")


def haar_vector(d: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return z / np.linalg.norm(z)


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


def random_pure(d1: int, d2: int, seed) -> StateVector:
    _check_dims(d1, d2)
    return StateVector.normalized(d1, d2, haar_vector(d1 * d2, make_rng(seed)))


def random_product_pure(d1: int, d2: int, seed) -> StateVector:
    """|a> (x) |b> with each factor Haar-distributed."""
    _check_dims(d1, d2)
    rng = make_rng(seed)
    a = haar_vector(d1, rng)
    b = haar_vector(d2, rng)
    return StateVector.normalized(d1, d2, np.kron(a, b))


def random_separable_mixed(d1: int, d2: int, k: int, seed) -> DensityMatrix:
    """Mixture of ``k`` random product states with flat-Dirichlet weights."""
    _check_dims(d1, d2)
    if k < 1:
        raise InvalidParameterError(f"component count must be >= 1, got {k}")
    rng = make_rng(seed)
    weights = rng.dirichlet(np.ones(k))
    rho = np.zeros((d1 * d2, d1 * d2), dtype=complex)
    for p in weights:
        v = np.kron(haar_vector(d1, rng), haar_vector(d2, rng))
        rho += p * np.outer(v, v.conj())
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(d1, d2, rho / np.trace(rho).real)


def random_local_unitary_pair(d1: int, d2: int, seed) -> tuple[np.ndarray, np.ndarray]:
    _check_dims(d1, d2)
    rng = make_rng(seed)
    return haar_unitary(d1, rng), haar_unitary(d2, rng)


def conjugate_local(rho: DensityMatrix, u1: np.ndarray, u2: np.ndarray) -> DensityMatrix:
    """(U1 (x) U2)^dagger rho (U1 (x) U2)."""
    U = np.kron(u1, u2)
    M = U.conj().T @ rho.matrix @ U
    return DensityMatrix(rho.d1, rho.d2, (M + M.conj().T) / 2)


def random_density(d1: int, d2: int, seed) -> DensityMatrix:
    """Ginibre-ensemble state G G^dagger / tr(G G^dagger)."""
    _check_dims(d1, d2)
    rng = make_rng(seed)
    n = d1 * d2
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    rho = g @ g.conj().T
    rho = (rho + rho.conj().T) / 2
    return DensityMatrix(d1, d2, rho / np.trace(rho).real)


def random_hermitian_unit_trace(n: int, seed) -> np.ndarray:
    """Hermitian matrix with unit trace and Gaussian entries (not necessarily PSD)."""
    rng = make_rng(seed)
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    h = (g + g.conj().T) / 2
    return h - (np.trace(h).real - 1) / n * np.eye(n)


def random_correlation_operator(d1: int, d2: int, seed) -> np.ndarray:
    """Trace-one PSD operator with zero local Bloch vectors and random correlations.

    The Gaussian correlation matrix is rescaled by a uniform factor in
    ``[0.2, 1]`` of the largest scale that keeps the operator PSD.
    """
    _check_dims(d1, d2)
    rng = make_rng(seed)
    zs, zt = np.zeros(d1 * d1 - 1), np.zeros(d2 * d2 - 1)
    R = rng.standard_normal((zs.size, zt.size))
    n = d1 * d2
    traceless = n * bloch_compose(BlochForm(d1, d2, zs, zt, R)) - np.eye(n)
    lam_min = np.linalg.eigvalsh(traceless)[0]
    scale = rng.uniform(0.2, 1.0) / abs(lam_min)
    return bloch_compose(BlochForm(d1, d2, zs, zt, scale * R))
