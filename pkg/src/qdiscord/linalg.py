"""Dense complex linear algebra for small (up to 8x8) Hermitian problems.

Everything here is a pure function of its inputs; values are safe to share
across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian

HERMITIAN_TOL = 1e-10
EIGENVALUE_CLAMP = 1e-12

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in descending order with matching orthonormal columns."""

    values: np.ndarray
    vectors: np.ndarray


def _square(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def hermitian_eig(m) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    Raises NotHermitian when max|m - m^H| exceeds 1e-10 entrywise.
    """
    a = _square(m)
    deviation = float(np.max(np.abs(a - a.conj().T)))
    if deviation > HERMITIAN_TOL:
        raise NotHermitian(f"matrix deviates from Hermiticity by {deviation:.3e}")
    values, vectors = np.linalg.eigh(a)
    return EigenDecomposition(values=values[::-1].copy(), vectors=vectors[:, ::-1].copy())


def clamp_spectrum(values: np.ndarray, clamp: float = EIGENVALUE_CLAMP) -> np.ndarray:
    """Zero out eigenvalues that are numerically indistinguishable from 0."""
    out = np.array(values, dtype=float)
    out[np.abs(out) < clamp] = 0.0
    return out


def tensor(a, b) -> np.ndarray:
    """Kronecker product, dimensions multiply."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def partial_trace(m, dims, keep: str) -> np.ndarray:
    """Trace out one factor of a bipartite operator.

    ``dims`` is (dA, dB); ``keep`` selects the surviving subsystem, "A" or "B".
    """
    a = _square(m)
    d_a, d_b = int(dims[0]), int(dims[1])
    if a.shape[0] != d_a * d_b:
        raise DimensionMismatch(
            f"matrix of size {a.shape[0]} cannot split into dims ({d_a}, {d_b})"
        )
    r = a.reshape(d_a, d_b, d_a, d_b)
    if keep == "A":
        return np.einsum("abcb->ac", r)
    if keep == "B":
        return np.einsum("abad->bd", r)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def trace_product(a, b) -> complex:
    """Tr(a @ b) without forming the product matrix."""
    ma, mb = _square(a), _square(b)
    if ma.shape != mb.shape:
        raise DimensionMismatch(f"shape mismatch {ma.shape} vs {mb.shape}")
    return complex(np.sum(ma * mb.T))
