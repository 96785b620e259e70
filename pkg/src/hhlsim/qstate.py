"""Dense complex linear algebra for small multi-qubit systems.

Conventions shared by every module in this package:

* qubit 0 is the least significant bit of a basis-state index,
* ``tensor`` puts its left factor on the higher qubit indices,
* global phase is never enforced; states are compared through overlaps
  such as ``|<a|b>|**2`` rather than component by component.

Matrix exponentials are computed spectrally from the Hermitian
eigendecomposition. Everything in scope is tiny (dimension at most a few
hundred), so dense matrices are used throughout.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadIndex, DimensionMismatch, NotHermitian, NotNormalized

# Input matrices are accepted as Hermitian up to 1e-8; quantities the
# package itself produces are held to 1e-10.
HERMITIAN_INPUT_ATOL = 1e-8
OUTPUT_ATOL = 1e-10


def num_qubits(dim: int) -> int:
    """Qubit count for a state space of size ``dim``; dim must be 2**n."""
    dim = int(dim)
    n = dim.bit_length() - 1
    if dim <= 0 or (1 << n) != dim:
        raise DimensionMismatch(f"dimension {dim} is not a power of two")
    return n


def check_hermitian(m: np.ndarray, atol: float = HERMITIAN_INPUT_ATOL) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if np.max(np.abs(m - m.conj().T)) > atol:
        raise NotHermitian(f"matrix is not Hermitian within {atol}")
    return m


def check_normalized(vec: np.ndarray, atol: float = 1e-12) -> np.ndarray:
    vec = np.asarray(vec, dtype=complex)
    if vec.ndim != 1:
        raise DimensionMismatch(f"expected a vector, got shape {vec.shape}")
    if abs(np.linalg.norm(vec) - 1.0) > atol:
        raise NotNormalized(f"vector norm {np.linalg.norm(vec)!r} is not 1 within {atol}")
    return vec


def check_density_matrix(rho: np.ndarray, atol: float = OUTPUT_ATOL) -> np.ndarray:
    """Validate trace one, Hermiticity and positivity of a density matrix."""
    rho = check_hermitian(rho, atol=atol)
    num_qubits(rho.shape[0])
    if abs(np.trace(rho).real - 1.0) > atol:
        raise DimensionMismatch(f"density matrix trace {np.trace(rho)!r} is not 1")
    if np.linalg.eigvalsh(rho).min() < -atol:
        raise DimensionMismatch("density matrix has a negative eigenvalue")
    return rho


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues and matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def eigh(m: np.ndarray) -> EigenDecomposition:
    """Hermitian eigendecomposition with ascending real eigenvalues."""
    m = check_hermitian(m)
    w, v = np.linalg.eigh(m)
    return EigenDecomposition(w, v)


def exp_unitary(a: np.ndarray, t: float) -> np.ndarray:
    """exp(i*a*t) for Hermitian ``a``, computed spectrally."""
    dec = eigh(a)
    v = dec.eigenvectors
    return (v * np.exp(1j * dec.eigenvalues * t)) @ v.conj().T


def tensor(*factors: np.ndarray) -> np.ndarray:
    """Kronecker product; the left factor lands on the higher qubit indices."""
    if not factors:
        raise DimensionMismatch("tensor of no factors")
    arrays = [np.asarray(f, dtype=complex) for f in factors]
    ndim = arrays[0].ndim
    if any(a.ndim != ndim for a in arrays) or ndim not in (1, 2):
        raise DimensionMismatch("tensor factors must be all vectors or all matrices")
    out = arrays[0]
    for a in arrays[1:]:
        out = np.kron(out, a)
    return out


def density(vec: np.ndarray) -> np.ndarray:
    """Projector |vec><vec| of a pure state."""
    vec = np.asarray(vec, dtype=complex)
    return np.outer(vec, vec.conj())


def state_fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>|**2 for two pure states. Global phase drops out."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionMismatch(f"state shapes differ: {a.shape} vs {b.shape}")
    return float(abs(np.vdot(a, b)) ** 2)


def fidelity(pure: np.ndarray, rho: np.ndarray) -> float:
    """<x|rho|x> for a pure state against a density matrix, clamped to [0, 1]."""
    pure = np.asarray(pure, dtype=complex)
    rho = np.asarray(rho, dtype=complex)
    if pure.ndim != 1 or rho.shape != (pure.size, pure.size):
        raise DimensionMismatch(f"fidelity shapes {pure.shape} and {rho.shape} do not match")
    val = np.vdot(pure, rho @ pure)
    return float(min(1.0, max(0.0, val.real)))


def partial_trace(rho: np.ndarray, keep) -> np.ndarray:
    """Reduced density matrix over the qubits in ``keep``.

    The result's qubit j corresponds to the j-th smallest kept index, so
    relative significance is preserved. An empty ``keep`` yields the 1x1
    matrix holding the trace.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {rho.shape}")
    n = num_qubits(rho.shape[0])
    kept = sorted({int(q) for q in keep})
    if kept and (kept[0] < 0 or kept[-1] >= n):
        raise BadIndex(f"keep set {kept} out of range for {n} qubits")
    t = rho.reshape([2] * (2 * n))
    # axis a < n carries the row bit of qubit n-1-a; axis n+a the column bit
    row_id = {q: q for q in range(n)}
    col_id = {q: n + q if q in kept else q for q in range(n)}
    in_subs = [row_id[n - 1 - a] for a in range(n)] + [col_id[n - 1 - a] for a in range(n)]
    kept_desc = kept[::-1]
    out_subs = [row_id[q] for q in kept_desc] + [col_id[q] for q in kept_desc]
    red = np.einsum(t, in_subs, out_subs)
    d = 1 << len(kept)
    return red.reshape(d, d)


def entropy_bits(rho: np.ndarray) -> float:
    """Von Neumann entropy in bits."""
    w = np.linalg.eigvalsh(np.asarray(rho, dtype=complex))
    w = w[w > 1e-15]
    return float(-(w * np.log2(w)).sum())
