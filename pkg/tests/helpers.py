"""Brute-force reference implementations the tests check the package against.

Everything here is deliberately naive: explicit kron chains, per-basis
loops and eigendecomposition algebra, sharing no code with the package
beyond numpy itself.
"""
import math

import numpy as np

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)


def h_theta_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(2 * theta), math.sin(2 * theta)
    return np.array([[c, s], [s, -c]], dtype=complex)


def lift(u: np.ndarray, q: int, n: int) -> np.ndarray:
    """One-qubit operator at wire q of n, built by a plain kron chain."""
    out = np.array([[1.0]], dtype=complex)
    for k in range(n - 1, -1, -1):
        out = np.kron(out, u if k == q else I2)
    return out


def controlled_1q(u: np.ndarray, ctrl: int, tgt: int, n: int) -> np.ndarray:
    p0 = np.array([[1, 0], [0, 0]], dtype=complex)
    p1 = np.array([[0, 0], [0, 1]], dtype=complex)
    return lift(p0, ctrl, n) + lift(p1, ctrl, n) @ lift(u, tgt, n)


def embed_naive(u: np.ndarray, targets, n: int) -> np.ndarray:
    """Embed a k-qubit unitary by looping over every basis column."""
    k = len(targets)
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        t_in = 0
        for i, q in enumerate(targets):
            t_in |= ((col >> q) & 1) << i
        base = col
        for i, q in enumerate(targets):
            base &= ~(1 << q)
        for t_out in range(1 << k):
            row = base
            for i, q in enumerate(targets):
                row |= ((t_out >> i) & 1) << q
            out[row, col] = u[t_out, t_in]
    return out


def postselect_bits(psi: np.ndarray, fixed: dict) -> tuple[np.ndarray, float]:
    """Zero every amplitude whose bits disagree with ``fixed``, renormalize."""
    out = psi.copy()
    for idx in range(out.size):
        for q, want in fixed.items():
            if (idx >> q) & 1 != want:
                out[idx] = 0.0
                break
    p = float(np.sum(np.abs(out) ** 2))
    return out / math.sqrt(p), p


def compiled_final_state(b: np.ndarray, theta_big=math.pi / 8,
                         theta_small=math.pi / 16) -> np.ndarray:
    """The hand-optimized circuit as explicit 16x16 matrix products.

    Wire order: ancilla 0, R2 1, R1 2, input 3; unitary readout.
    """
    n = 4
    ops = [
        lift(H, 3, n),
        controlled_1q(X, 3, 2, n),
        controlled_1q(X, 3, 1, n),
        lift(X, 1, n),
        lift(H, 3, n),
        controlled_1q(h_theta_matrix(theta_big), 2, 0, n),
        controlled_1q(h_theta_matrix(theta_small), 1, 0, n),
        lift(H, 2, n),
        lift(H, 1, n),
    ]
    psi = np.zeros(16, dtype=complex)
    psi[0], psi[8] = b[0], b[1]
    for m in ops:
        psi = m @ psi
    return psi


def compiled_oracle(b: np.ndarray, theta_big=math.pi / 8,
                    theta_small=math.pi / 16) -> tuple[np.ndarray, float]:
    """Post-selected output qubit state and ancilla-conditional probability."""
    psi = compiled_final_state(b, theta_big, theta_small)
    reg_fixed, _ = postselect_bits(psi, {1: 0, 2: 0})
    out16, p_anc = postselect_bits(reg_fixed, {0: 1})
    x = np.array([out16[0b0001], out16[0b1001]])
    return x / np.linalg.norm(x), p_anc


def analytic_hhl(a: np.ndarray, b: np.ndarray, c: float | None = None):
    """Eigenbasis algebra for the ideal pipeline: (x, heralding probability).

    Assumes every populated eigenvalue is representable on the register,
    which holds for the exact-spectrum problems the tests build.
    """
    w, v = np.linalg.eigh(a)
    beta = v.conj().T @ b
    live = np.abs(beta) > 1e-12
    if c is None:
        c = float(np.min(np.abs(w[live])))
    amps = np.where(live, beta * c / w, 0.0)
    p = float(np.sum(np.abs(amps) ** 2))
    x = v @ amps
    return x / np.linalg.norm(x), p


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    m = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_exact_problem(rng: np.random.Generator, dim: int, n_register: int):
    """Hermitian matrix with distinct integer eigenvalues fitting the register."""
    top = (1 << n_register) - 1
    lams = rng.choice(np.arange(1, top + 1), size=dim, replace=False).astype(float)
    v = random_unitary(rng, dim)
    a = (v * lams) @ v.conj().T
    b = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return a, b / np.linalg.norm(b)
