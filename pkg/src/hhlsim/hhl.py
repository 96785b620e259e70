"""Generic quantum linear-system pipeline.

Solves A x = b for Hermitian A by phase estimation, an eigenvalue-
conditioned ancilla rotation and the inverse phase estimation, then
post-selects the ancilla on |1>. The output state is proportional to
sum_j beta_j * (C / lambda_j) |u_j>, the normalized classical solution
when the heralding outcome occurs.

Qubit layout on 1 + n + m qubits (m = log2 of the system dimension):

  qubit 0                ancilla rotated toward |1> with amplitude C/lambda
  qubits 1 .. n          eigenvalue register, qubit 1+i carries bit i
  qubits n+1 .. n+m      solution register holding |b> then |x>

The evolution time t0 defaults to 2*pi so an eigenvalue lambda lands on
register integer k = lambda * t0 / (2*pi) = lambda. Spectra whose
eigenvalues all map to integers in [1, 2**n - 1] are called exact;
other spectra still run, with register spreading and the reported
fidelity honestly degraded.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import circuit as qc
from .errors import DimensionMismatch, InvalidC, NotNormalized, Singular
from .qstate import EigenDecomposition, check_hermitian, eigh, exp_unitary, state_fidelity

TWO_PI = 2.0 * math.pi

# eigenvector weight below which a register value counts as unpopulated
POPULATED_ATOL = 1e-12


@dataclass(frozen=True)
class HhlProblem:
    """Problem statement: Hermitian matrix, unit vector, register width.

    ``c_const`` is the rotation constant C; amplitude validity needs
    C <= lambda_min over the populated spectrum. When omitted it
    defaults to the smallest populated eigenvalue in register units,
    which maximizes the success probability. For inexact spectra the
    default falls back to 2*pi/t0, the smallest eigenvalue the register
    can represent, keeping every branch amplitude valid.
    """

    a: np.ndarray
    b: np.ndarray
    n_register: int
    t0: float = TWO_PI
    c_const: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "a", np.asarray(self.a, dtype=complex))
        object.__setattr__(self, "b", np.asarray(self.b, dtype=complex))
        if self.n_register < 1:
            raise DimensionMismatch(f"need at least one register qubit, got {self.n_register}")
        if self.t0 <= 0:
            raise DimensionMismatch(f"t0 must be positive, got {self.t0}")
        if self.c_const is not None and self.c_const <= 0:
            raise InvalidC(f"C must be positive, got {self.c_const}")

    @property
    def dim(self) -> int:
        return self.a.shape[0]

    @property
    def m_qubits(self) -> int:
        from .qstate import num_qubits

        return num_qubits(self.dim)

    @property
    def qubits(self) -> int:
        return 1 + self.n_register + self.m_qubits

    def input_qubits(self) -> tuple[int, ...]:
        return tuple(range(1 + self.n_register, self.qubits))

    def register_qubits(self) -> tuple[int, ...]:
        return tuple(range(1, 1 + self.n_register))


@dataclass(frozen=True)
class ValidationInfo:
    """Condition number, exact-spectrum flag and the eigendecomposition."""

    kappa: float
    exact: bool
    spectrum: EigenDecomposition


@dataclass(frozen=True)
class HhlResult:
    x_state: np.ndarray
    success_probability: float
    fidelity_vs_classical: float
    register_reset_ok: bool
    gate_count: dict[str, int]


def validate(p: HhlProblem) -> ValidationInfo:
    """Check the problem statement and classify its spectrum."""
    check_hermitian(p.a)
    if p.b.shape != (p.dim,):
        raise DimensionMismatch(f"vector shape {p.b.shape} does not match matrix {p.a.shape}")
    if abs(np.linalg.norm(p.b) - 1.0) > 1e-12:
        raise NotNormalized(f"|b| = {np.linalg.norm(p.b)!r} is not 1")
    spectrum = eigh(p.a)
    mags = np.abs(spectrum.eigenvalues)
    if mags.min() < 1e-10:
        raise Singular("matrix is singular: an eigenvalue sits within 1e-10 of zero")
    top = (1 << p.n_register) - 1
    exact = True
    for lam in spectrum.eigenvalues:
        k = lam * p.t0 / TWO_PI
        if abs(k - round(k)) > 1e-9 or not 1 <= round(k) <= top:
            exact = False
    return ValidationInfo(float(mags.max() / mags.min()), exact, spectrum)


def _populated_values(p: HhlProblem, info: ValidationInfo) -> list[int]:
    """Register integers carrying eigenvector weight of b.

    For an exact spectrum these are the populated eigenvalues in
    register units. An inexact spectrum spreads over the whole register,
    so every representable value counts as populated.
    """
    if not info.exact:
        return list(range(1, 1 << p.n_register))
    betas = info.spectrum.eigenvectors.conj().T @ p.b
    ks = {
        int(round(lam * p.t0 / TWO_PI))
        for lam, beta in zip(info.spectrum.eigenvalues, betas)
        if abs(beta) > POPULATED_ATOL
    }
    return sorted(ks)


def resolve_c(p: HhlProblem, info: ValidationInfo | None = None) -> float:
    """The rotation constant: explicit value, or smallest populated eigenvalue."""
    if p.c_const is not None:
        return float(p.c_const)
    info = info or validate(p)
    scale = TWO_PI / p.t0
    if info.exact:
        return min(_populated_values(p, info)) * scale
    # spreading can put weight on any register value, so only the smallest
    # representable eigenvalue keeps every branch amplitude valid
    return scale


def phase_estimation_circuit(p: HhlProblem) -> qc.Circuit:
    """Hadamards, controlled exp(i*A*t0*2**i/T) powers, then the inverse QFT.

    Acts on the register and solution qubits; the ancilla stays idle so
    stage circuits compose on the full layout.
    """
    n = p.n_register
    big_t = 1 << n
    ops: list = [qc.h(1 + i) for i in range(n)]
    for i in range(n):
        u = exp_unitary(p.a, p.t0 * (1 << i) / big_t)
        ops.append(qc.controlled(qc.unitary(u, p.input_qubits()), 1 + i))
    pe = qc.Circuit(p.qubits, ops)
    iqft = qc.inverse_qft(n).remapped({i: 1 + i for i in range(n)}, qubits=p.qubits)
    return pe.then(iqft)


def reciprocal_rotation_circuit(p: HhlProblem) -> qc.Circuit:
    """Register-value-conditioned ancilla rotations toward |1>.

    Register value k stands for eigenvalue k * 2*pi / t0, so the branch
    rotation angle is theta(k) = arcsin(C * t0 / (2*pi * k)) / 2 and the
    ancilla picks up amplitude C/lambda on |1>. Values whose amplitude
    would exceed one are skipped when they carry no weight and rejected
    otherwise. Value zero never carries weight for an invertible
    matrix with an exact spectrum and gets no gate.
    """
    info = validate(p)
    c_val = resolve_c(p, info)
    populated = set(_populated_values(p, info))
    n = p.n_register
    regs = p.register_qubits()
    ops: list = []
    for k in range(1, 1 << n):
        amp = c_val * p.t0 / (TWO_PI * k)
        if amp > 1.0 + 1e-12:
            if k in populated:
                raise InvalidC(
                    f"C = {c_val} needs amplitude {amp} on populated register value {k}"
                )
            continue
        theta = 0.5 * math.asin(min(amp, 1.0))
        flips = [qc.x(regs[i]) for i in range(n) if not (k >> i) & 1]
        ops.extend(flips)
        ops.append(qc.controlled(qc.h_theta(0, theta), *regs))
        ops.extend(flips)
    return qc.Circuit(p.qubits, ops)


def classical_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Normalized solution of a*x = b by direct inversion."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or b.shape != (a.shape[0],):
        raise DimensionMismatch(f"incompatible shapes {a.shape} and {b.shape}")
    sing = np.linalg.svd(a, compute_uv=False)
    if sing.min() < 1e-10 * max(1.0, sing.max()):
        raise Singular("matrix is singular within tolerance")
    x = np.linalg.solve(a, b)
    return x / np.linalg.norm(x)


def success_probability(p: HhlProblem) -> float:
    """Analytic heralding probability sum_j |beta_j|^2 C^2 / lambda_j^2."""
    info = validate(p)
    c_val = resolve_c(p, info)
    betas = info.spectrum.eigenvectors.conj().T @ p.b
    return float(np.sum(np.abs(betas) ** 2 * c_val**2 / info.spectrum.eigenvalues**2).real)


def initial_state(p: HhlProblem) -> np.ndarray:
    """|b> on the solution qubits, zeros on register and ancilla."""
    vec = np.zeros(1 << p.qubits, dtype=complex)
    shift = 1 + p.n_register
    for j, amp in enumerate(p.b):
        vec[j << shift] = amp
    return vec


def _register_zero_weight(p: HhlProblem, state: np.ndarray) -> float:
    """Probability of reading all-zeros on the register qubits."""
    idx = np.arange(state.size)
    mask = 0
    for q in p.register_qubits():
        mask |= 1 << q
    zero = (idx & mask) == 0
    return float(np.sum(np.abs(state[zero]) ** 2))


def run_hhl(p: HhlProblem) -> HhlResult:
    """Execute the full pipeline and post-select the ancilla on |1>.

    The reported success probability is the ancilla heralding
    probability. The solution state is read off the solution qubits
    after also conditioning the register on all-zeros, which is the
    identity on exact spectra and an honest projection otherwise.
    """
    info = validate(p)
    pe = phase_estimation_circuit(p)
    rot = reciprocal_rotation_circuit(p)
    inv = pe.inverse()

    state = qc.run(pe, initial_state(p)).state
    if info.exact and _register_zero_weight(p, state) > 1e-10:
        # an exact nonsingular spectrum leaves no weight on register value 0,
        # where the reciprocal rotation is undefined
        raise Singular("phase estimation put weight on register value zero")
    state = qc.run(rot, state).state
    state = qc.run(inv, state).state

    state, p_success = qc.post_select(state, 0, 1)
    residual = 1.0 - _register_zero_weight(p, state)
    register_reset_ok = residual < 1e-10
    for q in p.register_qubits():
        state, _ = qc.post_select(state, q, 0)

    shift = 1 + p.n_register
    x = np.array([state[(j << shift) | 1] for j in range(p.dim)])
    x = x / np.linalg.norm(x)

    census: dict[str, int] = {}
    for stage in (pe, rot, inv):
        for key, cnt in stage.gate_census().items():
            census[key] = census.get(key, 0) + cnt
    census["entangling"] = pe.entangling_count() + rot.entangling_count() + inv.entangling_count()

    fid = state_fidelity(classical_solve(p.a, p.b), x)
    return HhlResult(x, p_success, fid, register_reset_ok, census)


def pipeline_circuit(p: HhlProblem) -> qc.Circuit:
    """The three stages concatenated into one measurement-free circuit."""
    pe = phase_estimation_circuit(p)
    return pe.then(reciprocal_rotation_circuit(p)).then(pe.inverse())


def problem_from_dict(data: dict) -> HhlProblem:
    """Build a problem from its JSON form; see README for the schema."""
    a = _matrix_from_json(data["matrix"])
    b = _vector_from_json(data["vector"])
    return HhlProblem(
        a,
        b,
        int(data.get("register_bits", 2)),
        float(data.get("t0", TWO_PI)),
        None if data.get("c_const") is None else float(data["c_const"]),
    )


def result_to_dict(r: HhlResult) -> dict:
    return {
        "x": [[float(v.real), float(v.imag)] for v in r.x_state],
        "success_probability": float(r.success_probability),
        "fidelity": float(r.fidelity_vs_classical),
        "register_reset_ok": bool(r.register_reset_ok),
        "gate_count": dict(sorted(r.gate_count.items())),
    }


def _entry_from_json(v) -> complex:
    if isinstance(v, (list, tuple)):
        if len(v) != 2:
            raise DimensionMismatch(f"complex entries are [re, im], got {v!r}")
        return complex(float(v[0]), float(v[1]))
    return complex(float(v), 0.0)


def _matrix_from_json(rows) -> np.ndarray:
    return np.array([[_entry_from_json(v) for v in row] for row in rows])


def _vector_from_json(vals) -> np.ndarray:
    return np.array([_entry_from_json(v) for v in vals])
