"""Gate set, circuit container and two execution backends.

Qubit 0 is the least significant bit of a basis index, matching
``qstate``. Circuits and gates are treated as immutable: build the op
list first, then wrap it in a :class:`Circuit`.

Two backends share the same gate embeddings. The statevector backend
handles pure states, measurement collapse and classically conditioned
gates; the density-matrix backend additionally applies depolarizing
noise after gate applications. At zero noise they agree to 1e-10,
which the self test exercises.

Measurement randomness comes from a counter-based Philox generator
keyed by (seed, shot index), so shot sampling is reproducible and
independent of evaluation order.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import BadFlag, BadIndex, DimensionMismatch, NonUnitary, ZeroProbability
from .qstate import density, num_qubits, partial_trace, tensor

UNITARY_ATOL = 1e-10

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)

# gates equal to their own inverse, used when reversing circuits
_SELF_INVERSE = {"x", "y", "z", "h", "h_theta", "swap"}
# gate kinds rebuilt from name and params alone; anything else
# serializes its matrix explicitly
_STOCK_KINDS = {"x", "y", "z", "h", "phase", "h_theta", "swap"}


@dataclass(frozen=True, eq=False)
class Gate:
    """A unitary on ``targets``, optionally conditioned on control qubits.

    ``matrix`` acts on the target subspace only; bit i of its index is
    carried by ``targets[i]``. ``params`` keeps the defining angles for
    serialization. Equality is bitwise on the matrix, so a serialization
    round trip compares equal.
    """

    name: str
    matrix: np.ndarray
    targets: tuple[int, ...]
    controls: tuple[int, ...] = ()
    params: tuple[tuple[str, float], ...] = ()

    def __eq__(self, other):
        if not isinstance(other, Gate):
            return NotImplemented
        return (
            self.name == other.name
            and self.targets == other.targets
            and self.controls == other.controls
            and self.params == other.params
            and self.matrix.shape == other.matrix.shape
            and bool(np.array_equal(self.matrix, other.matrix))
        )

    def __post_init__(self):
        qubits = self.targets + self.controls
        if len(set(qubits)) != len(qubits):
            raise BadIndex(f"repeated qubit in gate {self.name}: {qubits}")
        if any(q < 0 for q in qubits):
            raise BadIndex(f"negative qubit index in gate {self.name}: {qubits}")
        want = 1 << len(self.targets)
        if self.matrix.shape != (want, want):
            raise DimensionMismatch(
                f"gate {self.name} matrix shape {self.matrix.shape} does not cover "
                f"{len(self.targets)} target(s)"
            )

    @property
    def entangling(self) -> bool:
        """Controlled gates and multi-qubit unitaries other than swap."""
        if self.controls:
            return True
        return len(self.targets) > 1 and self.name != "swap"

    def census_key(self) -> str:
        return "c" * len(self.controls) + self.name

    def dagger(self) -> "Gate":
        if self.name == "phase":
            phi = dict(self.params)["phi"]
            return replace(phase(self.targets[0], -phi), controls=self.controls)
        if self.name in _SELF_INVERSE:
            return self
        return replace(self, matrix=self.matrix.conj().T)


@dataclass(frozen=True)
class Measure:
    """Computational-basis measurement of one qubit into a classical slot."""

    qubit: int
    slot: int


@dataclass(frozen=True)
class ConditionalGate:
    """Apply ``gate`` when the classical ``slot`` equals ``outcome``."""

    gate: Gate
    slot: int
    outcome: int = 1


def x(q: int) -> Gate:
    return Gate("x", _X, (q,))


def y(q: int) -> Gate:
    return Gate("y", _Y, (q,))


def z(q: int) -> Gate:
    return Gate("z", _Z, (q,))


def h(q: int) -> Gate:
    return Gate("h", _H, (q,))


def phase(q: int, phi: float) -> Gate:
    m = np.array([[1, 0], [0, np.exp(1j * phi)]], dtype=complex)
    return Gate("phase", m, (q,), params=(("phi", float(phi)),))


def h_theta(q: int, theta: float) -> Gate:
    """Reflection [[cos 2t, sin 2t], [sin 2t, -cos 2t]]; h_theta(q, pi/8) is Hadamard."""
    c, s = math.cos(2 * theta), math.sin(2 * theta)
    m = np.array([[c, s], [s, -c]], dtype=complex)
    return Gate("h_theta", m, (q,), params=(("theta", float(theta)),))


def swap(a: int, b: int) -> Gate:
    return Gate("swap", _SWAP, (a, b))


def unitary(matrix: np.ndarray, targets, name: str = "unitary") -> Gate:
    """Wrap an explicit unitary acting on ``targets``."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"unitary must be square, got shape {m.shape}")
    if np.max(np.abs(m @ m.conj().T - np.eye(m.shape[0]))) > UNITARY_ATOL:
        raise NonUnitary(f"matrix is not unitary within {UNITARY_ATOL}")
    return Gate(name, m, tuple(int(t) for t in targets))


def controlled(gate: Gate, *controls: int) -> Gate:
    """Add control qubits to an existing gate."""
    return replace(gate, controls=gate.controls + tuple(int(c) for c in controls))


def cnot(control: int, target: int) -> Gate:
    return controlled(x(target), control)


@dataclass(frozen=True)
class Circuit:
    """Fixed-width op sequence. Ops are gates, measurements or conditionals."""

    qubits: int
    ops: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        written: set[int] = set()
        for op in self.ops:
            if isinstance(op, Gate):
                self._check_gate(op)
            elif isinstance(op, Measure):
                if not 0 <= op.qubit < self.qubits:
                    raise BadIndex(f"measure qubit {op.qubit} out of range")
                written.add(op.slot)
            elif isinstance(op, ConditionalGate):
                self._check_gate(op.gate)
                if op.slot not in written:
                    raise BadIndex(f"classical slot {op.slot} read before written")
            else:
                raise BadIndex(f"unknown op {op!r}")

    def _check_gate(self, g: Gate) -> None:
        for q in g.targets + g.controls:
            if not 0 <= q < self.qubits:
                raise BadIndex(f"qubit {q} out of range for {self.qubits}-qubit circuit")

    def then(self, other: "Circuit") -> "Circuit":
        if other.qubits != self.qubits:
            raise DimensionMismatch("cannot concatenate circuits of different widths")
        return Circuit(self.qubits, self.ops + other.ops)

    def inverse(self) -> "Circuit":
        """Reverse the op order and invert each gate. Unitary ops only."""
        inv = []
        for op in reversed(self.ops):
            if not isinstance(op, Gate):
                raise BadIndex("cannot invert a circuit containing measurements")
            inv.append(op.dagger())
        return Circuit(self.qubits, inv)

    def remapped(self, mapping: dict[int, int], qubits: int | None = None) -> "Circuit":
        """Relabel qubit indices through ``mapping``."""
        def move(q: int) -> int:
            return int(mapping.get(q, q))

        ops = []
        for op in self.ops:
            if isinstance(op, Gate):
                ops.append(
                    replace(
                        op,
                        targets=tuple(move(q) for q in op.targets),
                        controls=tuple(move(q) for q in op.controls),
                    )
                )
            elif isinstance(op, Measure):
                ops.append(Measure(move(op.qubit), op.slot))
            else:
                ops.append(
                    ConditionalGate(
                        replace(
                            op.gate,
                            targets=tuple(move(q) for q in op.gate.targets),
                            controls=tuple(move(q) for q in op.gate.controls),
                        ),
                        op.slot,
                        op.outcome,
                    )
                )
        return Circuit(self.qubits if qubits is None else qubits, ops)

    def unitary_matrix(self) -> np.ndarray:
        """Full 2**q unitary of a measurement-free circuit."""
        u = np.eye(1 << self.qubits, dtype=complex)
        for op in self.ops:
            if not isinstance(op, Gate):
                raise BadIndex("circuit with measurements has no single unitary")
            u = embedded_unitary(op, self.qubits) @ u
        return u

    def gate_census(self) -> dict[str, int]:
        """Op counts keyed by gate kind, with controls shown as a 'c' prefix."""
        counts: dict[str, int] = {}
        for op in self.ops:
            if isinstance(op, Gate):
                key = op.census_key()
            elif isinstance(op, Measure):
                key = "measure"
            else:
                key = "if_" + op.gate.census_key()
            counts[key] = counts.get(key, 0) + 1
        return counts

    def entangling_count(self) -> int:
        return sum(1 for op in self.ops if isinstance(op, Gate) and op.entangling)

    def to_json_dict(self) -> dict:
        return {"qubits": self.qubits, "ops": [_op_to_dict(op) for op in self.ops]}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @staticmethod
    def from_json_dict(data: dict) -> "Circuit":
        return Circuit(int(data["qubits"]), [_op_from_dict(d) for d in data["ops"]])

    @staticmethod
    def from_json(text: str) -> "Circuit":
        return Circuit.from_json_dict(json.loads(text))


def _complex_to_json(v: complex) -> list[float]:
    return [float(np.real(v)), float(np.imag(v))]


def _matrix_to_json(m: np.ndarray) -> list:
    return [[_complex_to_json(v) for v in row] for row in np.asarray(m, dtype=complex)]


def _matrix_from_json(rows: list) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def _op_to_dict(op) -> dict:
    if isinstance(op, Measure):
        return {"gate": "measure", "targets": [op.qubit], "slot": op.slot}
    if isinstance(op, ConditionalGate):
        return {
            "gate": "conditional",
            "slot": op.slot,
            "outcome": op.outcome,
            "inner": _op_to_dict(op.gate),
        }
    d: dict = {"gate": op.name, "targets": list(op.targets)}
    if op.controls:
        d["controls"] = list(op.controls)
    for key, val in op.params:
        d[key] = val
    if op.name not in _STOCK_KINDS:
        d["matrix"] = _matrix_to_json(op.matrix)
    return d


def _op_from_dict(d: dict):
    kind = d["gate"]
    if kind == "measure":
        return Measure(int(d["targets"][0]), int(d["slot"]))
    if kind == "conditional":
        inner = _op_from_dict(d["inner"])
        if not isinstance(inner, Gate):
            raise BadIndex("conditional op must wrap a gate")
        return ConditionalGate(inner, int(d["slot"]), int(d.get("outcome", 1)))
    targets = [int(t) for t in d["targets"]]
    controls = [int(c) for c in d.get("controls", [])]
    if kind == "x":
        g = x(targets[0])
    elif kind == "y":
        g = y(targets[0])
    elif kind == "z":
        g = z(targets[0])
    elif kind == "h":
        g = h(targets[0])
    elif kind == "phase":
        g = phase(targets[0], float(d["phi"]))
    elif kind == "h_theta":
        g = h_theta(targets[0], float(d["theta"]))
    elif kind == "swap":
        g = swap(targets[0], targets[1])
    elif "matrix" in d:
        g = unitary(_matrix_from_json(d["matrix"]), targets, name=kind)
    else:
        raise BadIndex(f"unknown gate kind {kind!r}")
    return controlled(g, *controls) if controls else g


def embedded_unitary(g: Gate, n: int) -> np.ndarray:
    """Full 2**n unitary of a gate, built by iterating over basis states."""
    for q in g.targets + g.controls:
        if q >= n:
            raise BadIndex(f"qubit {q} out of range for {n} qubits")
    dim = 1 << n
    cols = np.arange(dim)
    active = np.ones(dim, dtype=bool)
    for c in g.controls:
        active &= ((cols >> c) & 1) == 1
    sub = np.zeros(dim, dtype=np.int64)
    cleared = cols.copy()
    for i, t in enumerate(g.targets):
        sub |= ((cols >> t) & 1) << i
        cleared &= ~(1 << t)
    u = np.zeros((dim, dim), dtype=complex)
    idle = cols[~active]
    u[idle, idle] = 1.0
    act_cols = cols[active]
    act_sub = sub[active]
    act_clr = cleared[active]
    for out_sub in range(1 << len(g.targets)):
        rows = act_clr.copy()
        for i, t in enumerate(g.targets):
            if (out_sub >> i) & 1:
                rows |= 1 << t
        u[rows, act_cols] += g.matrix[out_sub, act_sub]
    return u


def apply_gate(state: np.ndarray, g: Gate) -> np.ndarray:
    """Apply one gate to a statevector."""
    state = np.asarray(state, dtype=complex)
    n = num_qubits(state.size)
    return embedded_unitary(g, n) @ state


@dataclass(frozen=True)
class NoiseSpec:
    """Depolarizing strength applied after each gate application."""

    p_depolarizing: float
    applies_to: str = "all"

    def __post_init__(self):
        if not 0.0 <= self.p_depolarizing <= 1.0:
            raise BadFlag(f"depolarizing probability {self.p_depolarizing} not in [0, 1]")
        if self.applies_to not in ("all", "entangling-only"):
            raise BadFlag(f"unknown noise target {self.applies_to!r}")


@dataclass(frozen=True)
class RunOutcome:
    """Final state, classical record and realized branch probability.

    ``state`` is a vector on the pure path and a density matrix on the
    noisy path. ``probability`` multiplies the Born probabilities of all
    realized measurement outcomes (1.0 if nothing was measured).
    """

    state: np.ndarray
    classical_bits: dict[int, int] = field(default_factory=dict)
    probability: float = 1.0


def _shot_rng(seed: int, shot: int) -> np.random.Generator:
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, shot & 0xFFFFFFFFFFFFFFFF], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _measure_vec(state: np.ndarray, qubit: int, rng) -> tuple[np.ndarray, int, float]:
    idx = np.arange(state.size)
    one = ((idx >> qubit) & 1) == 1
    p1 = float(np.sum(np.abs(state[one]) ** 2))
    outcome = 1 if rng.random() < p1 else 0
    keep = one if outcome else ~one
    p = p1 if outcome else 1.0 - p1
    out = np.zeros_like(state)
    out[keep] = state[keep]
    return out / math.sqrt(p), outcome, p


def run(c: Circuit, input: np.ndarray, noise: NoiseSpec | None = None, seed: int = 0) -> RunOutcome:
    """Execute a circuit on an input state.

    A 1-d input without noise runs on the statevector backend; a noise
    spec or a 2-d (density matrix) input selects the density-matrix
    backend. Measurements collapse using the seeded generator.
    """
    arr = np.asarray(input, dtype=complex)
    if arr.ndim == 1 and arr.size != (1 << c.qubits):
        raise DimensionMismatch(f"input size {arr.size} does not match {c.qubits} qubits")
    if arr.ndim == 2 or noise is not None:
        rho = arr if arr.ndim == 2 else density(arr)
        return _run_dm(c, rho, noise, seed)
    rng = _shot_rng(seed, 0)
    state = arr.copy()
    classical: dict[int, int] = {}
    prob = 1.0
    for op in c.ops:
        if isinstance(op, Gate):
            state = embedded_unitary(op, c.qubits) @ state
        elif isinstance(op, Measure):
            state, outcome, p = _measure_vec(state, op.qubit, rng)
            classical[op.slot] = outcome
            prob *= p
        else:
            if classical[op.slot] == op.outcome:
                state = embedded_unitary(op.gate, c.qubits) @ state
    return RunOutcome(state, classical, prob)


def _run_dm(c: Circuit, rho: np.ndarray, noise: NoiseSpec | None, seed: int) -> RunOutcome:
    if rho.shape != (1 << c.qubits, 1 << c.qubits):
        raise DimensionMismatch(f"density matrix shape {rho.shape} does not match circuit")
    rng = _shot_rng(seed, 0)
    classical: dict[int, int] = {}
    prob = 1.0

    def touch(g: Gate, state: np.ndarray) -> np.ndarray:
        u = embedded_unitary(g, c.qubits)
        state = u @ state @ u.conj().T
        if noise is not None and noise.p_depolarizing > 0.0:
            if noise.applies_to == "all" or g.entangling:
                state = depolarize(state, g.targets + g.controls, noise.p_depolarizing)
        return state

    for op in c.ops:
        if isinstance(op, Gate):
            rho = touch(op, rho)
        elif isinstance(op, Measure):
            idx = np.arange(rho.shape[0])
            one = ((idx >> op.qubit) & 1) == 1
            p1 = float(np.sum(np.abs(np.diag(rho)[one])).real)
            outcome = 1 if rng.random() < p1 else 0
            keep = one if outcome else ~one
            p = p1 if outcome else 1.0 - p1
            proj = np.zeros_like(rho)
            proj[np.ix_(keep, keep)] = rho[np.ix_(keep, keep)]
            rho = proj / p
            classical[op.slot] = outcome
            prob *= p
        else:
            if classical[op.slot] == op.outcome:
                rho = touch(op.gate, rho)
    return RunOutcome(rho, classical, prob)


def post_select(state: np.ndarray, qubit: int, outcome: int) -> tuple[np.ndarray, float]:
    """Project a statevector on one qubit's outcome and renormalize.

    Returns the projected state and the branch probability. Raises
    ZeroProbability when the projection norm falls below 1e-14.
    """
    state = np.asarray(state, dtype=complex)
    n = num_qubits(state.size)
    if not 0 <= qubit < n:
        raise BadIndex(f"qubit {qubit} out of range")
    idx = np.arange(state.size)
    keep = ((idx >> qubit) & 1) == outcome
    out = np.zeros_like(state)
    out[keep] = state[keep]
    norm = float(np.linalg.norm(out))
    if norm < 1e-14:
        raise ZeroProbability(f"projection of qubit {qubit} on {outcome} has vanishing norm")
    return out / norm, norm * norm


def post_select_dm(rho: np.ndarray, qubit: int, outcome: int) -> tuple[np.ndarray, float]:
    """Density-matrix analogue of :func:`post_select`."""
    rho = np.asarray(rho, dtype=complex)
    n = num_qubits(rho.shape[0])
    if not 0 <= qubit < n:
        raise BadIndex(f"qubit {qubit} out of range")
    idx = np.arange(rho.shape[0])
    keep = ((idx >> qubit) & 1) == outcome
    proj = np.zeros_like(rho)
    proj[np.ix_(keep, keep)] = rho[np.ix_(keep, keep)]
    p = float(np.trace(proj).real)
    if p < 1e-28:
        raise ZeroProbability(f"projection of qubit {qubit} on {outcome} has vanishing weight")
    return proj / p, p


@dataclass(frozen=True)
class Branch:
    """One measurement record with its probability and final pure state."""

    record: str
    probability: float
    state: np.ndarray
    classical: dict[int, int]


def enumerate_branches(c: Circuit, input: np.ndarray) -> list[Branch]:
    """All measurement branches of a circuit on a pure input, depth first.

    The record string lists outcomes in program order. Branches below
    probability 1e-15 are pruned.
    """
    arr = np.asarray(input, dtype=complex)
    if arr.size != (1 << c.qubits):
        raise DimensionMismatch(f"input size {arr.size} does not match {c.qubits} qubits")
    out: list[Branch] = []

    def walk(pos: int, state: np.ndarray, prob: float, classical: dict[int, int], record: str):
        for i in range(pos, len(c.ops)):
            op = c.ops[i]
            if isinstance(op, Gate):
                state = embedded_unitary(op, c.qubits) @ state
            elif isinstance(op, Measure):
                idx = np.arange(state.size)
                one = ((idx >> op.qubit) & 1) == 1
                p1 = float(np.sum(np.abs(state[one]) ** 2))
                for outcome, p in ((0, 1.0 - p1), (1, p1)):
                    if p <= 1e-15:
                        continue
                    keep = one if outcome else ~one
                    nxt = np.zeros_like(state)
                    nxt[keep] = state[keep]
                    walk(
                        i + 1,
                        nxt / math.sqrt(p),
                        prob * p,
                        {**classical, op.slot: outcome},
                        record + str(outcome),
                    )
                return
            else:
                if classical[op.slot] == op.outcome:
                    state = embedded_unitary(op.gate, c.qubits) @ state
        out.append(Branch(record, prob, state, classical))

    walk(0, arr.copy(), 1.0, {}, "")
    return out


def sample_shots(c: Circuit, input: np.ndarray, shots: int, seed: int = 0) -> dict[str, int]:
    """Histogram of measurement records over ``shots`` runs.

    Shot i consumes row i of a single counter-based uniform draw keyed
    by the seed, one column per measurement, so histograms are
    reproducible and growing ``shots`` extends earlier histograms
    without disturbing them. Records are keyed as outcome strings in
    program order; every record has one character per Measure op.
    """
    if shots < 1:
        raise BadFlag(f"shots must be positive, got {shots}")
    branches = enumerate_branches(c, input)
    depth = len(branches[0].record)
    if depth == 0:
        return {"": shots}
    # prefix mass, sparse over the prefixes that actually carry weight
    mass: dict[tuple[int, int], float] = {}
    for b in branches:
        val = 0
        for k, ch in enumerate(b.record):
            key = (k, val)
            mass[key] = mass.get(key, 0.0) + b.probability
            val = (val << 1) | (ch == "1")
        key = (depth, val)
        mass[key] = mass.get(key, 0.0) + b.probability
    u = _shot_rng(seed, 0).random((shots, depth))
    path = np.zeros(shots, dtype=np.int64)
    for k in range(depth):
        vals, inv = np.unique(path, return_inverse=True)
        frac = np.array([
            mass.get((k + 1, (v << 1) | 1), 0.0) / mass[(k, v)] for v in vals
        ])
        path = (path << 1) | (u[:, k] < frac[inv])
    out_vals, out_counts = np.unique(path, return_counts=True)
    return {
        format(int(v), f"0{depth}b"): int(n)
        for v, n in zip(out_vals, out_counts)
    }


def depolarize(rho: np.ndarray, qubits, p: float) -> np.ndarray:
    """(1-p)*rho + p * (I/d on ``qubits``) tensor tr_qubits(rho)."""
    if not 0.0 <= p <= 1.0:
        raise BadFlag(f"depolarizing probability {p} not in [0, 1]")
    rho = np.asarray(rho, dtype=complex)
    n = num_qubits(rho.shape[0])
    hit = sorted({int(q) for q in qubits})
    if not hit:
        return rho.copy()
    if hit[0] < 0 or hit[-1] >= n:
        raise BadIndex(f"qubit set {hit} out of range for {n} qubits")
    if p == 0.0:
        return rho.copy()
    kept = [q for q in range(n) if q not in hit]
    mixed = _lift_with_identity(partial_trace(rho, kept), kept, n)
    return (1.0 - p) * rho + p * mixed


def _lift_with_identity(reduced: np.ndarray, kept: list[int], n: int) -> np.ndarray:
    """Tensor ``reduced`` (on sorted ``kept``) with I/d on the other qubits."""
    others = [q for q in range(n) if q not in kept]
    d_others = 1 << len(others)
    m = tensor(np.eye(d_others) / d_others, reduced) if kept else np.eye(d_others) / d_others * complex(reduced[0, 0])
    # current qubit order, least significant first: kept then others
    order = list(kept) + others
    return _permute_qubit_order(m, order, n)


def _permute_qubit_order(m: np.ndarray, order: list[int], n: int) -> np.ndarray:
    """Move bit position p of the current index to position order[p]."""
    dim = 1 << n
    idx = np.zeros(dim, dtype=np.int64)
    for pos, target in enumerate(order):
        idx |= ((np.arange(dim) >> pos) & 1) << target
    perm = np.zeros((dim, dim))
    perm[idx, np.arange(dim)] = 1.0
    return perm @ m @ perm.T


def qft(n: int) -> Circuit:
    """Quantum Fourier transform; matrix entries exp(2j*pi*j*k/2**n)/2**(n/2)."""
    if n < 1:
        raise BadIndex(f"qft needs at least one qubit, got {n}")
    ops = []
    for i in range(n - 1, -1, -1):
        ops.append(h(i))
        for dist, ctrl in enumerate(range(i - 1, -1, -1), start=2):
            ops.append(controlled(phase(i, 2 * math.pi / (1 << dist)), ctrl))
    for i in range(n // 2):
        ops.append(swap(i, n - 1 - i))
    return Circuit(n, ops)


def inverse_qft(n: int) -> Circuit:
    return qft(n).inverse()
