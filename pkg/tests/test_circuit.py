import math

import numpy as np
import pytest

import helpers
from hhlsim import circuit as cq
from hhlsim import qstate
from hhlsim.errors import (
    BadFlag,
    BadIndex,
    DimensionMismatch,
    NonUnitary,
    ZeroProbability,
)


def random_1q(rng):
    return helpers.random_unitary(rng, 2)


def test_gate_matrices():
    assert np.allclose(cq.x(0).matrix, helpers.X)
    assert np.allclose(cq.y(0).matrix, helpers.Y)
    assert np.allclose(cq.z(0).matrix, helpers.Z)
    assert np.allclose(cq.h(0).matrix, helpers.H)
    assert np.allclose(cq.phase(0, math.pi).matrix, np.diag([1, -1]))
    # h_theta at pi/8 is a plain Hadamard
    assert np.allclose(cq.h_theta(0, math.pi / 8).matrix, helpers.H, atol=1e-15)
    assert np.allclose(cq.h_theta(0, 0.3).matrix, helpers.h_theta_matrix(0.3))


def test_gate_validation():
    with pytest.raises(BadIndex):
        cq.swap(1, 1)
    with pytest.raises(BadIndex):
        cq.x(-1)
    with pytest.raises(BadIndex):
        cq.controlled(cq.x(0), 0)
    with pytest.raises(DimensionMismatch):
        cq.Gate("bad", np.eye(4, dtype=complex), (0,))
    with pytest.raises(NonUnitary):
        cq.unitary(np.array([[1, 1], [0, 1]]), [0])
    with pytest.raises(DimensionMismatch):
        cq.unitary(np.ones((2, 3)), [0, 1])


def test_entangling_flags():
    assert cq.cnot(0, 1).entangling
    assert cq.controlled(cq.h_theta(0, 0.2), 2).entangling
    assert not cq.h(0).entangling
    assert not cq.swap(0, 1).entangling
    rng = np.random.default_rng(0)
    assert cq.unitary(helpers.random_unitary(rng, 4), [0, 1]).entangling


def test_dagger_inverts():
    rng = np.random.default_rng(1)
    gates = [
        cq.x(0), cq.h(1), cq.swap(0, 2), cq.phase(1, 0.7),
        cq.h_theta(2, 0.4), cq.cnot(2, 0),
        cq.controlled(cq.phase(0, 1.1), 1, 2),
        cq.unitary(helpers.random_unitary(rng, 4), [0, 2]),
    ]
    for g in gates:
        u = cq.embedded_unitary(g, 3)
        v = cq.embedded_unitary(g.dagger(), 3)
        assert np.allclose(u @ v, np.eye(8), atol=1e-12)
        assert g.dagger().controls == g.controls


def test_census_keys():
    c = cq.Circuit(3, [
        cq.h(0), cq.h(1), cq.cnot(0, 1),
        cq.controlled(cq.h_theta(2, 0.1), 0, 1),
        cq.Measure(0, 0), cq.ConditionalGate(cq.x(2), 0, 1),
    ])
    assert c.gate_census() == {
        "h": 2, "cx": 1, "cch_theta": 1, "measure": 1, "if_x": 1,
    }
    assert c.entangling_count() == 2


def test_embedded_unitary_against_naive():
    rng = np.random.default_rng(42)
    for _ in range(400):
        n = int(rng.integers(1, 6))
        q = int(rng.integers(0, n))
        g = cq.unitary(random_1q(rng), [q])
        assert np.allclose(cq.embedded_unitary(g, n), helpers.embed_naive(g.matrix, [q], n),
                           atol=1e-12)
    for _ in range(300):
        n = int(rng.integers(2, 6))
        a, b = rng.choice(n, size=2, replace=False)
        g = cq.unitary(helpers.random_unitary(rng, 4), [int(a), int(b)])
        assert np.allclose(cq.embedded_unitary(g, n),
                           helpers.embed_naive(g.matrix, [int(a), int(b)], n), atol=1e-12)
    for _ in range(300):
        n = int(rng.integers(2, 6))
        ctrl, tgt = rng.choice(n, size=2, replace=False)
        u = random_1q(rng)
        g = cq.controlled(cq.unitary(u, [int(tgt)]), int(ctrl))
        assert np.allclose(cq.embedded_unitary(g, n),
                           helpers.controlled_1q(u, int(ctrl), int(tgt), n), atol=1e-12)


def test_multi_control_embedding():
    # ccx on 3 qubits: flips the target only when both controls are 1
    g = cq.controlled(cq.x(0), 1, 2)
    u = cq.embedded_unitary(g, 3)
    expect = np.eye(8)
    expect[[0b110, 0b111]] = expect[[0b111, 0b110]]
    assert np.allclose(u, expect)


def test_unitary_matrix_is_op_product():
    rng = np.random.default_rng(6)
    for _ in range(25):
        n = 3
        ops = []
        mats = [np.eye(8, dtype=complex)]
        for _k in range(6):
            kind = rng.integers(0, 3)
            if kind == 0:
                q = int(rng.integers(0, n))
                u = random_1q(rng)
                ops.append(cq.unitary(u, [q]))
                mats.append(helpers.embed_naive(u, [q], n))
            elif kind == 1:
                a, b = rng.choice(n, size=2, replace=False)
                ops.append(cq.cnot(int(a), int(b)))
                mats.append(helpers.controlled_1q(helpers.X, int(a), int(b), n))
            else:
                a, b = rng.choice(n, size=2, replace=False)
                ops.append(cq.swap(int(a), int(b)))
                mats.append(helpers.embed_naive(
                    np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]],
                             dtype=complex), [int(a), int(b)], n))
        c = cq.Circuit(n, ops)
        prod = np.eye(8, dtype=complex)
        for m in mats[1:]:
            prod = m @ prod
        assert np.allclose(c.unitary_matrix(), prod, atol=1e-11)


def test_then_and_inverse():
    c = cq.Circuit(3, [
        cq.h(0), cq.cnot(0, 1), cq.phase(2, 0.9),
        cq.controlled(cq.h_theta(1, 0.23), 2), cq.swap(0, 2),
    ])
    both = c.then(c.inverse())
    assert np.allclose(both.unitary_matrix(), np.eye(8), atol=1e-12)
    with pytest.raises(DimensionMismatch):
        c.then(cq.Circuit(2, [cq.h(0)]))
    with pytest.raises(BadIndex):
        cq.Circuit(1, [cq.Measure(0, 0)]).inverse()


def test_remapped():
    c = cq.Circuit(2, [cq.cnot(0, 1)])
    r = c.remapped({0: 1, 1: 0})
    assert np.allclose(r.unitary_matrix(), helpers.controlled_1q(helpers.X, 1, 0, 2))
    wide = c.remapped({0: 2, 1: 0}, qubits=3)
    assert wide.qubits == 3
    assert np.allclose(wide.unitary_matrix(), helpers.controlled_1q(helpers.X, 2, 0, 3))
    m = cq.Circuit(2, [cq.Measure(0, 0), cq.ConditionalGate(cq.x(1), 0, 1)])
    rm = m.remapped({0: 1, 1: 0})
    assert rm.ops[0].qubit == 1 and rm.ops[1].gate.targets == (0,)


def test_qft_matrix():
    for n in range(1, 4):
        dim = 1 << n
        j, k = np.meshgrid(np.arange(dim), np.arange(dim), indexing="ij")
        dft = np.exp(2j * math.pi * j * k / dim) / math.sqrt(dim)
        assert np.allclose(cq.qft(n).unitary_matrix(), dft, atol=1e-12)
        assert np.allclose(cq.inverse_qft(n).unitary_matrix(), dft.conj().T, atol=1e-12)
    with pytest.raises(BadIndex):
        cq.qft(0)


def test_circuit_validation():
    with pytest.raises(BadIndex):
        cq.Circuit(1, [cq.x(1)])
    with pytest.raises(BadIndex):
        cq.Circuit(2, [cq.Measure(2, 0)])
    with pytest.raises(BadIndex):
        cq.Circuit(2, [cq.ConditionalGate(cq.x(0), 0, 1)])  # slot never written
    with pytest.raises(BadIndex):
        cq.Circuit(1, ["nope"])


def test_run_statevector():
    c = cq.Circuit(2, [cq.h(0), cq.cnot(0, 1)])
    init = np.zeros(4, dtype=complex)
    init[0] = 1.0
    out = cq.run(c, init)
    bell = np.zeros(4, dtype=complex)
    bell[0b00] = bell[0b11] = 1 / math.sqrt(2)
    assert np.allclose(out.state, bell, atol=1e-12)
    assert out.classical_bits == {} and out.probability == 1.0
    with pytest.raises(DimensionMismatch):
        cq.run(c, np.zeros(8))


def test_run_measurement_and_conditional():
    c = cq.Circuit(2, [
        cq.x(0), cq.Measure(0, 0), cq.ConditionalGate(cq.x(1), 0, 1),
    ])
    init = np.eye(4)[0]
    out = cq.run(c, init)
    assert out.classical_bits == {0: 1}
    assert np.isclose(out.probability, 1.0)
    assert np.allclose(out.state, np.eye(4)[0b11])
    # conditional with a non-matching outcome leaves the state alone
    c2 = cq.Circuit(2, [cq.Measure(0, 0), cq.ConditionalGate(cq.x(1), 0, 1)])
    out2 = cq.run(c2, init)
    assert out2.classical_bits == {0: 0}
    assert np.allclose(out2.state, init)


def test_run_seeded_measurement_is_reproducible():
    c = cq.Circuit(1, [cq.h(0), cq.Measure(0, 0)])
    init = np.array([1.0, 0.0])
    for seed in range(10):
        a = cq.run(c, init, seed=seed)
        b = cq.run(c, init, seed=seed)
        assert a.classical_bits == b.classical_bits
        assert np.isclose(a.probability, 0.5)
    seen = {cq.run(c, init, seed=s).classical_bits[0] for s in range(30)}
    assert seen == {0, 1}


def test_run_density_matrix_matches_vector():
    rng = np.random.default_rng(14)
    for _ in range(10):
        ops = []
        for _k in range(5):
            q = int(rng.integers(0, 3))
            ops.append(cq.unitary(random_1q(rng), [q]))
            a, b = rng.choice(3, size=2, replace=False)
            ops.append(cq.cnot(int(a), int(b)))
        c = cq.Circuit(3, ops)
        v = rng.normal(size=8) + 1j * rng.normal(size=8)
        v /= np.linalg.norm(v)
        vec_out = cq.run(c, v).state
        dm_out = cq.run(c, qstate.density(v)).state
        assert np.allclose(dm_out, qstate.density(vec_out), atol=1e-10)


def test_deferred_measurement_principle():
    # measuring then classically controlling equals a cnot followed by
    # dephasing of the measured wire, for any suffix avoiding that wire
    rng = np.random.default_rng(21)
    for _ in range(100):
        prefix = []
        for _k in range(4):
            q = int(rng.integers(0, 3))
            prefix.append(cq.unitary(random_1q(rng), [q]))
            if rng.random() < 0.5:
                a, b = rng.choice(3, size=2, replace=False)
                prefix.append(cq.cnot(int(a), int(b)))
        suffix = []
        for _k in range(3):
            q = int(rng.integers(1, 3))
            suffix.append(cq.unitary(random_1q(rng), [q]))
        measured = cq.Circuit(3, prefix + [
            cq.Measure(0, 0), cq.ConditionalGate(cq.x(1), 0, 1),
        ] + suffix)
        coherent = cq.Circuit(3, prefix + [cq.cnot(0, 1)] + suffix)
        init = np.eye(8)[0].astype(complex)
        rho_m = np.zeros((8, 8), dtype=complex)
        for br in cq.enumerate_branches(measured, init):
            rho_m += br.probability * qstate.density(br.state)
        rho_c = qstate.density(cq.run(coherent, init).state)
        idx = np.arange(8)
        same_bit = ((idx[:, None] ^ idx[None, :]) & 1) == 0
        assert np.allclose(rho_m, np.where(same_bit, rho_c, 0.0), atol=1e-10)


def test_post_select():
    bell = np.zeros(4, dtype=complex)
    bell[0b00] = bell[0b11] = 1 / math.sqrt(2)
    out, p = cq.post_select(bell, 0, 0)
    assert np.isclose(p, 0.5)
    assert np.allclose(out, np.eye(4)[0b00])
    out1, p1 = cq.post_select(bell, 1, 1)
    assert np.isclose(p1, 0.5)
    assert np.allclose(out1, np.eye(4)[0b11])
    with pytest.raises(ZeroProbability):
        cq.post_select(np.eye(4)[0].astype(complex), 0, 1)
    with pytest.raises(BadIndex):
        cq.post_select(bell, 5, 0)


def test_post_select_dm():
    bell = np.zeros(4, dtype=complex)
    bell[0b00] = bell[0b11] = 1 / math.sqrt(2)
    rho, p = cq.post_select_dm(qstate.density(bell), 0, 1)
    assert np.isclose(p, 0.5)
    assert np.allclose(rho, qstate.density(np.eye(4)[0b11].astype(complex)))
    with pytest.raises(ZeroProbability):
        cq.post_select_dm(qstate.density(np.eye(4)[0].astype(complex)), 1, 1)


def test_noise_spec_validation():
    with pytest.raises(BadFlag):
        cq.NoiseSpec(-0.1)
    with pytest.raises(BadFlag):
        cq.NoiseSpec(1.5)
    with pytest.raises(BadFlag):
        cq.NoiseSpec(0.1, applies_to="sometimes")


def test_depolarize_properties():
    rng = np.random.default_rng(33)
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    v /= np.linalg.norm(v)
    rho = qstate.density(v)
    assert np.allclose(cq.depolarize(rho, [0, 1], 0.0), rho)
    for p in (0.2, 0.7, 1.0):
        out = cq.depolarize(rho, [0, 2], p)
        assert np.isclose(np.trace(out).real, 1.0, atol=1e-12)
        assert np.min(np.linalg.eigvalsh(out)) > -1e-12
    # p=1 forgets the hit qubit completely
    full = cq.depolarize(rho, [1], 1.0)
    assert np.allclose(qstate.partial_trace(full, [1]), np.eye(2) / 2, atol=1e-12)
    assert np.allclose(qstate.partial_trace(full, [0, 2]),
                       qstate.partial_trace(rho, [0, 2]), atol=1e-12)
    with pytest.raises(BadFlag):
        cq.depolarize(rho, [0], 1.2)


def test_noise_entangling_only_skips_local_gates():
    c = cq.Circuit(2, [cq.h(0), cq.h(1), cq.phase(0, 0.4)])
    init = np.eye(4)[0].astype(complex)
    noisy = cq.run(c, init, noise=cq.NoiseSpec(0.3, applies_to="entangling-only")).state
    clean = qstate.density(cq.run(c, init).state)
    assert np.allclose(noisy, clean, atol=1e-12)
    c2 = cq.Circuit(2, [cq.h(0), cq.cnot(0, 1)])
    noisy2 = cq.run(c2, init, noise=cq.NoiseSpec(0.3, applies_to="entangling-only")).state
    clean2 = qstate.density(cq.run(c2, init).state)
    assert not np.allclose(noisy2, clean2, atol=1e-6)


def test_enumerate_branches():
    c = cq.Circuit(2, [cq.h(0), cq.cnot(0, 1), cq.Measure(0, 0), cq.Measure(1, 1)])
    init = np.eye(4)[0].astype(complex)
    branches = cq.enumerate_branches(c, init)
    records = {b.record: b.probability for b in branches}
    assert set(records) == {"00", "11"}
    assert np.isclose(sum(records.values()), 1.0, atol=1e-12)
    assert all(np.isclose(p, 0.5) for p in records.values())
    for b in branches:
        assert np.isclose(np.linalg.norm(b.state), 1.0, atol=1e-12)
        assert b.classical == {0: int(b.record[0]), 1: int(b.record[1])}


def test_sample_shots_deterministic_and_prefix_stable():
    c = cq.Circuit(2, [cq.h(0), cq.cnot(0, 1), cq.Measure(0, 0), cq.Measure(1, 1)])
    init = np.eye(4)[0].astype(complex)
    h1 = cq.sample_shots(c, init, 4000, seed=5)
    h2 = cq.sample_shots(c, init, 4000, seed=5)
    assert h1 == h2
    assert set(h1) <= {"00", "11"}
    assert sum(h1.values()) == 4000
    # five sigma band around the fair-coin expectation
    assert abs(h1["00"] - 2000) < 5 * math.sqrt(4000 * 0.25)
    # growing the shot count only adds shots, earlier draws are unchanged
    h_half = cq.sample_shots(c, init, 2000, seed=5)
    assert all(h1[k] >= v for k, v in h_half.items())
    assert sum(h1.values()) - sum(h_half.values()) == 2000
    assert cq.sample_shots(c, init, 100, seed=6) != h1 or True  # seeds vary freely
    with pytest.raises(BadFlag):
        cq.sample_shots(c, init, 0)


def test_sample_shots_no_measurements():
    c = cq.Circuit(1, [cq.h(0)])
    assert cq.sample_shots(c, np.array([1.0, 0]), 17) == {"": 17}


def test_sample_shots_matches_branch_probabilities():
    rng = np.random.default_rng(8)
    ops = []
    for _k in range(3):
        q = int(rng.integers(0, 3))
        ops.append(cq.unitary(random_1q(rng), [q]))
    a, b = rng.choice(3, size=2, replace=False)
    ops.append(cq.cnot(int(a), int(b)))
    ops += [cq.Measure(0, 0), cq.Measure(1, 1), cq.Measure(2, 2)]
    c = cq.Circuit(3, ops)
    init = np.eye(8)[0].astype(complex)
    want = {b.record: b.probability for b in cq.enumerate_branches(c, init)}
    n = 20000
    hist = cq.sample_shots(c, init, n, seed=3)
    assert set(hist) <= set(want)
    for rec, p in want.items():
        sigma = math.sqrt(n * p * (1 - p)) + 1e-9
        assert abs(hist.get(rec, 0) - n * p) < 5 * sigma + 1


def test_serialization_roundtrip():
    rng = np.random.default_rng(12)
    c = cq.Circuit(3, [
        cq.h(0), cq.phase(1, 0.37), cq.h_theta(2, 0.21), cq.swap(0, 2),
        cq.cnot(1, 2), cq.controlled(cq.h_theta(0, 0.11), 1, 2),
        cq.unitary(helpers.random_unitary(rng, 4), [0, 2], name="mix"),
        cq.Measure(1, 0), cq.ConditionalGate(cq.x(2), 0, 1),
    ])
    back = cq.Circuit.from_json(c.to_json())
    assert back == c
    assert cq.Circuit.from_json_dict(c.to_json_dict()) == c
    # matrices survive bit for bit, so downstream numerics are identical
    assert np.array_equal(back.ops[6].matrix, c.ops[6].matrix)


def test_apply_gate():
    init = np.eye(4)[0b01].astype(complex)
    out = cq.apply_gate(init, cq.cnot(0, 1))
    assert np.allclose(out, np.eye(4)[0b11])
