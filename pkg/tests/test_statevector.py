import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clusterforge.errors import SizeError, ValidationError
from clusterforge.statevector import (
    PauliString,
    StateVector,
    apply_1q,
    apply_2q,
    basis_state,
    expectation,
    phase_invariant_overlap,
    plus_state,
    unitary_distance,
)
from corpus import dense, dense_pair, pauli_dense, random_state, random_unitary

SWAP = np.eye(4)[[0, 2, 1, 3]]
CZ = np.diag([1, 1, 1, -1]).astype(complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.diag([1, -1]).astype(complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_plus_state_amplitudes(n):
    psi = plus_state(n)
    assert len(psi) == 2 ** n
    np.testing.assert_allclose(psi.amplitudes, 2 ** (-n / 2), rtol=0, atol=1e-15)
    assert abs(psi.norm() - 1) < 1e-12


def test_plus_state_limits(monkeypatch):
    with pytest.raises(SizeError):
        plus_state(0)
    with pytest.raises(SizeError):
        plus_state(25)
    monkeypatch.setenv("CLUSTERFORGE_MAX_QUBITS", "3")
    with pytest.raises(SizeError):
        plus_state(4)
    assert plus_state(3).num_qubits == 3


def test_identity_and_x():
    rng = np.random.default_rng(1)
    psi = StateVector(random_state(rng, 3))
    assert np.array_equal(apply_1q(psi, 1, np.eye(2)).amplitudes, psi.amplitudes)
    out = apply_1q(basis_state(1), 0, X)
    np.testing.assert_allclose(out.amplitudes, [0, 1])


def test_rotation_chain_against_matrix_product():
    out = apply_1q(apply_1q(apply_1q(basis_state(1), 0, H), 0, Z), 0, H)
    oracle = H @ Z @ H @ np.array([1, 0])
    np.testing.assert_allclose(out.amplitudes, oracle, atol=1e-15)
    np.testing.assert_allclose(out.amplitudes, [0, 1], atol=1e-15)


def test_apply_1q_matches_kron():
    rng = np.random.default_rng(2)
    v = random_state(rng, 4)
    for q in range(4):
        u = random_unitary(rng, 2)
        out = apply_1q(StateVector(v), q, u)
        np.testing.assert_allclose(out.amplitudes, dense(4, {q: u}) @ v, atol=1e-13)


def test_swap_and_cz_examples():
    # |01> means qubit q1 = 0 (high bit), q2 = 1; index = 1 with (q1, q2) = (1, 0)
    psi = basis_state(2, 0b01)
    out = apply_2q(psi, 1, 0, SWAP)
    np.testing.assert_allclose(out.amplitudes, basis_state(2, 0b10).amplitudes)
    out = apply_2q(plus_state(2), 0, 1, CZ)
    np.testing.assert_allclose(out.amplitudes, np.array([1, 1, 1, -1]) / 2, atol=1e-15)


def test_apply_2q_matches_index_oracle():
    rng = np.random.default_rng(3)
    v = random_state(rng, 4)
    for q1 in range(4):
        for q2 in range(4):
            if q1 == q2:
                continue
            u = random_unitary(rng, 4)
            out = apply_2q(StateVector(v), q1, q2, u)
            np.testing.assert_allclose(out.amplitudes, dense_pair(4, q1, q2, u) @ v, atol=1e-13)


def test_disjoint_czs_commute_against_dense_product():
    psi = plus_state(4)
    a = apply_2q(apply_2q(psi, 0, 1, CZ), 2, 3, CZ)
    b = apply_2q(apply_2q(psi, 2, 3, CZ), 0, 1, CZ)
    oracle = dense_pair(4, 0, 1, CZ) @ dense_pair(4, 2, 3, CZ) @ psi.amplitudes
    np.testing.assert_allclose(a.amplitudes, b.amplitudes, atol=1e-15)
    np.testing.assert_allclose(a.amplitudes, oracle, atol=1e-15)


def test_apply_errors():
    psi = plus_state(2)
    with pytest.raises(ValidationError):
        apply_1q(psi, 2, np.eye(2))
    with pytest.raises(ValidationError):
        apply_1q(psi, 0, np.array([[1, 1], [0, 1]]))
    with pytest.raises(ValidationError):
        apply_2q(psi, 1, 1, np.eye(4))
    with pytest.raises(ValidationError):
        apply_2q(psi, 0, 5, np.eye(4))
    with pytest.raises(ValidationError):
        apply_2q(psi, 0, 1, 2 * np.eye(4))


def test_norm_preserved_over_many_random_unitaries():
    rng = np.random.default_rng(4)
    n = 5
    psi = StateVector(random_state(rng, n))
    pool1 = [random_unitary(rng, 2) for _ in range(16)]
    pool2 = [random_unitary(rng, 4) for _ in range(16)]
    for i in range(10_000):
        if i % 2:
            psi = apply_1q(psi, int(rng.integers(n)), pool1[i % 16])
        else:
            q1, q2 = rng.choice(n, 2, replace=False)
            psi = apply_2q(psi, int(q1), int(q2), pool2[i % 16])
    assert abs(psi.norm() - 1) < 1e-10


def test_swapped_operand_order():
    rng = np.random.default_rng(5)
    for _ in range(50):
        v = StateVector(random_state(rng, 4))
        u = random_unitary(rng, 4)
        q1, q2 = (int(q) for q in rng.choice(4, 2, replace=False))
        a = apply_2q(v, q1, q2, u)
        b = apply_2q(v, q2, q1, SWAP @ u @ SWAP)
        assert np.abs(a.amplitudes - b.amplitudes).max() < 1e-12


def test_disjoint_random_gates_commute():
    rng = np.random.default_rng(6)
    for _ in range(50):
        v = StateVector(random_state(rng, 5))
        qs = [int(q) for q in rng.choice(5, 4, replace=False)]
        u, w = random_unitary(rng, 4), random_unitary(rng, 4)
        a = apply_2q(apply_2q(v, qs[0], qs[1], u), qs[2], qs[3], w)
        b = apply_2q(apply_2q(v, qs[2], qs[3], w), qs[0], qs[1], u)
        assert np.abs(a.amplitudes - b.amplitudes).max() < 1e-12
        assert abs(phase_invariant_overlap(a, b) - 1) < 1e-12


def test_expectation_examples():
    plus = plus_state(1)
    assert expectation(plus, PauliString({0: "X"})) == pytest.approx(1, abs=1e-15)
    assert expectation(plus, PauliString({0: "Z"})) == pytest.approx(0, abs=1e-15)
    cluster2 = apply_2q(plus_state(2), 0, 1, CZ)
    k = {1: "X", 0: "Z"}
    oracle = np.vdot(cluster2.amplitudes, pauli_dense(2, k) @ cluster2.amplitudes)
    assert oracle.real == pytest.approx(1, abs=1e-14)
    assert expectation(cluster2, PauliString(k)) == pytest.approx(1, abs=1e-14)


def test_expectation_matches_dense_pauli():
    rng = np.random.default_rng(8)
    for _ in range(200):
        n = int(rng.integers(1, 5))
        v = random_state(rng, n)
        terms = {q: "IXYZ"[rng.integers(4)] for q in range(n) if rng.random() < 0.8}
        sign = int(rng.choice([-1, 1]))
        oracle = sign * np.vdot(v, pauli_dense(n, terms) @ v)
        assert abs(oracle.imag) < 1e-12
        assert expectation(StateVector(v), PauliString(terms, sign)) == pytest.approx(oracle.real, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 5), st.data())
def test_expectation_bounded(n, data):
    seed = data.draw(st.integers(0, 2 ** 32 - 1))
    labels = data.draw(st.lists(st.sampled_from("IXYZ"), min_size=n, max_size=n))
    v = StateVector(random_state(np.random.default_rng(seed), n))
    value = expectation(v, PauliString(dict(enumerate(labels))))
    assert -1 - 1e-12 <= value <= 1 + 1e-12


def test_pauli_string_validation():
    with pytest.raises(ValidationError):
        PauliString({0: "W"})
    with pytest.raises(ValidationError):
        PauliString({0: "X"}, sign=2)
    with pytest.raises(ValidationError):
        expectation(plus_state(2), PauliString({3: "Z"}))
    assert str(PauliString({2: "Z", 0: "X"})) == "+X0 Z2"


def test_overlap_examples():
    rng = np.random.default_rng(9)
    psi = StateVector(random_state(rng, 3))
    assert phase_invariant_overlap(psi, psi) == pytest.approx(1, abs=1e-14)
    rotated = StateVector(np.exp(1j * np.pi / 3) * psi.amplitudes)
    assert phase_invariant_overlap(psi, rotated) == pytest.approx(1, abs=1e-14)
    assert phase_invariant_overlap(basis_state(1), plus_state(1)) == pytest.approx(1 / np.sqrt(2), abs=1e-15)
    with pytest.raises(SizeError):
        phase_invariant_overlap(plus_state(1), plus_state(2))


def test_unitary_distance():
    rng = np.random.default_rng(10)
    u = random_unitary(rng, 4)
    assert unitary_distance(u, np.exp(0.7j) * u) < 1e-14
    assert unitary_distance(np.eye(2), np.diag([1, -1])) == pytest.approx(2.0)


def test_json_and_binary_round_trip():
    rng = np.random.default_rng(11)
    psi = StateVector(random_state(rng, 3))
    text = psi.to_json()
    data = json.loads(text)
    assert data["num_qubits"] == 3 and len(data["amplitudes"]) == 8
    assert data["amplitudes"][5] == [psi.amplitudes[5].real, psi.amplitudes[5].imag]
    assert np.array_equal(StateVector.from_json(text).amplitudes, psi.amplitudes)
    raw = psi.to_bytes()
    assert len(raw) == 16 * 8
    assert np.frombuffer(raw[:8], "<f8")[0] == psi.amplitudes[0].real
    assert np.array_equal(StateVector.from_bytes(raw).amplitudes, psi.amplitudes)


def test_state_size_errors():
    with pytest.raises(SizeError):
        StateVector(np.ones(3))
    with pytest.raises(SizeError):
        StateVector.from_dict({"num_qubits": 2, "amplitudes": [[1, 0], [0, 0]]})
    with pytest.raises(ValidationError):
        StateVector.from_dict({"amplitudes": [[1, 0]]})
