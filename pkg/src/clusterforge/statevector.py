"""Dense state vectors over a register of qubits.

Qubit ``i`` is bit ``i`` of the amplitude index (bit 0 least significant).
Two-qubit matrices passed to :func:`apply_2q` are indexed with the first
target qubit as the high bit and the second as the low bit.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .errors import SizeError, ValidationError

DEFAULT_MAX_QUBITS = 24
MAX_QUBITS_ENV = "CLUSTERFORGE_MAX_QUBITS"
UNITARY_ATOL = 1e-10

PAULI_LABELS = "IXYZ"


def max_qubits() -> int:
    raw = os.environ.get(MAX_QUBITS_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_QUBITS
    try:
        value = int(raw)
    except ValueError:
        raise SizeError(f"{MAX_QUBITS_ENV} must be an integer, got {raw!r}") from None
    if value < 1:
        raise SizeError(f"{MAX_QUBITS_ENV} must be positive, got {value}")
    return value


class StateVector:
    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, amplitudes, num_qubits: int | None = None):
        amps = np.ascontiguousarray(amplitudes, dtype=np.complex128).reshape(-1)
        n = int(amps.size).bit_length() - 1
        if amps.size == 0 or 1 << n != amps.size:
            raise SizeError(f"amplitude count {amps.size} is not a power of two")
        if num_qubits is not None and num_qubits != n:
            raise SizeError(f"{amps.size} amplitudes do not describe {num_qubits} qubits")
        self.num_qubits = n
        self.amplitudes = amps

    def __repr__(self):
        return f"StateVector(num_qubits={self.num_qubits})"

    def __len__(self):
        return self.amplitudes.size

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> StateVector:
        return StateVector(self.amplitudes.copy())

    # -- export -----------------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "num_qubits": self.num_qubits,
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> StateVector:
        try:
            n = int(data["num_qubits"])
            pairs = np.asarray(data["amplitudes"], dtype=np.float64)
        except KeyError as exc:
            raise ValidationError(f"state JSON is missing field {exc.args[0]!r}") from None
        except (TypeError, ValueError):
            raise ValidationError("state JSON field 'amplitudes' must be a list of [re, im] pairs") from None
        if pairs.ndim != 2 or pairs.shape[1] != 2:
            raise ValidationError("state JSON field 'amplitudes' must be a list of [re, im] pairs")
        return cls(pairs[:, 0] + 1j * pairs[:, 1], num_qubits=n)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> StateVector:
        return cls.from_dict(json.loads(text))

    def to_bytes(self) -> bytes:
        """Little-endian float64 (re, im) pairs in index order."""
        return self.amplitudes.astype("<c16").tobytes()

    @classmethod
    def from_bytes(cls, raw: bytes) -> StateVector:
        if len(raw) % 16:
            raise SizeError("binary state length is not a multiple of 16 bytes")
        return cls(np.frombuffer(raw, dtype="<c16").astype(np.complex128))


@dataclass(frozen=True)
class PauliString:
    """Tensor product of Pauli labels on selected qubits, times a sign."""

    terms: Mapping[int, str] = field(default_factory=dict)
    sign: int = 1

    def __post_init__(self):
        cleaned = {}
        for q, label in dict(self.terms).items():
            if not isinstance(q, (int, np.integer)) or q < 0:
                raise ValidationError(f"bad qubit index {q!r}")
            if label not in PAULI_LABELS or len(label) != 1:
                raise ValidationError(f"bad Pauli label {label!r} on qubit {q}")
            cleaned[int(q)] = label
        if self.sign not in (1, -1):
            raise ValidationError(f"sign must be +1 or -1, got {self.sign!r}")
        object.__setattr__(self, "terms", dict(sorted(cleaned.items())))

    def __hash__(self):
        return hash((tuple(self.terms.items()), self.sign))

    def __str__(self):
        body = " ".join(f"{label}{q}" for q, label in self.terms.items() if label != "I")
        return ("-" if self.sign < 0 else "+") + (body or "I")

    def support(self) -> list[int]:
        return [q for q, label in self.terms.items() if label != "I"]

    def masks(self) -> tuple[int, int, int]:
        """(x_mask, z_mask, number of Y factors)."""
        xm = zm = ny = 0
        for q, label in self.terms.items():
            if label in "XY":
                xm |= 1 << q
            if label in "ZY":
                zm |= 1 << q
            ny += label == "Y"
        return xm, zm, ny

    def matrix(self, num_qubits: int) -> np.ndarray:
        """Dense 2^n x 2^n matrix (for small n only)."""
        _check_qubits(self.support(), num_qubits)
        mats = {
            "I": np.eye(2),
            "X": np.array([[0, 1], [1, 0]]),
            "Y": np.array([[0, -1j], [1j, 0]]),
            "Z": np.diag([1, -1]),
        }
        out = np.ones((1, 1), dtype=complex)
        # kron builds the high bit first
        for q in reversed(range(num_qubits)):
            out = np.kron(out, mats[self.terms.get(q, "I")])
        return self.sign * out


def _check_qubits(qubits, n):
    for q in qubits:
        if not 0 <= q < n:
            raise ValidationError(f"qubit index {q} out of range for {n} qubits")


def check_unitary(u, dim: int) -> np.ndarray:
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (dim, dim):
        raise ValidationError(f"expected a {dim}x{dim} matrix, got shape {u.shape}")
    if not np.allclose(u.conj().T @ u, np.eye(dim), rtol=0, atol=UNITARY_ATOL):
        raise ValidationError("matrix is not unitary")
    return u


def plus_state(n: int, limit: int | None = None) -> StateVector:
    limit = max_qubits() if limit is None else limit
    if not 1 <= n <= limit:
        raise SizeError(f"qubit count {n} outside [1, {limit}]")
    return StateVector(np.full(1 << n, 2.0 ** (-n / 2), dtype=np.complex128))


def basis_state(n: int, index: int = 0) -> StateVector:
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(amps)


def _apply(amps: np.ndarray, n: int, qubits: tuple[int, ...], u: np.ndarray) -> np.ndarray:
    k = len(qubits)
    axes = [n - 1 - q for q in qubits]
    tensor = np.moveaxis(amps.reshape((2,) * n), axes, list(range(k)))
    shape = tensor.shape
    out = (u @ tensor.reshape(1 << k, -1)).reshape(shape)
    return np.ascontiguousarray(np.moveaxis(out, list(range(k)), axes)).reshape(-1)


def apply_1q(state: StateVector, q: int, u) -> StateVector:
    _check_qubits([q], state.num_qubits)
    u = check_unitary(u, 2)
    return StateVector(_apply(state.amplitudes, state.num_qubits, (q,), u))


def apply_2q(state: StateVector, q1: int, q2: int, u) -> StateVector:
    if q1 == q2:
        raise ValidationError(f"two-qubit gate needs distinct qubits, got {q1} twice")
    _check_qubits([q1, q2], state.num_qubits)
    u = check_unitary(u, 4)
    return StateVector(_apply(state.amplitudes, state.num_qubits, (q1, q2), u))


def apply_pauli(state: StateVector, p: PauliString) -> np.ndarray:
    """Amplitudes of ``p|state>``."""
    _check_qubits(p.support(), state.num_qubits)
    xm, zm, ny = p.masks()
    idx = np.arange(len(state), dtype=np.int64)
    parity = np.zeros(len(state), dtype=np.int64)
    for q in range(state.num_qubits):
        if zm >> q & 1:
            parity ^= (idx >> q) & 1
    phase = p.sign * (1j ** ny) * (1 - 2 * parity)
    out = np.empty_like(state.amplitudes)
    # P|i> lands on |i ^ xm>
    out[idx ^ xm] = phase * state.amplitudes
    return out


def expectation(state: StateVector, p: PauliString) -> float:
    value = np.vdot(state.amplitudes, apply_pauli(state, p))
    return float(value.real)


def phase_invariant_overlap(a: StateVector, b: StateVector) -> float:
    if a.num_qubits != b.num_qubits:
        raise SizeError(f"cannot compare {a.num_qubits}-qubit and {b.num_qubits}-qubit states")
    return float(abs(np.vdot(a.amplitudes, b.amplitudes)))


def relative_phase(a: StateVector, b: StateVector) -> float:
    """Angle phi with b ~ exp(i phi) a."""
    if a.num_qubits != b.num_qubits:
        raise SizeError(f"cannot compare {a.num_qubits}-qubit and {b.num_qubits}-qubit states")
    return float(np.angle(np.vdot(a.amplitudes, b.amplitudes)))


def unitary_distance(u, v) -> float:
    """min over phi of the Frobenius norm ||exp(i phi) u - v||."""
    u = np.asarray(u, dtype=np.complex128)
    v = np.asarray(v, dtype=np.complex128)
    if u.shape != v.shape:
        raise SizeError(f"shape mismatch {u.shape} vs {v.shape}")
    overlap = np.vdot(u, v)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(phase * u - v))
