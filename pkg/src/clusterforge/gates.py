"""Two-qubit evolutions: Ising phase, isotropic and anisotropic exchange, XOR pulse trains.

Spin operators are S = sigma / 2 with hbar = 1, and |0> is spin up
(S_z = +1/2). In every 4x4 matrix the first qubit of the pair is the high bit.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from .errors import ValidationError
from .statevector import StateVector, apply_1q, apply_2q

I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.diag([1, -1]).astype(complex)
SX, SY, SZ = X / 2, Y / 2, Z / 2
SWAP = I4[[0, 2, 1, 3]]

# S1.S2 = SWAP/2 - 1/4: triplet eigenvalue +1/4, singlet -3/4
TRIPLET = (I4 + SWAP) / 2
SINGLET = (I4 - SWAP) / 2


def on_first(u) -> np.ndarray:
    return np.kron(u, I2)


def on_second(u) -> np.ndarray:
    return np.kron(I2, u)


def pauli_pair_exp(angle: float, a, b) -> np.ndarray:
    """exp(-i * angle * a (x) b) for Pauli matrices a, b (so (a (x) b)^2 = 1)."""
    return np.cos(angle) * I4 - 1j * np.sin(angle) * np.kron(a, b)


def ising_cz() -> np.ndarray:
    return np.diag([1, 1, 1, -1]).astype(complex)


def ising_theta_evolution(theta: float) -> np.ndarray:
    return np.diag([1, 1, 1, np.exp(-1j * theta)])


def heisenberg_exchange(theta: float) -> np.ndarray:
    """exp(-i theta S1.S2), theta being the integrated exchange coupling."""
    return np.exp(-1j * theta / 4) * TRIPLET + np.exp(3j * theta / 4) * SINGLET


def sqrt_swap() -> np.ndarray:
    """Square root of SWAP with the triplet sector left untouched.

    The singlet picks up -i, which is heisenberg_exchange(-pi/2) (equivalently
    3*pi/2) up to a global phase. That branch is the one for which both XOR
    pulse trains below reproduce the conditional phase gate.
    """
    return TRIPLET - 1j * SINGLET


def sqrt_swap_inv() -> np.ndarray:
    return TRIPLET + 1j * SINGLET


def rz(angle: float) -> np.ndarray:
    """exp(i * angle * S_z)."""
    return np.diag([np.exp(0.5j * angle), np.exp(-0.5j * angle)])


class GateOp(NamedTuple):
    targets: tuple[int, ...]  # 0 = first qubit of the pair, 1 = second
    matrix: np.ndarray
    label: str = ""


class GateSequence:
    """Gate train on a qubit pair, stored in the order the gates are applied."""

    def __init__(self, ops: Sequence[GateOp]):
        self.ops = tuple(ops)
        for op in self.ops:
            if len(op.targets) not in (1, 2) or any(t not in (0, 1) for t in op.targets):
                raise ValidationError(f"bad targets {op.targets} in {op.label or 'gate'}")
            dim = 2 ** len(op.targets)
            if not np.allclose(op.matrix.conj().T @ op.matrix, np.eye(dim), atol=1e-12):
                raise ValidationError(f"{op.label or 'gate'} is not unitary")

    def __len__(self):
        return len(self.ops)

    def __iter__(self) -> Iterator[GateOp]:
        return iter(self.ops)

    def __repr__(self):
        return "GateSequence([" + ", ".join(op.label for op in self.ops) + "])"

    def compose(self) -> np.ndarray:
        total = I4.copy()
        for op in self.ops:
            if op.targets == (0, 1):
                m = op.matrix
            elif op.targets == (1, 0):
                m = SWAP @ op.matrix @ SWAP
            elif op.targets == (0,):
                m = on_first(op.matrix)
            else:
                m = on_second(op.matrix)
            total = m @ total
        return total

    def apply(self, state: StateVector, q1: int, q2: int) -> StateVector:
        pair = (q1, q2)
        for op in self.ops:
            if len(op.targets) == 1:
                state = apply_1q(state, pair[op.targets[0]], op.matrix)
            else:
                state = apply_2q(state, pair[op.targets[0]], pair[op.targets[1]], op.matrix)
        return state


def xor_sequence() -> GateSequence:
    """Five-pulse conditional phase: sqrt-swap, pi z-rotation on spin 1, sqrt-swap, then
    opposite pi/2 z-rotations on the two spins."""
    return GateSequence([
        GateOp((0, 1), sqrt_swap(), "sqrt_swap"),
        GateOp((0,), rz(np.pi), "rz1(pi)"),
        GateOp((0, 1), sqrt_swap(), "sqrt_swap"),
        GateOp((1,), rz(-np.pi / 2), "rz2(-pi/2)"),
        GateOp((0,), rz(np.pi / 2), "rz1(pi/2)"),
    ])


def xor_alternative() -> GateSequence:
    """Six-pulse variant whose single-qubit rotations all act on spin 1."""
    return GateSequence([
        GateOp((0, 1), sqrt_swap(), "sqrt_swap"),
        GateOp((0,), rz(np.pi / 2), "rz1(pi/2)"),
        GateOp((0, 1), SWAP.copy(), "swap"),
        GateOp((0,), rz(-np.pi / 2), "rz1(-pi/2)"),
        GateOp((0, 1), sqrt_swap_inv(), "sqrt_swap_inv"),
        GateOp((0,), rz(np.pi), "rz1(pi)"),
    ])


def xor_target() -> np.ndarray:
    """1/2 + S_z1 + S_z2 - 2 S_z1 S_z2, assembled from spin operators."""
    return 0.5 * I4 + on_first(SZ) + on_second(SZ) - 2 * np.kron(SZ, SZ)


@dataclass(frozen=True)
class PulseSpec:
    """Integrated couplings (radians) of the xx, yy and zz exchange terms."""

    j_xx: float = 0.0
    j_yy: float = 0.0
    j_zz: float = 0.0

    def __post_init__(self):
        for name in ("j_xx", "j_yy", "j_zz"):
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise ValidationError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def isotropic(cls, theta: float) -> PulseSpec:
        return cls(theta, theta, theta)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.j_xx, self.j_yy, self.j_zz)


def sah_factors(p: PulseSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(U_xx, U_yy, U_zz) with U_pp = exp(-i J_pp S_p S_p)."""
    return (pauli_pair_exp(p.j_xx / 4, X, X),
            pauli_pair_exp(p.j_yy / 4, Y, Y),
            pauli_pair_exp(p.j_zz / 4, Z, Z))


def sah_evolution(p: PulseSpec, order: Sequence[int] = (0, 1, 2)) -> np.ndarray:
    """Product of the three commuting factors; ``order`` lists them left to right."""
    factors = sah_factors(p)
    out = I4.copy()
    for i in order:
        out = out @ factors[i]
    return out


@dataclass(frozen=True)
class SahConditions:
    ok: bool
    n: int
    m: int
    k: int
    failures: tuple[str, ...] = ()

    def __bool__(self):
        return self.ok


def sah_conditions_check(p: PulseSpec, tol: float = 1e-9) -> SahConditions:
    """Check J_xx = 4n pi, J_yy = 4m pi, J_zz = (2k + 1) pi to within ``tol`` radians."""
    failures = []
    n = round(p.j_xx / (4 * np.pi))
    m = round(p.j_yy / (4 * np.pi))
    k = round((p.j_zz / np.pi - 1) / 2)
    if abs(p.j_xx - 4 * np.pi * n) > tol:
        failures.append(f"j_xx={p.j_xx!r} is not a multiple of 4*pi")
    if abs(p.j_yy - 4 * np.pi * m) > tol:
        failures.append(f"j_yy={p.j_yy!r} is not a multiple of 4*pi")
    if abs(p.j_zz - (2 * k + 1) * np.pi) > tol:
        failures.append(f"j_zz={p.j_zz!r} is not an odd multiple of pi")
    return SahConditions(not failures, int(n), int(m), int(k), tuple(failures))


def aah_factors(alpha_p: float, beta_p: float, gamma_p: float):
    return (pauli_pair_exp(alpha_p / 4, X, Y),
            pauli_pair_exp(beta_p / 4, Y, X),
            pauli_pair_exp(gamma_p / 4, Z, Z))


def aah_evolution(alpha_p: float, beta_p: float, gamma_p: float) -> np.ndarray:
    """exp(-i (a' S_x S_y + b' S_y S_x + g' S_z S_z)) via its commuting factors."""
    fxy, fyx, fzz = aah_factors(alpha_p, beta_p, gamma_p)
    return fxy @ fyx @ fzz


def aah_hamiltonian(alpha_p: float, beta_p: float, gamma_p: float) -> np.ndarray:
    return (alpha_p * np.kron(SX, SY) + beta_p * np.kron(SY, SX)
            + gamma_p * np.kron(SZ, SZ))


@dataclass(frozen=True)
class AahConvention:
    """AAH(a, b, g) = V SAH(relabel(a, b, g)) V^dagger with V = rz(sign * pi/2) on ``qubit``.

    ``relabel`` maps (a, b) to the SAH xx, yy couplings as
    ``(sx * [a, b][src_x], sy * [a, b][src_y])``; g passes through.
    """

    qubit: int
    sign: int
    src_x: int
    sx: int
    src_y: int
    sy: int

    def rotation(self) -> np.ndarray:
        r = rz(self.sign * np.pi / 2)
        return on_first(r) if self.qubit == 0 else on_second(r)

    def relabel(self, alpha_p: float, beta_p: float, gamma_p: float) -> PulseSpec:
        ab = (alpha_p, beta_p)
        return PulseSpec(self.sx * ab[self.src_x], self.sy * ab[self.src_y], gamma_p)

    def conjugate(self, alpha_p: float, beta_p: float, gamma_p: float) -> np.ndarray:
        v = self.rotation()
        return v @ sah_evolution(self.relabel(alpha_p, beta_p, gamma_p)) @ v.conj().T

    def describe(self) -> str:
        names = ("alpha'", "beta'")
        sgn = {1: "+", -1: "-"}
        return (f"z-rotation by {sgn[self.sign]}pi/2 on qubit {self.qubit + 1}; "
                f"J_xx = {sgn[self.sx]}{names[self.src_x]}, J_yy = {sgn[self.sy]}{names[self.src_y]}, "
                f"J_zz = gamma'")


def aah_candidates() -> list[AahConvention]:
    out = []
    for qubit, sign in itertools.product((0, 1), (1, -1)):
        for (src_x, src_y), sx, sy in itertools.product(((0, 1), (1, 0)), (1, -1), (1, -1)):
            out.append(AahConvention(qubit, sign, src_x, sx, src_y, sy))
    return out


def find_aah_conjugation(samples: int = 8, tol: float = 1e-10, seed: int = 0) -> list[AahConvention]:
    """All candidate z-rotation conjugations that map SAH onto AAH on random couplings."""
    rng = np.random.default_rng(seed)
    couplings = rng.uniform(-4 * np.pi, 4 * np.pi, size=(samples, 3))
    found = []
    for conv in aah_candidates():
        if all(np.abs(conv.conjugate(*c) - aah_evolution(*c)).max() < tol for c in couplings):
            found.append(conv)
    return found


def aah_convention() -> AahConvention:
    """The matching conjugation that keeps the coefficient order and alpha' positive."""
    found = find_aah_conjugation()
    if not found:
        raise RuntimeError("no z-rotation conjugation maps SAH onto AAH")
    return min(found, key=lambda c: (c.src_x, -c.sx, -c.sy, c.qubit, -c.sign))


def embed_pair(u: np.ndarray, q1: int, q2: int, num_qubits: int) -> np.ndarray:
    """Dense 2^n matrix of ``u`` acting on (q1, q2) with the bit convention of apply_2q."""
    dim = 1 << num_qubits
    out = np.empty((dim, dim), dtype=complex)
    for col in range(dim):
        e = np.zeros(dim, dtype=complex)
        e[col] = 1
        out[:, col] = apply_2q(StateVector(e), q1, q2, u).amplitudes
    return out


def gate_identities() -> list[tuple[str, float]]:
    """Phase-invariant distances for the identities the gate library relies on."""
    from .statevector import unitary_distance as dist

    cz = ising_cz()
    rng = np.random.default_rng(7)
    p = PulseSpec(*rng.uniform(0, 4 * np.pi, 3))
    orders = [sah_evolution(p, order) for order in itertools.permutations(range(3))]
    abc = tuple(rng.uniform(-np.pi, np.pi, 3))
    conv = aah_convention()
    zz = pauli_pair_exp(np.pi / 4, Z, Z)
    return [
        ("xor_sequence == 1/2 + Sz1 + Sz2 - 2 Sz1 Sz2", dist(xor_sequence().compose(), xor_target())),
        ("xor_alternative == 1/2 + Sz1 + Sz2 - 2 Sz1 Sz2", dist(xor_alternative().compose(), xor_target())),
        ("xor_sequence == xor_alternative", dist(xor_sequence().compose(), xor_alternative().compose())),
        ("1/2 + Sz1 + Sz2 - 2 Sz1 Sz2 == ising_cz", dist(xor_target(), cz)),
        ("ising_theta_evolution(pi) == ising_cz", dist(ising_theta_evolution(np.pi), cz)),
        ("sqrt_swap^2 == swap", dist(sqrt_swap() @ sqrt_swap(), SWAP)),
        ("sqrt_swap == heisenberg_exchange(-pi/2)", dist(sqrt_swap(), heisenberg_exchange(-np.pi / 2))),
        ("sqrt_swap_inv . sqrt_swap == identity", dist(sqrt_swap_inv() @ sqrt_swap(), I4)),
        ("heisenberg_exchange(pi) == swap", dist(heisenberg_exchange(np.pi), SWAP)),
        ("heisenberg_exchange(2 pi) == identity", dist(heisenberg_exchange(2 * np.pi), I4)),
        ("sah_evolution(4pi, 4pi, pi) == exp(-i pi Sz Sz)", dist(sah_evolution(PulseSpec(4 * np.pi, 4 * np.pi, np.pi)), zz)),
        ("rz(pi/2) x rz(pi/2) . exp(-i pi Sz Sz) == ising_cz", dist(np.kron(rz(np.pi / 2), rz(np.pi / 2)) @ zz, cz)),
        ("sah_evolution factor order", max(dist(u, orders[0]) for u in orders)),
        ("aah_evolution == V sah_evolution V^dagger", dist(conv.conjugate(*abc), aah_evolution(*abc))),
    ]
