"""Cluster-state construction under the Ising, Heisenberg and SAH models, and stabilizer checks."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import gates
from .errors import PreconditionError, SizeError, ValidationError
from .gates import PulseSpec
from .lattice import Cluster, Site, correlation_operator, require_valid
from .schedule import Schedule, generate_schedule
from .statevector import (
    StateVector,
    apply_1q,
    apply_2q,
    expectation,
    phase_invariant_overlap,
    plus_state,
    relative_phase,
    unitary_distance,
)

BUILD_TOL = 1e-10
VERIFY_TOL = 1e-8
MODELS = ("ising", "heisenberg", "sah")
DEFAULT_SAH_PULSE = PulseSpec(0.0, 0.0, np.pi)


@dataclass
class BuildResult:
    state: StateVector
    model: str
    cluster: Cluster
    schedule_used: Schedule
    corrections_applied: list[tuple[int, float]] = field(default_factory=list)
    pulse: PulseSpec | None = None

    def metadata(self) -> dict:
        out = {
            "model": self.model,
            "num_qubits": self.state.num_qubits,
            "cluster": self.cluster.to_dict(),
            "schedule": self.schedule_used.to_dict(),
            "corrections": [{"qubit": q, "angle": a} for q, a in self.corrections_applied],
        }
        if self.pulse is not None:
            out["pulse"] = dict(zip(("j_xx", "j_yy", "j_zz"), self.pulse.as_tuple()))
        return out


def _start(cluster: Cluster) -> tuple[StateVector, Schedule]:
    require_valid(cluster)
    return plus_state(len(cluster)), generate_schedule(cluster)


def _pair(cluster: Cluster, edge) -> tuple[int, int]:
    return cluster.index(edge[0]), cluster.index(edge[1])


def build_ising(cluster: Cluster) -> BuildResult:
    state, schedule = _start(cluster)
    cz = gates.ising_cz()
    for edge in cluster.edges():
        state = apply_2q(state, *_pair(cluster, edge), cz)
    return BuildResult(state, "ising", cluster, schedule)


def build_heisenberg(cluster: Cluster) -> BuildResult:
    state, schedule = _start(cluster)
    train = gates.xor_sequence()
    for step in schedule:
        for edge in step.edges:
            state = train.apply(state, *_pair(cluster, edge))
    return BuildResult(state, "heisenberg", cluster, schedule)


def sah_raw_state(cluster: Cluster, p: PulseSpec) -> StateVector:
    """Scheduled SAH evolution with no condition check and no corrections."""
    state, schedule = _start(cluster)
    u = gates.sah_evolution(p)
    for step in schedule:
        for edge in step.edges:
            state = apply_2q(state, *_pair(cluster, edge), u)
    return state


def _require_conditions(p: PulseSpec, tol: float) -> gates.SahConditions:
    cond = gates.sah_conditions_check(p, tol)
    if not cond:
        raise PreconditionError("SAH couplings violate the cluster-state conditions: "
                                + "; ".join(cond.failures))
    return cond


def edge_correction_angle(p: PulseSpec, tol: float = 1e-9) -> float:
    """z-rotation angle c with (rz(c) (x) rz(c)) . sah_evolution(p) equal to CZ up to phase.

    Read off the diagonal of the pair evolution and confirmed against the
    4x4 identity, so a wrong sign cannot slip through.
    """
    _require_conditions(p, tol)
    u = gates.sah_evolution(p)
    if np.abs(u - np.diag(np.diag(u))).max() > 1e-9:
        raise PreconditionError("pair evolution is not diagonal")
    d = np.diag(u)
    c = float(np.angle(d[1] / d[0]))
    r = gates.rz(c)
    if unitary_distance(np.kron(r, r) @ u, gates.ising_cz()) > 1e-9:
        raise PreconditionError(f"no single z-rotation maps the pair evolution onto CZ (tried {c})")
    return c


def local_corrections(cluster: Cluster, p: PulseSpec, tol: float = 1e-9) -> list[tuple[int, float]]:
    """Per-qubit z-rotation angles, one entry per site; each edge contributes one angle to each end."""
    c = edge_correction_angle(p, tol)
    degree = [0] * len(cluster)
    for edge in cluster.edges():
        for q in _pair(cluster, edge):
            degree[q] += 1
    return [(q, deg * c) for q, deg in enumerate(degree)]


def build_sah(cluster: Cluster, p: PulseSpec, tol: float = 1e-9) -> BuildResult:
    _require_conditions(p, tol)
    schedule = generate_schedule(require_valid(cluster))
    corrections = local_corrections(cluster, p, tol)
    state = sah_raw_state(cluster, p)
    for q, angle in corrections:
        if angle:
            state = apply_1q(state, q, gates.rz(angle))
    return BuildResult(state, "sah", cluster, schedule, corrections, p)


def build(cluster: Cluster, model: str, p: PulseSpec | None = None) -> BuildResult:
    if model == "ising":
        return build_ising(cluster)
    if model == "heisenberg":
        return build_heisenberg(cluster)
    if model == "sah":
        return build_sah(cluster, DEFAULT_SAH_PULSE if p is None else p)
    raise ValidationError(f"unknown model {model!r}; expected one of {', '.join(MODELS)}")


@dataclass(frozen=True)
class SiteCheck:
    site: Site
    kappa: int
    expectation: float

    @property
    def deviation(self) -> float:
        return abs(self.expectation - (-1) ** self.kappa)


@dataclass(frozen=True)
class VerificationReport:
    sites: list[SiteCheck]
    passed: bool
    max_deviation: float
    tol: float = VERIFY_TOL

    def __bool__(self):
        return self.passed

    def failing_sites(self) -> list[Site]:
        return [s.site for s in self.sites if s.deviation > self.tol]

    def to_dict(self) -> dict:
        return {
            "sites": [{"site": list(s.site), "kappa": s.kappa, "expectation": s.expectation}
                      for s in self.sites],
            "pass": self.passed,
            "max_deviation": self.max_deviation,
        }


def verify_cluster_state(state: StateVector, cluster: Cluster, kappa: Sequence[int] | None = None,
                         tol: float = VERIFY_TOL) -> VerificationReport:
    if state.num_qubits != len(cluster):
        raise SizeError(f"state has {state.num_qubits} qubits but the cluster has {len(cluster)} sites")
    kappa = [0] * len(cluster) if kappa is None else list(kappa)
    if len(kappa) != len(cluster) or any(k not in (0, 1) for k in kappa):
        raise ValidationError("kappa must hold one 0/1 entry per site")
    checks = [SiteCheck(a, k, expectation(state, correlation_operator(cluster, a)))
              for a, k in zip(cluster.sites, kappa)]
    worst = max(c.deviation for c in checks)
    return VerificationReport(checks, worst <= tol, worst, tol)


@dataclass
class CompareReport:
    builds: dict[str, BuildResult]
    overlaps: dict[str, float]
    phases: dict[str, float]
    verifications: dict[str, VerificationReport]
    passed: bool
    tol: float

    def __bool__(self):
        return self.passed

    def to_dict(self) -> dict:
        return {
            "models": list(self.builds),
            "overlaps": [{"pair": k.split("~"), "overlap": v} for k, v in self.overlaps.items()],
            "residual_phase": [{"pair": k.split("~"), "phase": v} for k, v in self.phases.items()],
            "corrections": {m: [{"qubit": q, "angle": a} for q, a in b.corrections_applied]
                            for m, b in self.builds.items()},
            "verification": {m: r.to_dict() for m, r in self.verifications.items()},
            "pass": self.passed,
        }


def compare_builds(cluster: Cluster, p: PulseSpec | None = None, tol: float = BUILD_TOL,
                   verify_tol: float = VERIFY_TOL) -> CompareReport:
    """Build with every model and report pairwise phase-invariant overlaps.

    Without a pulse the SAH model runs at J = (0, 0, pi).
    """
    builds = {m: build(cluster, m, p) for m in MODELS}
    overlaps, phases = {}, {}
    for a, b in itertools.combinations(MODELS, 2):
        key = f"{a}~{b}"
        overlaps[key] = phase_invariant_overlap(builds[a].state, builds[b].state)
        phases[key] = relative_phase(builds[a].state, builds[b].state)
    verifications = {m: verify_cluster_state(r.state, cluster, tol=verify_tol) for m, r in builds.items()}
    passed = all(v >= 1 - tol for v in overlaps.values()) and all(verifications.values())
    return CompareReport(builds, overlaps, phases, verifications, passed, tol)
