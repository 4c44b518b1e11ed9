"""State-vector construction and verification of lattice cluster states."""
from .errors import ClusterError, ClusterForgeError, PreconditionError, SizeError, ValidationError
from .gates import (
    GateSequence,
    PulseSpec,
    aah_evolution,
    heisenberg_exchange,
    ising_cz,
    ising_theta_evolution,
    rz,
    sah_conditions_check,
    sah_evolution,
    sqrt_swap,
    xor_alternative,
    xor_sequence,
)
from .lattice import Cluster, bounding_box, correlation_operator, neighbors, validate_cluster
from .protocol import (
    BuildResult,
    VerificationReport,
    build_heisenberg,
    build_ising,
    build_sah,
    compare_builds,
    local_corrections,
    verify_cluster_state,
)
from .schedule import Schedule, Step, generate_schedule, validate_schedule
from .statevector import (
    PauliString,
    StateVector,
    apply_1q,
    apply_2q,
    expectation,
    phase_invariant_overlap,
    plus_state,
)

__version__ = "0.1.0"
