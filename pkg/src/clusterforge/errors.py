class ClusterForgeError(Exception):
    pass


class SizeError(ClusterForgeError, ValueError):
    """Register too large, too small, or mismatched between operands."""


class ValidationError(ClusterForgeError, ValueError):
    """Bad qubit index, non-unitary matrix, malformed Pauli string, ..."""


class ClusterError(ClusterForgeError, ValueError):
    pass


class PreconditionError(ClusterForgeError, ValueError):
    """An operation was refused because its inputs violate a stated condition."""
