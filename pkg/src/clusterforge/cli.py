"""Command-line front end.

Exit status: 0 when every check passes, 1 when a check fails, 2 on bad
usage or unreadable input.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import gates
from .errors import ClusterForgeError, SizeError, ValidationError
from .gates import PulseSpec
from .lattice import Cluster, kappa_in_qubit_order, validate_cluster
from .protocol import BUILD_TOL, DEFAULT_SAH_PULSE, MODELS, VERIFY_TOL, build, compare_builds, verify_cluster_state
from .schedule import generate_schedule, validate_schedule
from .statevector import StateVector, max_qubits

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
GATE_TOL = 1e-12


class InputError(ClusterForgeError):
    pass


def dumps(obj) -> str:
    # float repr is the shortest string that round-trips, so output is byte-stable
    return json.dumps(obj, allow_nan=False) + "\n"


def _read_json(path: str, what: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {what} file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{what} file {path} is not valid JSON: {exc}") from None


def load_cluster(args) -> tuple[Cluster, list[int] | None]:
    if not args.cluster:
        raise InputError("--cluster is required")
    data = _read_json(args.cluster, "cluster")
    try:
        cluster, kappa = Cluster.from_dict(data)
    except ValidationError as exc:
        raise InputError(f"{args.cluster}: {exc}") from None
    report = validate_cluster(cluster)
    if not report:
        raise InputError(f"{args.cluster}: field 'sites': {report.reason}")
    if len(cluster) > max_qubits():
        raise InputError(f"{args.cluster}: {len(cluster)} sites exceed the limit of {max_qubits()} qubits")
    if getattr(args, "kappa", None):
        raw = _read_json(args.kappa, "kappa")
        if isinstance(raw, dict):
            raw = raw.get("kappa")
        try:
            kappa = kappa_in_qubit_order(cluster, data["sites"], raw)
        except ValidationError as exc:
            raise InputError(f"{args.kappa}: {exc}") from None
    return cluster, kappa


def load_state(path: str, binary: bool) -> StateVector:
    try:
        if binary or path.endswith(".bin"):
            return StateVector.from_bytes(Path(path).read_bytes())
    except OSError as exc:
        raise InputError(f"cannot read state file {path}: {exc.strerror}") from None
    data = _read_json(path, "state")
    if isinstance(data, dict) and "state" in data and "amplitudes" not in data:
        data = data["state"]
    try:
        return StateVector.from_dict(data)
    except (ValidationError, SizeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def pulse_from(args) -> PulseSpec | None:
    if args.jxx is None and args.jyy is None and args.jzz is None:
        return None
    p = DEFAULT_SAH_PULSE
    return PulseSpec(args.jxx if args.jxx is not None else p.j_xx,
                     args.jyy if args.jyy is not None else p.j_yy,
                     args.jzz if args.jzz is not None else p.j_zz)


def emit(text: str, out: str | None, stdout) -> None:
    if out:
        Path(out).write_text(text)
    stdout.write(text)


def cmd_build(args, stdout) -> int:
    cluster, kappa = load_cluster(args)
    result = build(cluster, args.model, pulse_from(args))
    report = verify_cluster_state(result.state, cluster, kappa, tol=args.tol or VERIFY_TOL)
    payload = result.metadata()
    payload["verification"] = report.to_dict()
    if args.binary_state:
        if not args.out:
            raise InputError("--binary-state needs --out")
        Path(args.out).write_bytes(result.state.to_bytes())
        payload["state_file"] = args.out
        stdout.write(dumps(payload))
    else:
        payload["state"] = result.state.to_dict()
        emit(dumps(payload), args.out, stdout)
    return EXIT_OK if report else EXIT_FAIL


def cmd_verify(args, stdout) -> int:
    cluster, kappa = load_cluster(args)
    if not args.state:
        raise InputError("--state is required")
    state = load_state(args.state, args.binary_state)
    if state.num_qubits != len(cluster):
        raise InputError(f"state has {state.num_qubits} qubits but the cluster has {len(cluster)} sites")
    report = verify_cluster_state(state, cluster, kappa, tol=args.tol or VERIFY_TOL)
    payload = report.to_dict()
    payload["failing_sites"] = [list(s) for s in report.failing_sites()]
    emit(dumps(payload), args.out, stdout)
    return EXIT_OK if report else EXIT_FAIL


def cmd_schedule(args, stdout) -> int:
    cluster, _ = load_cluster(args)
    schedule = generate_schedule(cluster)
    report = validate_schedule(cluster, schedule)
    emit(dumps(schedule.to_dict()), args.out, stdout)
    return EXIT_OK if report else EXIT_FAIL


def cmd_compare(args, stdout) -> int:
    cluster, _ = load_cluster(args)
    report = compare_builds(cluster, pulse_from(args), tol=args.tol or BUILD_TOL)
    emit(dumps(report.to_dict()), args.out, stdout)
    return EXIT_OK if report else EXIT_FAIL


def cmd_gate_check(args, stdout) -> int:
    tol = args.tol or GATE_TOL
    rows = [{"identity": name, "distance": d, "pass": d < tol} for name, d in gates.gate_identities()]
    ok = all(r["pass"] for r in rows)
    emit(dumps({"identities": rows, "pass": ok}), args.out, stdout)
    return EXIT_OK if ok else EXIT_FAIL


def positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="clusterforge",
                                     description="Build and verify lattice cluster states.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="also write the JSON result here")
    common.add_argument("--tol", type=positive_float, help="override the check tolerance")

    def with_cluster(p):
        p.add_argument("--cluster", required=True, help="cluster JSON file")
        p.add_argument("--kappa", help="JSON list of per-site kappa bits, in file site order")
        return p

    def with_pulse(p):
        for flag in ("--jxx", "--jyy", "--jzz"):
            p.add_argument(flag, type=float, help="integrated coupling in radians (SAH defaults: 0, 0, pi)")
        return p

    b = with_pulse(with_cluster(sub.add_parser("build", parents=[common], help="build a cluster state")))
    b.add_argument("--model", choices=MODELS, default="ising")
    b.add_argument("--binary-state", action="store_true",
                   help="write raw little-endian float64 pairs to --out instead of JSON")
    b.set_defaults(func=cmd_build)

    v = with_cluster(sub.add_parser("verify", parents=[common], help="check the stabilizer equations"))
    v.add_argument("--state", required=True, help="state JSON (or build output), or .bin raw file")
    v.add_argument("--binary-state", action="store_true", help="read --state as raw binary")
    v.set_defaults(func=cmd_verify)

    s = with_cluster(sub.add_parser("schedule", parents=[common], help="print the interaction schedule"))
    s.set_defaults(func=cmd_schedule)

    c = with_pulse(with_cluster(sub.add_parser("compare", parents=[common], help="cross-check all models")))
    c.set_defaults(func=cmd_compare)

    g = sub.add_parser("gate-check", parents=[common], help="check the gate identities")
    g.set_defaults(func=cmd_gate_check)
    return parser


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = make_parser().parse_args(argv)
    try:
        return args.func(args, stdout)
    except ClusterForgeError as exc:
        print(f"clusterforge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
