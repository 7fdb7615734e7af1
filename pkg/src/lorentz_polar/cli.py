"""``lorentz-polar`` command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 input is not a proper
orthochronous Lorentz matrix, 3 verification failed.
"""

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from .core import (
    BoostParameters,
    as_rotation,
    boost_matrix,
    max_abs,
    rotation_embedding,
    validate_lorentz,
)
from .decompose import CartanOrder, cartan_decompose, random_lorentz, verify_moretti
from .errors import LorentzError, NotLorentz
from .matrix_io import (
    ParseError,
    dumps,
    fmt,
    format_matrix_json,
    format_matrix_text,
    read_matrices,
    read_records,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_LORENTZ = 2
EXIT_VERIFY_FAILED = 3

SAMPLE_CHECK_TOL = 1e-10


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CliConfig:
    tolerance: float = 1e-9
    seed: int = 0
    format: str = "text"
    count: int = 1

    def __post_init__(self):
        if not self.tolerance > 0:
            raise UsageError(f"tolerance must be > 0 (got {self.tolerance})")
        if self.count < 1:
            raise UsageError(f"count must be >= 1 (got {self.count})")
        if self.seed < 0:
            raise UsageError(f"seed must be non-negative (got {self.seed})")
        if self.format not in ("json", "text"):
            raise UsageError(f"unknown format {self.format!r}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_input(path):
    if path in (None, "-"):
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def rotation_from_numbers(values):
    """3x3 rotation from 4 numbers (axis x, y, z, angle in radians) or 9 (row-major)."""
    a = np.asarray(values, dtype=float)
    if a.shape == (3, 3) or a.size == 9:
        return as_rotation(a.reshape(3, 3))
    if a.size == 4:
        axis, angle = a[:3], a[3]
        norm = np.linalg.norm(axis)
        if norm == 0.0:
            if angle == 0.0:
                return np.eye(3)
            raise UsageError("rotation axis must be nonzero")
        k = axis / norm
        K = np.array([[0, -k[2], k[1]], [k[2], 0, -k[0]], [-k[1], k[0], 0]])
        return np.eye(3) + np.sin(angle) * K + (1 - np.cos(angle)) * (K @ K)
    raise UsageError("rotation needs 4 numbers (axis-angle) or 9 numbers (3x3 matrix)")


def _rotation_from_record(rot):
    if rot is None:
        return np.eye(3)
    if isinstance(rot, dict):
        if "axis" not in rot or "angle" not in rot:
            raise ParseError('axis-angle rotation needs "axis" and "angle" fields')
        return rotation_from_numbers(list(rot["axis"]) + [rot["angle"]])
    return rotation_from_numbers(rot)


def _emit(line):
    sys.stdout.write(line + "\n")


def _diagnose(index, exc):
    print(f"error: matrix {index}: {exc}", file=sys.stderr)


def cmd_decompose(args, config):
    order = CartanOrder(args.order or "rb")
    status = EXIT_OK
    for i, m in enumerate(read_matrices(_read_input(args.file))):
        try:
            factors = cartan_decompose(m, order, config.tolerance)
        except LorentzError as exc:
            _diagnose(i, exc)
            status = EXIT_NOT_LORENTZ
            continue
        residual = max_abs(factors.matrix() - m)
        if config.format == "json":
            _emit(dumps({
                "order": order.value,
                "rotation": factors.rotation,
                "velocity": factors.boost.v,
                "gamma": factors.boost.gamma,
                "residual": residual,
            }))
        else:
            rows = [" ".join(fmt(x) for x in row) for row in factors.rotation]
            _emit(f"matrix {i} ({'rotation-boost' if order is CartanOrder.ROTATION_BOOST else 'boost-rotation'})")
            _emit(f"  R        {rows[0]}")
            _emit(f"           {rows[1]}")
            _emit(f"           {rows[2]}")
            _emit(f"  v        {' '.join(fmt(x) for x in factors.boost.v)}")
            _emit(f"  gamma    {fmt(factors.boost.gamma)}")
            _emit(f"  residual {fmt(residual)}")
    return status


def _compose_one(rotation, velocity, order):
    Lr = rotation_embedding(rotation)
    Lv = boost_matrix(BoostParameters(velocity))
    return Lr @ Lv if order is CartanOrder.ROTATION_BOOST else Lv @ Lr


def cmd_compose(args, config):
    if args.velocity is not None or args.rotation is not None:
        jobs = [(
            rotation_from_numbers(args.rotation) if args.rotation else np.eye(3),
            args.velocity if args.velocity is not None else [0.0, 0.0, 0.0],
            CartanOrder(args.order or "rb"),
        )]
    else:
        jobs = []
        for rec in read_records(_read_input(args.file)):
            if not isinstance(rec, dict):
                raise ParseError("compose records must be JSON objects")
            # An explicit --order wins over the record's own order.
            order = CartanOrder(args.order or rec.get("order", "rb"))
            jobs.append((_rotation_from_record(rec.get("rotation")), rec.get("velocity", [0, 0, 0]), order))
    outputs = [_compose_one(r, v, o) for r, v, o in jobs]
    for m in outputs:
        _emit(format_matrix_json(m) if config.format == "json" else format_matrix_text(m) + "\n")
    return EXIT_OK


_REPORT_FIELDS = (
    "rotation_factor_residual",
    "boost_factor_residual",
    "reversed_rotation_residual",
    "reversed_boost_residual",
    "group_residual",
    "reassembly_residual",
)


def cmd_verify(args, config):
    if args.random is not None:
        if args.random < 1:
            raise UsageError(f"--random needs N >= 1 (got {args.random})")
        rng = np.random.default_rng(config.seed)
        matrices = [random_lorentz(rng) for _ in range(args.random)]
    else:
        matrices = read_matrices(_read_input(args.file))

    status = EXIT_OK
    failed = False
    if config.format == "text":
        _emit("index " + " ".join(f.removesuffix("_residual") for f in _REPORT_FIELDS) + " verdict")
    for i, m in enumerate(matrices):
        try:
            report = verify_moretti(m, config.tolerance)
        except NotLorentz as exc:
            _diagnose(i, exc)
            status = EXIT_NOT_LORENTZ
            continue
        except LorentzError as exc:
            _diagnose(i, exc)
            failed = True
            continue
        failed |= not report.verdict
        if config.format == "json":
            rec = {"index": i}
            rec.update({f: getattr(report, f) for f in _REPORT_FIELDS})
            rec["verdict"] = report.verdict
            _emit(dumps(rec))
        else:
            vals = " ".join(fmt(getattr(report, f)) for f in _REPORT_FIELDS)
            _emit(f"{i} {vals} {'true' if report.verdict else 'false'}")
    if status != EXIT_OK:
        return status
    return EXIT_VERIFY_FAILED if failed else EXIT_OK


def cmd_sample(args, config):
    rng = np.random.default_rng(config.seed)
    for _ in range(config.count):
        m = random_lorentz(rng)
        # Self-check: the sampler must only produce group elements.
        cls = validate_lorentz(m, SAMPLE_CHECK_TOL)
        if not cls.is_proper_orthochronous:
            raise RuntimeError(f"sampler produced {cls}")
        _emit(format_matrix_json(m) if config.format == "json" else format_matrix_text(m) + "\n")
    return EXIT_OK


COMMANDS = {
    "decompose": cmd_decompose,
    "compose": cmd_compose,
    "verify": cmd_verify,
    "sample": cmd_sample,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", choices=["rb", "br"], default=None,
                        help="rb: L = L_R L_v, br: L = L_{Rv} L_R (default rb)")
    common.add_argument("--tolerance", type=float, default=1e-9)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--count", type=int, default=1, help="number of matrices for sample")
    common.add_argument("--random", type=int, default=None, metavar="N",
                        help="verify N seeded random matrices instead of reading input")
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("file", nargs="?", default="-", metavar="FILE|-")

    parser = _Parser(prog="lorentz-polar", description="Rotation-boost and polar decompositions of Lorentz matrices.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("decompose", parents=[common], help="factor Lorentz matrices into rotation and boost")
    compose = sub.add_parser("compose", parents=[common], help="build L from a rotation and a velocity")
    compose.add_argument("--rotation", type=float, nargs="+", metavar="X",
                         help="axis-angle (4 numbers) or row-major 3x3 (9 numbers)")
    compose.add_argument("--velocity", type=float, nargs=3, metavar=("VX", "VY", "VZ"))
    sub.add_parser("verify", parents=[common], help="check polar factors against rotation-boost factors")
    sub.add_parser("sample", parents=[common], help="emit seeded random proper orthochronous matrices")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = CliConfig(args.tolerance, args.seed, args.format, args.count)
        return COMMANDS[args.command](args, config)
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NotLorentz as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_LORENTZ
    except ValueError as exc:
        # Bad compose parameters: speed, rotation, field shapes, non-finite numbers.
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
