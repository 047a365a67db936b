"""Command-line front end: lattice ingestion, subcommands, CSV/JSON emission.

Output is deterministic byte for byte: floats are printed with 12 significant
digits, exact rationals as p/q strings, and JSON keys keep a fixed order.
Exit codes: 0 success, 2 input or invariant violation, 3 certification
failure, 4 search exhausted.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from fractions import Fraction

from .entropy import (
    ext_recursion_table,
    gy_gap,
    twist_entropy_curve,
)
from .errors import (
    CertificationError,
    LatticeInputError,
    SearchExhaustedError,
)
from .isometries import (
    isometry_to_dict,
    polarized_sublattice_basis,
    restrict_to_sublattice,
    spherical_twist_action,
    twist_tensor_action,
)
from .lattice import (
    euler_pairing,
    model_from_dict,
    model_to_dict,
    mukai_pairing,
    rank_one_model,
    signature_of,
    vector_from_dict,
)
from .orthosearch import find_positive_orthogonal, search_report
from .spectral import (
    char_poly,
    charpoly_to_dict,
    matrix_from_obj,
    radius_to_dict,
    spectral_radius,
)

DEFAULT_TOLERANCE = 1e-9
TOLERANCE_ENV = "MUKAI_ENTROPY_TOL"


def _fmt_float(x: float) -> str:
    return f"{x:.12g}"


def _fmt_rational(x: Fraction) -> str:
    return str(Fraction(x))


def _dump_json(obj) -> str:
    """Deterministic JSON with floats at 12 significant digits."""
    if isinstance(obj, dict):
        items = ",".join(
            f"{json.dumps(str(k))}: {_dump_json(v)}" for k, v in obj.items()
        )
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_dump_json(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return json.dumps(_fmt_rational(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _load_json_arg(value: str):
    """Inline JSON when the argument looks like a literal, else a file path."""
    text = value.strip()
    if text.startswith("{") or text.startswith("["):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise LatticeInputError(f"bad inline JSON: {exc}") from exc
    try:
        with open(value, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise LatticeInputError(f"cannot read {value}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise LatticeInputError(f"bad JSON in {value}: {exc}") from exc


def _load_model(path: str):
    return model_from_dict(_load_json_arg(path))


def _load_vector(value: str):
    return vector_from_dict(_load_json_arg(value))


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise LatticeInputError(f"bad rational number {text!r}") from exc


def _default_tolerance() -> float:
    raw = os.environ.get(TOLERANCE_ENV)
    if raw is None:
        return DEFAULT_TOLERANCE
    try:
        tol = float(raw)
    except ValueError as exc:
        raise LatticeInputError(
            f"{TOLERANCE_ENV} must be a float, got {raw!r}"
        ) from exc
    if not tol > 0:
        raise LatticeInputError(f"{TOLERANCE_ENV} must be positive")
    return tol


def _csv(header: list[str], rows: list[list[str]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    return "\n".join(lines) + "\n"


# --- subcommand handlers -----------------------------------------------------

def _cmd_lattice_check(args) -> str:
    model = _load_model(args.gram)
    sig = signature_of(model.mukai_gram)
    print(
        f"ok: NS signature (1, {model.picard_rank - 1}), "
        f"Mukai signature ({sig.n_plus}, {sig.n_minus})",
        file=sys.stderr,
    )
    return _dump_json(model_to_dict(model)) + "\n"


def _cmd_pair(args) -> str:
    model = _load_model(args.lattice)
    v = _load_vector(args.v)
    w = _load_vector(args.w)
    out = {
        "mukai": mukai_pairing(model, v, w),
        "euler": euler_pairing(model, v, w),
    }
    return _dump_json(out) + "\n"


def _cmd_twist(args) -> str:
    model = _load_model(args.lattice)
    s = _load_vector(args.s)
    action = spherical_twist_action(model, s)
    return _dump_json(isometry_to_dict(action)) + "\n"


def _cmd_phi_h(args) -> str:
    d = args.d
    if d < 1:
        raise LatticeInputError("--d must be a positive integer")
    if args.lattice is not None:
        model = _load_model(args.lattice)
        if model.ns_gram[0][0] != 2 * d:
            raise LatticeInputError(
                f"--d {d} does not match the model polarization degree "
                f"{model.ns_gram[0][0]} / 2"
            )
    else:
        model = rank_one_model(d)
    action = twist_tensor_action(model)
    if args.full:
        return _dump_json(isometry_to_dict(action)) + "\n"
    restricted = restrict_to_sublattice(action, polarized_sublattice_basis(model))
    return _dump_json({"matrix": [list(row) for row in restricted]}) + "\n"


def _cmd_char_poly(args) -> str:
    matrix = matrix_from_obj(_load_json_arg(args.matrix))
    return _dump_json(charpoly_to_dict(char_poly(matrix))) + "\n"


def _cmd_spectral_radius(args) -> str:
    matrix = matrix_from_obj(_load_json_arg(args.matrix))
    tol = args.tol if args.tol is not None else _default_tolerance()
    radius = spectral_radius(matrix, tol)
    return _dump_json(radius_to_dict(radius)) + "\n"


def _cmd_gy_gap(args) -> str:
    if args.d_min < 1 or args.d_max < args.d_min:
        raise LatticeInputError("need 1 <= d-min <= d-max")
    rows = []
    for d in range(args.d_min, args.d_max + 1):
        report = gy_gap(d)
        if not report.certified:
            raise CertificationError(f"gap positivity failed at d={d}")
        rows.append([
            str(d),
            _fmt_float(report.lower_bound),
            _fmt_float(math.exp(report.log_rho)),
            _fmt_float(report.log_rho),
            _fmt_float(report.gap),
        ])
    return _csv(["d", "log(d+2)", "rho", "log_rho", "gap"], rows)


def _cmd_entropy_curve(args) -> str:
    if args.spherical_dim < 1:
        raise LatticeInputError("--spherical-dim must be positive")
    curve = twist_entropy_curve(args.spherical_dim, args.complement == "yes")
    t_min = _parse_fraction(args.t_min)
    t_max = _parse_fraction(args.t_max)
    step = _parse_fraction(args.step)
    if step <= 0 or t_max < t_min:
        raise LatticeInputError("need t-min <= t-max and step > 0")
    rows = []
    t = t_min
    while t <= t_max:
        piece = curve.piece_at(t)
        rows.append([
            _fmt_rational(t),
            _fmt_rational(piece.value_at(t)),
            "proven" if piece.proven else "unproven",
        ])
        t += step
    return _csv(["t", "h_t", "proven"], rows)


def _cmd_ext_recursion(args) -> str:
    table = ext_recursion_table(args.d, args.i, args.k, args.n_max)
    rows = [
        [str(r.n), str(r.top_dim), str(r.growth_bound), str(r.chi)]
        for r in table.rows
    ]
    return _csv(["n", "top_dim", "growth_bound", "chi"], rows)


def _cmd_complement_search(args) -> str:
    model = _load_model(args.lattice)
    s = _load_vector(args.s)
    v = find_positive_orthogonal(model, s, args.bound)
    return _dump_json(search_report(model, v)) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mukai-entropy",
        description=(
            "Exact Mukai-lattice computations: pairings, induced isometries, "
            "certified spectral radii, entropy curves and orthogonal-class "
            "search."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("lattice-check", help="validate a lattice model JSON")
    p.add_argument("gram", help="model JSON file or inline JSON")
    p.set_defaults(handler=_cmd_lattice_check)

    p = sub.add_parser("pair", help="Mukai and Euler pairing of two vectors")
    p.add_argument("--lattice", required=True)
    p.add_argument("--v", required=True)
    p.add_argument("--w", required=True)
    p.set_defaults(handler=_cmd_pair)

    p = sub.add_parser("twist", help="isometry induced by a spherical twist")
    p.add_argument("--lattice", required=True)
    p.add_argument("--s", required=True)
    p.set_defaults(handler=_cmd_twist)

    p = sub.add_parser(
        "phi-h",
        help="twist-tensor action for polarization degree d "
             "(rank-3 matrix, or the full isometry with --full)",
    )
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--full", action="store_true")
    p.add_argument("--lattice")
    p.set_defaults(handler=_cmd_phi_h)

    p = sub.add_parser("char-poly", help="exact characteristic polynomial")
    p.add_argument("--matrix", required=True)
    p.set_defaults(handler=_cmd_char_poly)

    p = sub.add_parser("spectral-radius", help="certified spectral radius")
    p.add_argument("--matrix", required=True)
    p.add_argument("--tol", type=float)
    p.set_defaults(handler=_cmd_spectral_radius)

    p = sub.add_parser(
        "gy-gap", help="entropy lower bound versus lattice radius, CSV sweep"
    )
    p.add_argument("--d-min", type=int, required=True)
    p.add_argument("--d-max", type=int, required=True)
    p.set_defaults(handler=_cmd_gy_gap)

    p = sub.add_parser("entropy-curve", help="twist entropy curve on a grid")
    p.add_argument("--spherical-dim", type=int, required=True)
    p.add_argument("--complement", choices=["yes", "no", "unknown"],
                   required=True)
    p.add_argument("--t-min", required=True)
    p.add_argument("--t-max", required=True)
    p.add_argument("--step", required=True)
    p.set_defaults(handler=_cmd_entropy_curve)

    p = sub.add_parser("ext-recursion", help="Ext growth table, CSV")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(handler=_cmd_ext_recursion)

    p = sub.add_parser(
        "complement-search",
        help="positive orthogonal class with non-square doubled square",
    )
    p.add_argument("--lattice", required=True)
    p.add_argument("--s", required=True)
    p.add_argument("--bound", type=int, default=10)
    p.set_defaults(handler=_cmd_complement_search)

    parser.add_argument("--output", help="write to a file instead of stdout")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.handler(args)
    except LatticeInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CertificationError as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return 3
    except SearchExhaustedError as exc:
        print(f"search exhausted: {exc}", file=sys.stderr)
        return 4
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
