"""Isometries of the Mukai lattice induced by autoequivalences.

Spherical twists act as reflections v -> v + <v, s> s in a (-2)-class, line
bundle tensors as unipotent Mukai products, shifts as global signs. Matrices
act on column coordinate vectors and compose(a, b) means "apply b, then a",
matching functor composition, so no transposes appear anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from . import _linalg
from .errors import InvarianceError, LatticeInputError
from .lattice import (
    K3LatticeModel,
    MukaiVector,
    is_spherical_class,
    mukai_pairing,
    ns_product,
    square,
    structure_sheaf_vector,
)

_LABEL_CAP = 120


@dataclass(frozen=True)
class Isometry:
    """Integer matrix preserving the Mukai pairing, with a construction trace.

    Construction checks M^T G M == G and det M == +-1 exactly, so an Isometry
    value is a proof that the map really is a lattice isometry.
    """

    model: K3LatticeModel
    matrix: tuple[tuple[int, ...], ...]
    label: str

    def __post_init__(self):
        n = self.model.rank
        mat = _linalg.to_int_matrix(self.matrix)
        object.__setattr__(self, "matrix", mat)
        if len(mat) != n or any(len(row) != n for row in mat):
            raise LatticeInputError(
                f"isometry matrix must be {n}x{n} for this model"
            )
        g = self.model.mukai_gram
        gram_back = _linalg.mat_mul(
            _linalg.mat_mul(_linalg.transpose(mat), g), mat
        )
        if gram_back != g:
            raise LatticeInputError("matrix does not preserve the Mukai pairing")
        if _linalg.bareiss_det(mat) not in (1, -1):
            raise LatticeInputError("isometry must have determinant +-1")

    def apply(self, v: MukaiVector) -> MukaiVector:
        if len(v.c) != self.model.picard_rank:
            raise LatticeInputError("vector rank does not match the model")
        return MukaiVector.from_coords(_linalg.mat_vec(self.matrix, v.coords))


def _fmt_vec(v: MukaiVector) -> str:
    return "(" + ",".join(str(x) for x in v.coords) + ")"


def _join_labels(a: str, b: str) -> str:
    label = f"{a} * {b}"
    if len(label) > _LABEL_CAP:
        label = label[: _LABEL_CAP - 4] + " ..."
    return label


def identity_action(model: K3LatticeModel) -> Isometry:
    return Isometry(model, _linalg.identity(model.rank), "id")


def spherical_twist_action(model: K3LatticeModel, s: MukaiVector) -> Isometry:
    """Reflection v -> v + <v, s> s induced by the twist along a (-2)-class.

    Only classes of square -2 give an isometry this way, so anything else is
    rejected rather than silently producing a non-isometry.
    """
    if not is_spherical_class(model, s):
        raise LatticeInputError(
            f"twist class must have square -2, got {square(model, s)}"
        )
    n = model.rank
    s_coords = s.coords
    pair_row = _linalg.mat_vec(model.mukai_gram, s_coords)
    mat = tuple(
        tuple(
            (1 if i == j else 0) + s_coords[i] * pair_row[j]
            for j in range(n)
        )
        for i in range(n)
    )
    return Isometry(model, mat, f"twist[{_fmt_vec(s)}]")


def tensor_line_bundle_action(model: K3LatticeModel, divisor) -> Isometry:
    """Action of tensoring by the line bundle with NS class D.

    Sends (r, c, m) to (r, c + r D, m + c.D + r D^2/2); unipotent of index 3.
    """
    d_vec = tuple(int(x) for x in divisor)
    rho = model.picard_rank
    if len(d_vec) != rho:
        raise LatticeInputError("divisor length must equal picard_rank")
    d_sq = ns_product(model, d_vec, d_vec)
    g = model.ns_gram
    n = model.rank
    rows = [[0] * n for _ in range(n)]
    rows[0][0] = 1
    for i in range(rho):
        rows[1 + i][0] = d_vec[i]
        rows[1 + i][1 + i] = 1
    rows[n - 1][0] = d_sq // 2
    for j in range(rho):
        rows[n - 1][1 + j] = sum(g[j][t] * d_vec[t] for t in range(rho))
    rows[n - 1][n - 1] = 1
    label = "tensor[(" + ",".join(str(x) for x in d_vec) + ")]"
    return Isometry(model, tuple(tuple(r) for r in rows), label)


def shift_action(model: K3LatticeModel, n: int) -> Isometry:
    """Shift by n acts as (-1)^n times the identity."""
    sign = 1 if n % 2 == 0 else -1
    mat = tuple(
        tuple(sign if i == j else 0 for j in range(model.rank))
        for i in range(model.rank)
    )
    return Isometry(model, mat, f"shift[{n}]")


def compose(a: Isometry, b: Isometry) -> Isometry:
    """Apply b first, then a."""
    if a.model != b.model:
        raise LatticeInputError("cannot compose isometries of different models")
    return Isometry(
        a.model, _linalg.mat_mul(a.matrix, b.matrix), _join_labels(a.label, b.label)
    )


def inverse(a: Isometry) -> Isometry:
    return Isometry(
        a.model, _linalg.invert_unimodular(a.matrix), f"inverse[{a.label}]"
    )


def power(a: Isometry, n: int) -> Isometry:
    base = a if n >= 0 else inverse(a)
    result = _linalg.identity(a.model.rank)
    for _ in range(abs(n)):
        result = _linalg.mat_mul(result, base.matrix)
    return Isometry(a.model, result, f"power[{a.label},{n}]")


def polarization_degree(model: K3LatticeModel) -> int:
    """Half the self-intersection of the first NS basis vector.

    The first basis vector plays the role of the polarization by convention;
    it must have positive even square.
    """
    h_sq = model.ns_gram[0][0]
    if h_sq <= 0:
        raise LatticeInputError(
            "polarization (first NS basis vector) must have positive square"
        )
    return h_sq // 2


def twist_tensor_action(model: K3LatticeModel) -> Isometry:
    """Twist along (1, 0, 1) composed after tensoring by the dual polarization.

    This is the family whose spectral radius stays far below its entropy
    growth rate; on the polarized rank-3 sublattice it acts by
    [[-d, 2d, -1], [-1, 1, 0], [-1, 0, 0]] where 2d is the polarization degree.
    """
    polarization_degree(model)
    rho = model.picard_rank
    minus_h = (-1,) + (0,) * (rho - 1)
    twist = spherical_twist_action(model, structure_sheaf_vector(model))
    tensor = tensor_line_bundle_action(model, minus_h)
    return compose(twist, tensor)


def polarized_sublattice_basis(model: K3LatticeModel) -> list[MukaiVector]:
    """Basis (1,0,0), (0,H,0), (0,0,1) of the rank-3 polarized sublattice."""
    rho = model.picard_rank
    zeros = (0,) * rho
    h = (1,) + (0,) * (rho - 1)
    return [
        MukaiVector(1, zeros, 0),
        MukaiVector(0, h, 0),
        MukaiVector(0, zeros, 1),
    ]


def restrict_to_sublattice(a: Isometry, basis) -> tuple[tuple[int, ...], ...]:
    """Matrix of the isometry in the given sublattice basis.

    The basis must be independent, primitive and span an invariant sublattice;
    each failure is an error, never a silent projection.
    """
    vectors = list(basis)
    if not vectors:
        raise LatticeInputError("sublattice basis must be non-empty")
    n = a.model.rank
    k = len(vectors)
    for v in vectors:
        if len(v.c) != a.model.picard_rank:
            raise LatticeInputError("basis vector rank does not match model")
    columns = [v.coords for v in vectors]
    if _linalg.rational_rank(columns) != k:
        raise LatticeInputError("sublattice basis vectors are dependent")
    minor_gcd = 0
    for rows in combinations(range(n), k):
        minor = _linalg.bareiss_det(
            [[columns[j][i] for j in range(k)] for i in rows]
        )
        minor_gcd = math.gcd(minor_gcd, abs(minor))
    if minor_gcd != 1:
        raise LatticeInputError("basis does not span a primitive sublattice")
    out_cols = []
    for v in vectors:
        image = a.apply(v).coords
        sol = _linalg.solve_exact(columns, image)
        if sol is None:
            raise InvarianceError(
                f"image of {_fmt_vec(v)} leaves the span of the basis"
            )
        if any(x.denominator != 1 for x in sol):
            raise InvarianceError(
                f"image of {_fmt_vec(v)} is not an integer combination "
                "of the basis"
            )
        out_cols.append([int(x) for x in sol])
    return tuple(tuple(out_cols[j][i] for j in range(k)) for i in range(k))


def fixes_pointwise(a: Isometry, vectors) -> bool:
    return all(a.apply(v) == v for v in vectors)


# --- JSON interchange -------------------------------------------------------

def isometry_to_dict(a: Isometry) -> dict:
    return {
        "matrix": [list(row) for row in a.matrix],
        "label": a.label,
        "picard_rank": a.model.picard_rank,
    }


def isometry_from_dict(model: K3LatticeModel, data: dict) -> Isometry:
    try:
        matrix = data["matrix"]
        label = data.get("label", "loaded")
        rho = data["picard_rank"]
    except (KeyError, TypeError) as exc:
        raise LatticeInputError(
            "isometry JSON needs keys 'matrix' and 'picard_rank'"
        ) from exc
    if rho != model.picard_rank:
        raise LatticeInputError("isometry picard_rank does not match the model")
    return Isometry(model, tuple(tuple(row) for row in matrix), str(label))
