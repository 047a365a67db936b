"""Search for positive orthogonal classes and rank-2 isotropy bookkeeping.

Given a spherical class s, the goal is an integral primitive v orthogonal to
s with v^2 > 0 such that 2 v^2 is not a perfect square; equivalently, the
rank-2 span of s and v contains no isotropic vector. Enumeration runs over
coefficient boxes in an orthogonal-complement basis, and when every positive
hit in the box has square 2 v^2 the candidate is repaired by the perturbation
N v + u with u orthogonal to both s and v, which breaks squareness for all
but finitely many N.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import _linalg
from .errors import LatticeInputError, SearchExhaustedError
from .lattice import (
    K3LatticeModel,
    MukaiVector,
    add_vectors,
    is_perfect_square,
    is_spherical_class,
    mukai_pairing,
    orthogonal_complement_basis,
    pairing_matrix,
    primitive_vector,
    scale_vector,
    sign_normalized,
    signature_of,
    Signature,
    square,
    vector_to_dict,
)

_PERTURBATION_BUDGET = 10 ** 6


@dataclass(frozen=True)
class Rank2Form:
    """Gram matrix of the span of two Mukai classes."""

    gram: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = _linalg.to_int_matrix(self.gram)
        object.__setattr__(self, "gram", g)
        if len(g) != 2 or any(len(row) != 2 for row in g):
            raise LatticeInputError("rank-2 form needs a 2x2 matrix")
        if g[0][1] != g[1][0]:
            raise LatticeInputError("rank-2 form must be symmetric")


def rank2_form(model: K3LatticeModel, s: MukaiVector,
               v: MukaiVector) -> Rank2Form:
    if not is_spherical_class(model, s):
        raise LatticeInputError("first class must be spherical (square -2)")
    p = mukai_pairing(model, s, v)
    return Rank2Form(((square(model, s), p), (p, square(model, v))))


def rank2_isotropy_free(model: K3LatticeModel, s: MukaiVector,
                        v: MukaiVector) -> bool:
    """True when the span of s and v contains no nonzero isotropic vector.

    For an orthogonal pair with s^2 = -2 this happens exactly when 2 v^2 is
    not a perfect square: a s + b v has square -2 a^2 + b^2 v^2.
    """
    if square(model, s) != -2:
        raise LatticeInputError("s must have square -2")
    if mukai_pairing(model, s, v) != 0:
        raise LatticeInputError("classes must be orthogonal")
    return not is_perfect_square(2 * square(model, v))


def _coefficient_shells(rank: int, bound: int):
    """Coefficient tuples with sup norm r for r = 1..bound, shortest first."""
    for r in range(1, bound + 1):
        shell = [
            t for t in product(range(-r, r + 1), repeat=rank)
            if max(abs(x) for x in t) == r
        ]
        shell.sort(key=lambda t: (sum(abs(x) for x in t), t))
        yield from shell


def _combine(basis, coeffs) -> MukaiVector:
    out = scale_vector(coeffs[0], basis[0])
    for c, b in zip(coeffs[1:], basis[1:]):
        out = add_vectors(out, scale_vector(c, b))
    return out


def find_positive_orthogonal(model: K3LatticeModel, s: MukaiVector,
                             search_bound: int) -> MukaiVector:
    """Primitive v with <v, s> = 0, v^2 > 0 and 2 v^2 not a perfect square.

    Enumerates the orthogonal complement of s over coefficient boxes of
    growing sup norm. If positive classes exist in the box but all of them
    have square 2 v^2, the first one is perturbed by N v + u for the smallest
    N that works. An empty box raises SearchExhaustedError.
    """
    if not is_spherical_class(model, s):
        raise LatticeInputError(
            f"search needs a spherical class, got square {square(model, s)}"
        )
    if isinstance(search_bound, bool) or not isinstance(search_bound, int) \
            or search_bound < 1:
        raise LatticeInputError("search_bound must be a positive integer")
    basis = orthogonal_complement_basis(model, [s])
    first_positive = None
    for coeffs in _coefficient_shells(len(basis), search_bound):
        v = sign_normalized(primitive_vector(_combine(basis, coeffs)))
        q = square(model, v)
        if q <= 0:
            continue
        if not is_perfect_square(2 * q):
            return v
        if first_positive is None:
            first_positive = v
    if first_positive is None:
        raise SearchExhaustedError(
            f"no positive orthogonal class within coefficient bound "
            f"{search_bound}; raise the bound"
        )
    return _perturb_square_case(model, s, first_positive)


def _perturb_square_case(model: K3LatticeModel, s: MukaiVector,
                         v: MukaiVector) -> MukaiVector:
    basis = orthogonal_complement_basis(model, [s, v])
    u = _anisotropic_combination(model, basis)
    if u is None:
        raise SearchExhaustedError(
            "no anisotropic perturbation direction orthogonal to s and v"
        )
    for n in range(1, _PERTURBATION_BUDGET + 1):
        w = add_vectors(scale_vector(n, v), u)
        q = square(model, w)
        if q > 0 and not is_perfect_square(2 * q):
            assert mukai_pairing(model, w, s) == 0
            return sign_normalized(primitive_vector(w))
    raise SearchExhaustedError(
        "perturbation budget exhausted without breaking squareness"
    )


def _anisotropic_combination(model, basis):
    for u in basis:
        if square(model, u) != 0:
            return u
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            for cand in (add_vectors(basis[i], basis[j]),
                         add_vectors(basis[i], scale_vector(-1, basis[j]))):
                if square(model, cand) != 0:
                    return cand
    return None


@dataclass(frozen=True)
class SignatureReport:
    """Inertia bookkeeping around a spherical class.

    The ambient Mukai form has signature (2, rho); removing the negative
    direction spanned by s leaves (2, rho - 1) on its orthogonal complement.
    When a negative-definite test subspace is supplied, the signature of its
    span together with s is reported as well.
    """

    full: Signature
    s_line: Signature
    s_perp: Signature
    extended: Signature | None


def signature_report(model: K3LatticeModel, s: MukaiVector,
                     negative_subspace=None) -> SignatureReport:
    if not is_spherical_class(model, s):
        raise LatticeInputError("signature report needs a spherical class")
    full = signature_of(model.mukai_gram)
    s_line = signature_of(((square(model, s),),))
    comp = orthogonal_complement_basis(model, [s])
    s_perp = signature_of(pairing_matrix(model, comp))
    extended = None
    if negative_subspace:
        vectors = list(negative_subspace)
        sub_sig = signature_of(pairing_matrix(model, vectors))
        if sub_sig.n_plus != 0 or sub_sig.n_zero != 0:
            raise LatticeInputError("test subspace must be negative definite")
        extended = signature_of(pairing_matrix(model, vectors + [s]))
    return SignatureReport(full, s_line, s_perp, extended)


def search_report(model: K3LatticeModel, v: MukaiVector) -> dict:
    """JSON-ready summary of the three conditions on a search result."""
    q = square(model, v)
    return {
        "v": vector_to_dict(v),
        "v_squared": q,
        "twice_square": 2 * q,
        "is_square": is_perfect_square(2 * q),
    }
