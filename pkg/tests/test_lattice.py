import random

import pytest

from helpers import (
    oracle_pairing,
    oracle_rank_one_square,
    oracle_signature_by_descartes,
    random_k3_model,
    random_vector,
    same_lattice,
)
from mukai_entropy.errors import LatticeInputError
from mukai_entropy.lattice import (
    K3LatticeModel,
    MukaiVector,
    doubled_square_is_nonsquare,
    euler_pairing,
    is_spherical_class,
    line_bundle_vector,
    model_from_dict,
    model_to_dict,
    mukai_pairing,
    orthogonal_complement_basis,
    pairing_matrix,
    primitive_vector,
    rank_one_model,
    sign_normalized,
    signature_of,
    square,
    structure_sheaf_vector,
    vector_from_dict,
    vector_to_dict,
)

V = MukaiVector


def test_pairing_degree_two_examples():
    m = rank_one_model(2)
    assert mukai_pairing(m, V(1, (0,), 1), V(1, (0,), 1)) == -2
    assert mukai_pairing(m, V(1, (0,), 1), V(0, (1,), 0)) == 0


@pytest.mark.parametrize("d", [1, 2, 3, 5, 11])
@pytest.mark.parametrize("j", [0, 1, 2, 5])
def test_pairing_against_line_bundle_family(d, j):
    # <(1,0,1), (1,-j, j^2 d + 1)> expands to -(j^2 d + 2)
    m = rank_one_model(d)
    w = V(1, (-j,), j * j * d + 1)
    assert mukai_pairing(m, V(1, (0,), 1), w) == -(j * j * d + 2)
    assert mukai_pairing(m, V(1, (0,), 1), w) == oracle_pairing(m, V(1, (0,), 1), w)


def test_euler_pairing_examples():
    m = rank_one_model(2)
    assert euler_pairing(m, V(1, (0,), 1), V(1, (-1,), 3)) == 4
    assert euler_pairing(m, V(1, (0,), 1), V(1, (0,), 1)) == 2
    m5 = rank_one_model(5)
    assert euler_pairing(m5, V(1, (0,), 1), V(1, (-1,), 6)) == 7


def test_square_examples():
    for d in (1, 2, 7):
        assert square(rank_one_model(d), V(1, (0,), 1)) == -2
    assert square(rank_one_model(2), V(0, (1,), 0)) == 4


def test_rank_one_square_formula_oracle():
    rng = random.Random(10)
    for _ in range(200):
        d = rng.randint(1, 9)
        v = V(rng.randint(-20, 20), (rng.randint(-20, 20),), rng.randint(-20, 20))
        assert square(rank_one_model(d), v) == oracle_rank_one_square(d, v)


def test_is_spherical_class():
    m = rank_one_model(2)
    assert is_spherical_class(m, V(1, (0,), 1))
    assert not is_spherical_class(m, V(0, (1,), 0))
    # square of (1,-1,2) at d=2 is 4 - 4 = 0, so not spherical
    assert square(m, V(1, (-1,), 2)) == 0
    assert not is_spherical_class(m, V(1, (-1,), 2))


def test_pairing_dimension_mismatch():
    m = rank_one_model(2)
    with pytest.raises(LatticeInputError):
        mukai_pairing(m, V(1, (0, 0), 1), V(1, (0,), 1))


def test_model_validation():
    with pytest.raises(LatticeInputError):
        K3LatticeModel(1, ((3,),))  # odd diagonal
    with pytest.raises(LatticeInputError):
        K3LatticeModel(1, ((-2,),))  # negative definite
    with pytest.raises(LatticeInputError):
        K3LatticeModel(2, ((2, 1), (0, -2)))  # not symmetric
    with pytest.raises(LatticeInputError):
        K3LatticeModel(2, ((2, 0), (0, 2)))  # signature (2, 0)
    with pytest.raises(LatticeInputError):
        K3LatticeModel(1, ((0,),))  # degenerate
    # the hyperbolic plane U is fine: even with signature (1, 1)
    K3LatticeModel(2, ((0, 1), (1, 0)))


def test_signature_examples():
    assert signature_of(rank_one_model(2).mukai_gram).as_tuple() == (2, 1, 0)
    m = rank_one_model(2)
    basis = [V(0, (1,), 0), V(1, (0,), -1)]
    assert signature_of(pairing_matrix(m, basis)).as_tuple() == (2, 0, 0)
    assert signature_of(((0,),)).as_tuple() == (0, 0, 1)
    with pytest.raises(LatticeInputError):
        signature_of(((1, 2), (3, 4)))


def test_signature_random_against_descartes_oracle():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randint(1, 5)
        gram = [[0] * n for _ in range(n)]
        for i in range(n):
            gram[i][i] = rng.randint(-6, 6)
            for j in range(i + 1, n):
                gram[i][j] = gram[j][i] = rng.randint(-6, 6)
        sig = signature_of(gram).as_tuple()
        assert sig == oracle_signature_by_descartes(gram)
        assert sum(sig) == n


def test_full_mukai_signature_is_two_rho():
    rng = random.Random(12)
    for _ in range(25):
        rho = rng.randint(1, 4)
        model = random_k3_model(rng, rho)
        assert signature_of(model.mukai_gram).as_tuple() == (2, rho, 0)


def test_orthogonal_complement_examples():
    m = rank_one_model(2)
    basis = orthogonal_complement_basis(m, [V(1, (0,), 1)])
    assert same_lattice(basis, [V(0, (1,), 0), V(1, (0,), -1)])
    full = orthogonal_complement_basis(m, [])
    assert same_lattice(full, [V(1, (0,), 0), V(0, (1,), 0), V(0, (0,), 1)])
    nothing = orthogonal_complement_basis(
        m, [V(1, (0,), 0), V(0, (1,), 0), V(0, (0,), 1)]
    )
    assert nothing == []


def test_orthogonal_complement_properties():
    rng = random.Random(13)
    from mukai_entropy import _linalg

    for _ in range(40):
        rho = rng.randint(1, 4)
        model = random_k3_model(rng, rho)
        k = rng.randint(0, rho + 2)
        vs = [random_vector(rng, model, 5) for _ in range(k)]
        basis = orthogonal_complement_basis(model, vs)
        for b in basis:
            for v in vs:
                assert mukai_pairing(model, b, v) == 0
        span_rank = _linalg.rational_rank([v.coords for v in vs])
        assert len(basis) == (rho + 2) - span_rank


def test_orthogonal_complement_is_saturated():
    # any integral vector lying in the rational span of the complement must
    # already be an integer combination of the returned basis
    rng = random.Random(14)
    from helpers import in_lattice

    for _ in range(20):
        model = random_k3_model(rng, rng.randint(1, 3))
        vs = [random_vector(rng, model, 4)]
        basis = orthogonal_complement_basis(model, vs)
        if not basis:
            continue
        w = basis[0]
        for b in basis[1:]:
            k = rng.randint(-3, 3)
            w = V.from_coords(
                tuple(x + k * y for x, y in zip(w.coords, b.coords))
            )
        assert in_lattice(basis, w)


def test_pairing_symmetry_and_bilinearity():
    rng = random.Random(15)
    for model in (rank_one_model(3), random_k3_model(rng, 3)):
        for _ in range(1000):
            v = random_vector(rng, model)
            w = random_vector(rng, model)
            assert mukai_pairing(model, v, w) == mukai_pairing(model, w, v)
            assert euler_pairing(model, v, w) == -mukai_pairing(model, v, w)
        for _ in range(200):
            v = random_vector(rng, model)
            w = random_vector(rng, model)
            u = random_vector(rng, model)
            a, b = rng.randint(-1000, 1000), rng.randint(-1000, 1000)
            combo = V.from_coords(
                tuple(a * x + b * y for x, y in zip(v.coords, w.coords))
            )
            assert mukai_pairing(model, combo, u) == (
                a * mukai_pairing(model, v, u) + b * mukai_pairing(model, w, u)
            )


def test_doubled_square_is_nonsquare():
    m = rank_one_model(2)
    assert doubled_square_is_nonsquare(m, V(0, (1,), 0))  # 2*4 = 8
    m1 = rank_one_model(1)
    assert not doubled_square_is_nonsquare(m1, V(0, (1,), 0))  # 2*2 = 4
    assert not doubled_square_is_nonsquare(m, V(1, (-1,), 2))  # 2*0 = 0


def test_vector_helpers():
    assert primitive_vector(V(2, (4,), -6)) == V(1, (2,), -3)
    assert primitive_vector(V(0, (0,), 0)) == V(0, (0,), 0)
    assert sign_normalized(V(-1, (2,), 0)) == V(1, (-2,), 0)
    assert sign_normalized(V(0, (-3,), 1)) == V(0, (3,), -1)


def test_line_bundle_vector():
    m = rank_one_model(2)
    assert structure_sheaf_vector(m) == V(1, (0,), 1)
    assert line_bundle_vector(m, (-1,)) == V(1, (-1,), 3)
    assert line_bundle_vector(m, (2,)) == V(1, (2,), 9)


def test_json_round_trip():
    rng = random.Random(16)
    model = random_k3_model(rng, 3)
    assert model_from_dict(model_to_dict(model)) == model
    v = random_vector(rng, model)
    assert vector_from_dict(vector_to_dict(v)) == v
    with pytest.raises(LatticeInputError):
        model_from_dict({"picard_rank": 1})
    with pytest.raises(LatticeInputError):
        vector_from_dict({"r": 1, "m": 1})
