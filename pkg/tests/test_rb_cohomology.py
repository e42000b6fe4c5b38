import numpy as np
import pytest

from lieyamaguti.cochains import random_cochain
from lieyamaguti.core import adjoint_representation, four_dim_example, two_dim_example, two_dim_rb_operator
from lieyamaguti.errors import NotRotaBaxter, ResourceCapExceeded
from lieyamaguti.exact import asarray, basis_vector, nullspace
from lieyamaguti.rb import BigSpaceContext, twisted_l
from lieyamaguti.rb_cohomology import (RBComplex, coboundary_solve, cocycle_membership, rb_cohomology_dims,
                                       theorem_diff_oracle)
from lieyamaguti.tensors import wedge_dim
from oracles import System, brute_force_dims, coboundary_rows, to_lists

FOUR_DIM_T = asarray([[0, 2, 0, 0], [0, 0, 0, 0], [1, 2, 0, 3], [0, 1, 1, -1]])


def two_dim_complex(a=0, b=1):
    alg = two_dim_example()
    return RBComplex(alg, adjoint_representation(alg), two_dim_rb_operator(a, b))


def four_dim_complex():
    alg = four_dim_example()
    return RBComplex(alg, adjoint_representation(alg), FOUR_DIM_T)


def test_delta0_example_value():
    cx = two_dim_complex()
    assert cx.delta0(asarray([1])).to_matrix().tolist() == [[0, -1], [0, 0]]


@pytest.mark.parametrize("make", [two_dim_complex, four_dim_complex])
def test_delta0_images_are_cocycles(make):
    cx = make()
    for a in range(wedge_dim(cx.n)):
        assert cocycle_membership(cx, cx.delta0(basis_vector(wedge_dim(cx.n), a)), 1).passed


@pytest.mark.parametrize("make,levels", [(two_dim_complex, (1, 2, 3)), (four_dim_complex, (1, 2))])
def test_routes_agree_and_square_to_zero(make, levels):
    cx = make()
    rng = np.random.default_rng(11)
    for level in levels:
        for _ in range(3):
            F = random_cochain(level - 1, cx.m, cx.n, rng)
            image = cx.coboundary_yamaguti(F)
            assert image == cx.coboundary_explicit(F)
            if level + 1 <= cx.max_level:
                assert cx.coboundary(image, level + 1).is_zero()
    X = basis_vector(wedge_dim(cx.n), 0)
    assert cx.coboundary(cx.delta0(X), 1).is_zero()


@pytest.mark.parametrize("a,b", [(0, 1), (3, -2)])
@pytest.mark.parametrize("level", [1, 2])
def test_dims_match_brute_force(a, b, level):
    cx = two_dim_complex(a, b)
    S = System(to_lists(cx.alg.bracket), to_lists(cx.alg.ternary), to_lists(cx.rep.rho), to_lists(cx.rep.mu),
               to_lists(cx.T))
    ours = rb_cohomology_dims(cx, level)
    assert {k: ours[k] for k in ("cochains", "Z", "B", "H")} == brute_force_dims(S, level)


@pytest.mark.parametrize("level", [0, 1, 2])
def test_matrices_match_brute_force(level):
    cx = two_dim_complex(2, 5)
    S = System(to_lists(cx.alg.bracket), to_lists(cx.alg.ternary), to_lists(cx.rep.rho), to_lists(cx.rep.mu),
               to_lists(cx.T))
    M = cx.matrix(level)
    assert [list(col) for col in coboundary_rows(S, level)] == [to_lists(M[:, k]) for k in range(M.shape[1])]


def test_known_dims():
    cx = two_dim_complex()
    assert rb_cohomology_dims(cx, 1)["H"] == 2
    assert rb_cohomology_dims(cx, 2)["H"] == 3


@pytest.mark.parametrize("degree", [0, 1, 2])
def test_coboundary_is_signed_twisted_differential(degree):
    cx = two_dim_complex(1, 2)
    ctx = BigSpaceContext(cx.alg, cx.rep)
    tw = twisted_l(ctx, cx.T)
    rng = np.random.default_rng(degree)
    for _ in range(5):
        F = random_cochain(degree, 2, 2, rng)
        sign = -1 if degree % 2 else 1
        assert cx.coboundary(F, degree + 1) == tw.l1(F).scale(sign)
        if degree < 2:
            assert tw.l1(tw.l1(F)).is_zero()


def test_diff_oracle_reports_observed_sign():
    cx = two_dim_complex(1, 2)
    F = random_cochain(1, 2, 2, seed=5)
    report = theorem_diff_oracle(cx, F)
    assert report.data["observed_sign"] == "-1"
    assert theorem_diff_oracle(cx, random_cochain(0, 2, 2, seed=5)).passed


def test_coboundary_solve():
    cx = two_dim_complex()
    target = cx.coboundary(random_cochain(0, 2, 2, seed=1), 1)
    pre, report = coboundary_solve(cx, target, 2)
    assert report.passed and cx.coboundary(pre, 1) == target
    # H^1 is nonzero, so some kernel vector is not a coboundary
    verdicts = []
    for z in nullspace(cx.matrix(1)):
        Z = cx.from_vector(z, 1)
        assert cocycle_membership(cx, Z, 1).passed
        pre, report = coboundary_solve(cx, Z, 1)
        verdicts.append(pre is None)
        assert report.passed == (pre is not None)
    assert any(verdicts)


def test_level_cap_and_rb_requirement():
    cx = two_dim_complex()
    with pytest.raises(ResourceCapExceeded):
        cx.matrix(4)
    alg = two_dim_example()
    with pytest.raises(NotRotaBaxter):
        RBComplex(alg, adjoint_representation(alg), asarray([[1, 0], [0, 0]]))


def test_matrix_cross_check_catches_a_wrong_route(monkeypatch):
    alg = two_dim_example()
    cx = RBComplex(alg, adjoint_representation(alg), two_dim_rb_operator(1, 1))
    honest = cx.coboundary_explicit

    def skewed(F):
        out = honest(F)
        return out + out.scale(int(F.to_vector()[-1] != 0))

    monkeypatch.setattr(cx, "coboundary_explicit", skewed)
    from lieyamaguti.errors import InternalConsistencyError
    with pytest.raises(InternalConsistencyError):
        cx.matrix(2)
