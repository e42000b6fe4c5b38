import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lieyamaguti.core import (LYAlgebra, abelian, adjoint_representation, associativity_check, direct_sum,
                              direct_sum_representation, four_dim_example, lya_from_associative, lya_residuals,
                              matrix_algebra, semidirect_product, truncated_series_rb_example, two_dim_example,
                              verify_lya, verify_representation, zero_representation)
from lieyamaguti.errors import StructureError
from lieyamaguti.exact import Q, asarray, rank
from lieyamaguti.rb import is_relative_rota_baxter
from oracles import lya_axioms_hold, to_lists

FIXTURES = [two_dim_example, four_dim_example]


@pytest.mark.parametrize("make", FIXTURES)
def test_fixtures_are_lie_yamaguti(make):
    alg = make()
    assert verify_lya(alg).passed
    assert lya_axioms_hold(to_lists(alg.bracket), to_lists(alg.ternary))
    assert verify_representation(adjoint_representation(alg)).passed


def test_skew_symmetry_enforced():
    c = np.zeros((2, 2, 2), dtype=object)
    c[0, 1, 0] = Q(1)
    with pytest.raises(StructureError):
        LYAlgebra(c, np.zeros((2, 2, 2, 2), dtype=object) + Q(0))


def test_perturbed_fixture_reports_axiom():
    alg = two_dim_example()
    d = alg.ternary.copy()
    d[0, 1, 1, 1] += 1
    d[1, 0, 1, 1] -= 1
    report = verify_lya(LYAlgebra(alg.bracket.copy(), d))
    assert not report.passed
    failing = {c.name for c in report.failures()}
    assert "fundamental_identity" in failing
    check = report.check("fundamental_identity")
    assert check.counterexample is not None and check.residual is not None


def test_empty_and_abelian():
    assert verify_lya(abelian(0)).passed
    assert verify_lya(abelian(3)).passed


def _invertible(draw_rows):
    P = asarray(draw_rows, (3, 3))
    return P if rank(P) == 3 else None


@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=3, max_size=3))
def test_transport_preserves_axioms(rows):
    P = _invertible(rows)
    if P is None:
        return
    alg = direct_sum(two_dim_example(), abelian(1)).transport(P)
    assert verify_lya(alg).passed
    assert verify_representation(adjoint_representation(alg)).passed


def test_residual_dictionary_agrees_with_oracle_on_failure():
    # a bracket that is not Jacobi and a zero ternary product
    alg = LYAlgebra.from_products(3, {(0, 1): [0, 0, 1], (1, 2): [1, 0, 0], (0, 2): [1, 0, 0]})
    ok = all(not np.any(r != 0) for r in lya_residuals(alg).values())
    assert ok == lya_axioms_hold(to_lists(alg.bracket), to_lists(alg.ternary))


def test_representations():
    alg = four_dim_example()
    ad = adjoint_representation(alg)
    assert verify_representation(zero_representation(alg, 2)).passed
    assert verify_representation(direct_sum_representation(ad, zero_representation(alg, 1))).passed
    semi = semidirect_product(alg, ad)
    assert semi.dim == 8 and verify_lya(semi).passed


def test_associative_construction():
    A = matrix_algebra(2)
    assert associativity_check(A).passed
    assert verify_lya(lya_from_associative(A)).passed


def test_truncated_series_operator():
    alg, Omega = truncated_series_rb_example(matrix_algebra(2), 2)
    assert alg.dim == 12
    assert is_relative_rota_baxter(Omega, alg, adjoint_representation(alg)).passed
