import random
from fractions import Fraction

import pytest

from conftest import ALT5, EQUI5, instance, random_instance
from qbfun import (
    Budget,
    DimVector,
    apply_bernstein_multi,
    a_function_check,
    b_multivariate,
    b_one_variable,
    dual_invariant,
    enumerate_invariants,
    evaluate_bracket_product,
    expand_invariant,
    grad_log_check,
    invariant_index,
    oracle_b_function,
    parse_quiver,
)
from qbfun.errors import BudgetExceededError
from qbfun.oracle import grad_log_invariant, variable_table


def b_value(b, sigma):
    return evaluate_bracket_product(b, (1,) * b.num_labels, (sigma,) * b.num_labels)


def test_expand_two_by_two_determinant():
    q = parse_quiver("1->2")
    n = DimVector((2, 2))
    f = expand_invariant(q, n, invariant_index(q, 1, 2))
    assert f.num_terms() == 2
    assert f.total_degree() == 2
    names = f.table.names
    term_strs = str(f)
    assert "x1_1_1" in term_strs and "x1_2_2" in term_strs
    assert names[-1] == "s"


def test_expand_path_product():
    q = parse_quiver("1->2->3")
    n = DimVector((1, 2, 1))
    f = expand_invariant(q, n, invariant_index(q, 1, 3))
    # x2_1_1*x1_1_1 + x2_1_2*x1_2_1
    assert f.num_terms() == 2
    assert f.total_degree() == 2


def test_expand_two_sources_one_sink():
    q = parse_quiver("1->2<-3")
    n = DimVector((1, 2, 1))
    f = expand_invariant(q, n, invariant_index(q, 1, 3))
    assert f.num_terms() == 2
    assert f.total_degree() == 2


def test_dual_invariant_degree_matches():
    rng = random.Random(51)
    for _ in range(10):
        q, n, invs = random_instance(rng, rmax=4, nmax=2)
        table = variable_table(q, n, ("s",))
        for idx in invs:
            try:
                f = expand_invariant(q, n, idx, table)
            except BudgetExceededError:
                continue
            fstar = dual_invariant(q, n, idx, table)
            assert fstar.total_degree() == f.total_degree()


def test_bernstein_single_variable():
    q = parse_quiver("1->2")
    n = DimVector((1, 1))
    result = oracle_b_function(q, n, invariant_index(q, 1, 2))
    assert result.b == b_one_variable(q, n, invariant_index(q, 1, 2))
    assert [f.constant for f, _ in result.b.factors] == [1]


@pytest.mark.parametrize("m", [2, 3])
def test_bernstein_classical_determinant(m):
    q = parse_quiver("1->2")
    n = DimVector((m, m))
    result = oracle_b_function(q, n, invariant_index(q, 1, 2))
    assert result.b == b_one_variable(q, n, invariant_index(q, 1, 2))
    assert result.constant == 1


@pytest.mark.parametrize("text", ["1->2->3", "1->2<-3", "1<-2->3", "1<-2<-3"])
def test_bernstein_three_vertices(text):
    q = parse_quiver(text)
    n = DimVector((1, 2, 1))
    (idx,) = enumerate_invariants(q, n)
    result = oracle_b_function(q, n, idx)
    assert result.b == b_one_variable(q, n, idx)


def test_bernstein_oriented_asymmetric_dims():
    q = parse_quiver("1->2<-3")
    for dims in ((1, 2, 2), (2, 2, 1), (1, 2, 2)):
        n = DimVector(dims)
        for idx in enumerate_invariants(q, n):
            result = oracle_b_function(q, n, idx)
            assert result.b == b_one_variable(q, n, idx)


def test_bernstein_roots_are_negative_rationals():
    rng = random.Random(52)
    done = 0
    while done < 8:
        q, n, invs = random_instance(rng, rmax=3, nmax=3)
        for idx in invs:
            try:
                result = oracle_b_function(q, n, idx)
            except BudgetExceededError:
                continue
            for form, _ in result.b.factors:
                assert form.constant >= 1
            done += 1


def test_bernstein_multi_zero_shift_is_one():
    q, n = instance("1->2->3->4", (1, 2, 2, 1))
    result = apply_bernstein_multi(q, n, (0, 0))
    assert result.ok and result.b == 1


def test_bernstein_multi_single_label_square():
    """l = 1 at shift 2: the double bracket telescopes to b(s) b(s+1).

    Composing with b_{f^2}(s) = b_(2)(2s), this is the square-power
    identity f*^2(d/dx) f^{s+2} = b(s) b(s+1) f^s.
    """
    q = parse_quiver("1->2")
    n = DimVector((2, 2))
    result = apply_bernstein_multi(q, n, (2,))
    assert result.ok and result.constant == 1
    b = b_multivariate(q, n)
    b1 = b_one_variable(q, n, invariant_index(q, 1, 2))
    for sigma in (0, 1, 2, 3):
        lhs = evaluate_bracket_product(b, (2,), (Fraction(sigma),))
        rhs = b_value(b1, sigma) * b_value(b1, sigma + 1)
        assert lhs == rhs


def test_bernstein_multi_two_labels():
    q, n = instance("1->2->3->4", (1, 2, 2, 1))
    assert len(enumerate_invariants(q, n)) == 2
    for shifts in ((1, 0), (0, 1), (1, 1)):
        result = apply_bernstein_multi(q, n, shifts)
        assert result.ok, shifts
        assert result.constant == 1


def test_grad_log_single_cell():
    q = parse_quiver("1->2")
    n = DimVector((1, 1))
    grads = grad_log_invariant(q, n, invariant_index(q, 1, 2))
    assert grads[0] == ((Fraction(1),),)


def test_grad_log_equioriented_truncated_identities():
    """The gradient at the generic point is the exact diagram's matrices."""
    q, n = instance(*EQUI5)
    idx = invariant_index(q, 1, 5)
    grads = grad_log_invariant(q, n, idx)

    def e_block(m, k, h):
        return tuple(tuple(1 if i == j and i < h else 0 for j in range(k)) for i in range(m))

    assert grads[0] == e_block(5, 2, 2)
    assert grads[1] == e_block(6, 5, 2)
    assert grads[2] == e_block(6, 6, 2)
    assert grads[3] == e_block(2, 6, 2)


def test_grad_log_check_worked_examples():
    for text, dims in (EQUI5, ALT5):
        q, n = instance(text, dims)
        for idx in enumerate_invariants(q, n):
            assert grad_log_check(q, n, idx).ok


def test_grad_log_check_random():
    rng = random.Random(53)
    for _ in range(20):
        q, n, invs = random_instance(rng, rmax=6, nmax=5)
        for idx in invs:
            assert grad_log_check(q, n, idx).ok


def test_a_function_check_worked_examples():
    for text, dims in (EQUI5, ALT5):
        q, n = instance(text, dims)
        verdict = a_function_check(q, n)
        assert verdict.ok, verdict.details


def test_a_function_check_single_determinant():
    """A_2 with n = (k, k): the monomial is s1^k."""
    for k in (1, 2, 3):
        q = parse_quiver("1->2")
        n = DimVector((k, k))
        verdict = a_function_check(q, n)
        assert verdict.ok
        from qbfun import a_function

        a = a_function(q, n)
        assert [(form.support, count) for form, count in a.factors] == [((1,), k)]


def test_budgets_abort_with_structured_error():
    q = parse_quiver("1->2")
    n = DimVector((3, 3))
    idx = invariant_index(q, 1, 2)
    with pytest.raises(BudgetExceededError):
        expand_invariant(q, n, idx, budget=Budget(invariant_terms=2))
    with pytest.raises(BudgetExceededError):
        expand_invariant(q, n, idx, budget=Budget(matrix_size=2))
    with pytest.raises(BudgetExceededError):
        oracle_b_function(q, n, idx, Budget(state_terms=3))


def test_budget_parsing():
    assert Budget.parse("500") == Budget(state_terms=500)
    assert Budget.parse("100,900") == Budget(invariant_terms=100, state_terms=900)
    assert Budget.parse("100,900,4") == Budget(100, 900, 4)


def test_generic_point_degree_equals_oracle_degree():
    """Expanded degree agrees with the factor count of the b-function."""
    rng = random.Random(54)
    done = 0
    while done < 10:
        q, n, invs = random_instance(rng, rmax=3, nmax=3)
        for idx in invs:
            try:
                f = expand_invariant(q, n, idx)
            except BudgetExceededError:
                continue
            assert f.total_degree() == b_one_variable(q, n, idx).degree()
            done += 1
