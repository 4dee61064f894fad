import random
from collections import Counter
from fractions import Fraction

import pytest

from conftest import ALT5, EQUI5, A7, instance, random_instance
from qbfun import (
    DimVector,
    FSet,
    FactoredBFunction,
    LinearForm,
    RankParameter,
    a_function,
    b_from_fset,
    b_multivariate,
    b_one_variable,
    enumerate_invariants,
    evaluate_bracket_product,
    f_set,
    invariant_index,
    parse_quiver,
    superpose,
)
from qbfun.errors import ShapeError


def one_var(constants: dict) -> FactoredBFunction:
    return FactoredBFunction.one_variable(Counter(constants))


def multi(num_labels, *factors) -> FactoredBFunction:
    counts = Counter()
    for support, constant, mult in factors:
        coeffs = tuple(1 if i in support else 0 for i in range(1, num_labels + 1))
        counts[LinearForm(coeffs, constant)] += mult
    return FactoredBFunction.from_counter(num_labels, counts)


def test_b_one_variable_first_example():
    q, n = instance(*EQUI5)
    assert b_one_variable(q, n, invariant_index(q, 1, 5)) == one_var({1: 1, 2: 1, 4: 1, 5: 3, 6: 2})
    assert b_one_variable(q, n, invariant_index(q, 3, 4)) == one_var({1: 1, 2: 1, 3: 1, 4: 1, 5: 1, 6: 1})


def test_b_one_variable_second_example():
    q, n = instance(*ALT5)
    assert b_one_variable(q, n, invariant_index(q, 1, 4)) == one_var(
        {1: 1, 2: 1, 3: 1, 4: 2, 5: 2, 6: 1, 7: 1}
    )
    assert b_one_variable(q, n, invariant_index(q, 2, 5)) == one_var(
        {1: 1, 2: 1, 3: 2, 4: 2, 5: 1, 6: 1, 7: 1}
    )


@pytest.mark.parametrize("m", [1, 2, 3, 5])
def test_b_one_variable_two_vertex_determinant(m):
    q = parse_quiver("1->2")
    n = DimVector((m, m))
    assert b_one_variable(q, n, invariant_index(q, 1, 2)) == one_var({c: 1 for c in range(1, m + 1)})


def test_b_one_variable_eight_vertex_example():
    q, n = instance("1->2->3<-4->5->6<-7<-8", (1, 2, 2, 2, 3, 3, 3, 2))
    assert b_one_variable(q, n, invariant_index(q, 1, 8)) == one_var({1: 1, 2: 5, 3: 3})


RANK_34 = RankParameter(((2, 0, 0, 0, 0), (5, 0, 0, 0), (6, 6, 0), (6, 0), (2,)))
RANK_15 = RankParameter(((2, 2, 2, 2, 2), (5, 2, 2, 2), (6, 2, 2), (6, 2), (2,)))
RANK_14 = RankParameter(((2, 2, 5, 9, 9), (5, 3, 7, 7), (7, 4, 4), (4, 0), (2,)))
RANK_25 = RankParameter(((2, 0, 5, 7, 9), (5, 5, 7, 9), (7, 2, 4), (4, 2), (2,)))


def test_f_set_from_rank_tables():
    assert f_set(RANK_15).ranges == ((4, 5), (5, 6), (5, 6), (1, 2))
    assert f_set(RANK_34).ranges == (None, None, (1, 6), None)
    assert f_set(RANK_14).ranges == ((4, 5), (5, 7), (1, 4), None)
    assert f_set(RANK_25).ranges == (None, (3, 7), (3, 4), (1, 2))


def test_f_set_all_diagonal_is_empty():
    diagonal = RankParameter(((2, 0, 0), (3, 0), (4,)))
    assert f_set(diagonal).ranges == (None, None)


def test_b_from_fset_matches_formula():
    q, n = instance(*EQUI5)
    assert b_from_fset(f_set(RANK_34)) == b_one_variable(q, n, invariant_index(q, 3, 4))
    assert b_from_fset(f_set(RANK_15)) == b_one_variable(q, n, invariant_index(q, 1, 5))
    qa, na = instance(*ALT5)
    assert b_from_fset(f_set(RANK_14)) == b_one_variable(qa, na, invariant_index(qa, 1, 4))


def test_b_from_empty_fset_is_one():
    assert b_from_fset(FSet(3, (None, None))).factors == ()


def test_superpose_single_column_example():
    """Four one-column ranges merged by equal constant terms."""
    fsets = [
        FSet(2, ((3, 5),)),
        FSet(2, ((4, 5),)),
        FSet(2, (None,)),
        FSet(2, ((1, 5),)),
    ]
    forms = superpose(fsets)
    assert forms == (
        LinearForm((0, 0, 0, 1), 1),
        LinearForm((0, 0, 0, 1), 2),
        LinearForm((1, 0, 0, 1), 3),
        LinearForm((1, 1, 0, 1), 4),
        LinearForm((1, 1, 0, 1), 5),
    )


def test_superpose_column_three_of_first_example():
    fsets = [FSet(2, ((1, 6),)), FSet(2, ((5, 6),))]
    forms = superpose(fsets)
    assert [f.constant for f in forms] == [1, 2, 3, 4, 5, 6]
    assert [f.support for f in forms] == [(1,), (1,), (1,), (1,), (1, 2), (1, 2)]


def test_b_multivariate_first_example():
    """Labels in sorted order: 1 = (1,5), 2 = (3,4)."""
    q, n = instance(*EQUI5)
    expected = multi(
        2,
        ((1,), 1, 1),
        ((1,), 2, 1),
        ((1,), 4, 1),
        ((1,), 5, 2),
        ((1,), 6, 1),
        ((2,), 1, 1),
        ((2,), 2, 1),
        ((2,), 3, 1),
        ((2,), 4, 1),
        ((1, 2), 5, 1),
        ((1, 2), 6, 1),
    )
    assert b_multivariate(q, n) == expected


def test_b_multivariate_second_example():
    q, n = instance(*ALT5)
    expected = multi(
        2,
        ((1,), 1, 1),
        ((1,), 2, 1),
        ((1,), 4, 1),
        ((1,), 5, 1),
        ((2,), 1, 1),
        ((2,), 2, 1),
        ((2,), 3, 1),
        ((2,), 4, 1),
        ((1, 2), 3, 1),
        ((1, 2), 4, 1),
        ((1, 2), 5, 1),
        ((1, 2), 6, 1),
        ((1, 2), 7, 1),
    )
    assert b_multivariate(q, n) == expected


def test_b_multivariate_seven_vertex_example():
    """Labels: 1 = (1,6), 2 = (2,7), 3 = (4,5)."""
    q, n = instance(*A7)
    expected = multi(
        3,
        ((1,), 1, 1),
        ((1,), 2, 1),
        ((1,), 3, 1),
        ((2,), 1, 1),
        ((2,), 3, 1),
        ((3,), 1, 1),
        ((1, 2), 2, 1),
        ((1, 2), 3, 2),
        ((1, 2), 4, 2),
        ((1, 2), 5, 1),
        ((1, 3), 2, 1),
        ((1, 2, 3), 3, 1),
        ((1, 2, 3), 4, 1),
    )
    assert b_multivariate(q, n) == expected


def test_b_multivariate_no_invariants_is_constant_one():
    q = parse_quiver("1->2")
    assert b_multivariate(q, DimVector((1, 2))).factors == ()


def test_evaluate_bracket_product_basics():
    b = multi(1, ((1,), 1, 1))  # [s1 + 1]
    assert evaluate_bracket_product(b, (2,), (0,)) == 2  # 1 * 2
    assert evaluate_bracket_product(b, (0,), (7,)) == 1
    with pytest.raises(ShapeError):
        evaluate_bracket_product(b, (1, 1), (0,))


def test_bracket_specialization_matches_one_variable():
    q, n = instance(*EQUI5)
    b = b_multivariate(q, n)
    invs = enumerate_invariants(q, n)
    for i, idx in enumerate(invs, start=1):
        bi = b_one_variable(q, n, idx)
        for sigma in (0, 1, 2):
            m = tuple(1 if k == i else 0 for k in range(1, len(invs) + 1))
            s = tuple(Fraction(sigma) if k == i else Fraction(0) for k in range(1, len(invs) + 1))
            assert evaluate_bracket_product(b, m, s) == evaluate_bracket_product(bi, (1,), (sigma,))


def test_fset_of_invariant_agrees_with_rank_route():
    from qbfun import diagram_to_matrices, exact_diagram, fset_of_invariant, rank_parameter

    rng = random.Random(30)
    for _ in range(30):
        q, n, invs = random_instance(rng)
        for idx in invs:
            rep = diagram_to_matrices(q, n, exact_diagram(q, n, idx))
            assert fset_of_invariant(q, n, idx) == f_set(rank_parameter(q, n, rep))


def test_specialize_label_random():
    rng = random.Random(31)
    for _ in range(40):
        q, n, invs = random_instance(rng)
        b = b_multivariate(q, n)
        for i, idx in enumerate(invs, start=1):
            assert b.specialize_label(i) == b_one_variable(q, n, idx)


def test_degree_matches_block_dimension_bookkeeping():
    """deg b = sum over columns of the walk level = total connection count."""
    from qbfun import exact_diagram

    rng = random.Random(32)
    for _ in range(25):
        q, n, invs = random_instance(rng)
        for idx in invs:
            assert b_one_variable(q, n, idx).degree() == exact_diagram(q, n, idx).total_connections()


def test_all_constants_positive_random():
    rng = random.Random(33)
    for _ in range(40):
        q, n, invs = random_instance(rng)
        for form, _ in b_multivariate(q, n).factors:
            assert form.constant >= 1
        for idx in invs:
            for form, _ in b_one_variable(q, n, idx).factors:
                assert form.constant >= 1


def test_a_function_first_example():
    """Label 1 = (1,5) has 6 own arrows, label 2 = (3,4) has 4; 2 shared."""
    q, n = instance(*EQUI5)
    a = a_function(q, n)
    table = {form.support: count for form, count in a.factors}
    assert table == {(1,): 6, (2,): 4, (1, 2): 2}
    assert dict(a.monomial((1, 0))) == {
        LinearForm((1, 0), 0): 6,
        LinearForm((1, 1), 0): 2,
    }
    assert dict(a.monomial((1, 1))) == {
        LinearForm((1, 0), 0): 6,
        LinearForm((0, 1), 0): 4,
        LinearForm((1, 1), 0): 4,
    }


def test_a_function_second_example():
    q, n = instance(*ALT5)
    a = a_function(q, n)
    table = {form.support: count for form, count in a.factors}
    assert table == {(1,): 4, (2,): 4, (1, 2): 5}


def test_a_function_homogeneity():
    """a_{eps_i} is homogeneous of degree deg f_i."""
    rng = random.Random(34)
    for _ in range(25):
        q, n, invs = random_instance(rng)
        a = a_function(q, n)
        for i, idx in enumerate(invs, start=1):
            degree = sum(count for _, count in a.eps_exponents(i))
            assert degree == b_one_variable(q, n, idx).degree()


def test_localization_divisibility_worked_examples():
    """Local b-functions of the worked slices divide the matching one-variable b."""
    from qbfun import restricted_invariant_shape

    cases = [
        (EQUI5, (3, 4), (1, 5), {1: 1, 2: 1, 4: 1, 5: 2, 6: 1}),
        (EQUI5, (1, 5), (3, 4), {1: 1, 2: 1, 3: 1, 4: 1}),
        (ALT5, (1, 4), (2, 5), {1: 1, 2: 1, 3: 1, 4: 1}),
    ]
    for (text, dims), slice_pq, f_pq, expected in cases:
        q, n = instance(text, dims)
        shape = restricted_invariant_shape(
            q, n, invariant_index(q, *slice_pq), invariant_index(q, *f_pq)
        )
        local = shape.local_b()
        assert local == one_var(expected)
        full = b_one_variable(q, n, invariant_index(q, *f_pq))
        assert local.divides(full)
