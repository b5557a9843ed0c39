import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hesslab.ffla import ExactMatrix, SingularMatrixError, permutation_matrix
from hesslab.hesscore import JordanType, all_jordan_types, hfpjf
from hesslab.patches import (MultiPoly, NotInVarietyError, VarOrder, in_mmax_variety, in_sing_candidate,
                             in_sing_candidate_subspaces, is_smooth_point_mmax, is_squarefree, linear_part,
                             patch_determinant, patch_matrix, patch_report, patch_variables, poly_determinant,
                             random_mmax_point, random_sing_point, random_unitriangular_centralizer,
                             squarefree_witness)
from hesslab.symgrp import all_permutations

from oracles import leibniz_det

I3 = ExactMatrix.identity(3)
DIAG100 = ExactMatrix(((1, 0, 0), (0, 0, 0), (0, 0, 0)))
J3 = ExactMatrix(((0, 1, 0), (0, 0, 1), (0, 0, 0)))


def z(j, i, p=None):
    return MultiPoly.var((j, i), p)


def one(p=None):
    return MultiPoly.const(1, p)


def test_multipoly_basics():
    f = z(2, 1) * z(3, 2) - z(3, 1)
    assert f.render() == "z21*z32 - z31"
    assert f.total_degree() == 2
    assert f.homogeneous_part(1) == -z(3, 1)
    assert (f - f).is_zero()
    assert f.evaluate({(2, 1): 2, (3, 2): 3, (3, 1): 1}) == 5
    assert MultiPoly({(): 4}, 2).is_zero()
    js = f.to_json()
    assert js[0] == {"exponents": {"z21": 1, "z32": 1}, "coeff": "1"}


polys = st.dictionaries(
    st.tuples(st.integers(0, 2), st.integers(0, 2)).map(lambda e: tuple(((v, k) for v, k in zip([(2, 1), (3, 1)], e) if k))),
    st.integers(-3, 3), max_size=4).map(MultiPoly)


@given(polys, polys, polys)
def test_multipoly_ring_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@settings(max_examples=40)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=4, max_size=4))
def test_poly_determinant_of_constants(rows):
    M = [[MultiPoly.const(a) for a in r] for r in rows]
    assert poly_determinant(M, None).constant_term() == leibniz_det(rows)


def test_worked_examples():
    assert patch_determinant(DIAG100, I3) == z(2, 1) * z(3, 2) - z(3, 1)
    E12 = ExactMatrix(((0, 1), (0, 0)))
    assert patch_determinant(E12, ExactMatrix.identity(2)) == z(2, 1) * z(2, 1)
    assert patch_determinant(ExactMatrix.zeros(3), I3).is_zero()


def test_patch_matrix_shape():
    A = patch_matrix(J3, I3)
    assert A[0][1] == one() and A[1][1] == z(2, 1) and A[2][2] == z(3, 2)


def test_linear_part_examples():
    assert linear_part(DIAG100, I3, check=True) == -z(3, 1)
    assert linear_part(J3, I3, check=True).is_zero()
    lin = linear_part(ExactMatrix(((1, 0, 0), (0, 2, 0), (0, 0, 3))), I3, check=True)
    assert lin.coefficient((((3, 1), 1),)) != 0


def test_membership_errors():
    # v_1 = e_3 but x e_3 = e_2 is not in span(e_3, e_1)
    g = permutation_matrix((3, 1, 2))
    assert not in_mmax_variety(J3, g)
    with pytest.raises(NotInVarietyError):
        linear_part(J3, g)
    assert patch_determinant(J3, g).constant_term() != 0
    with pytest.raises(SingularMatrixError):
        patch_determinant(J3, ExactMatrix.zeros(3))


def test_smoothness_examples():
    assert is_smooth_point_mmax(DIAG100, I3)
    assert not is_smooth_point_mmax(J3, I3)
    rep = patch_report(DIAG100, I3)
    assert rep.smooth and rep.in_sing_candidate


def test_sing_candidate_examples():
    assert in_sing_candidate(DIAG100, I3)
    assert in_sing_candidate(J3, I3)
    g = ExactMatrix(((1, 0, 0), (1, 1, 0), (0, 0, 1)))
    assert not in_sing_candidate(ExactMatrix(((1, 0, 0), (0, 2, 0), (0, 0, 3))), g)


def test_sing_candidate_two_ways():
    rng = random.Random(3)
    for t in all_jordan_types(4, ordered=False):
        x = hfpjf(t).x
        for w in all_permutations(4):
            g = permutation_matrix(w.word)
            assert in_sing_candidate(x, g) == in_sing_candidate_subspaces(x, g)
        for _ in range(3):
            g = random_mmax_point(x, rng)
            assert in_sing_candidate(x, g) == in_sing_candidate_subspaces(x, g)


def test_linear_part_formula_matches_truncation_random():
    rng = random.Random(11)
    done = 0
    for n in (3, 4):
        for _ in range(25):
            x = ExactMatrix([[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)] for _ in range(n)])
            g = random_mmax_point(x, rng)
            assert in_mmax_variety(x, g)
            linear_part(x, g, check=True)
            done += 1
    assert done >= 50


def test_samplers_land_where_claimed():
    rng = random.Random(5)
    for t in all_jordan_types(4, ordered=False):
        x = hfpjf(t).x
        g = random_sing_point(x, rng)
        assert g is not None and in_sing_candidate(x, g) and in_mmax_variety(x, g)
        c = random_unitriangular_centralizer(x, rng)
        assert c @ x == x @ c
        assert all(c[i, j] == (1 if i == j else 0) for i in range(4) for j in range(i + 1))


def test_fp_pipeline_agrees_with_rational_pipeline():
    x = hfpjf(JordanType(((2, 1),))).x
    for w in all_permutations(3):
        g = permutation_matrix(w.word)
        if not in_mmax_variety(x, g):
            continue
        q = linear_part(x, g)
        fp = linear_part(x.reduce_mod(5), g.reduce_mod(5), check=True)
        assert fp == MultiPoly({m: int(c) for m, c in q.terms.items()}, 5)


def test_var_order_lex():
    order = VarOrder(((3, 2), (3, 1), (2, 1)))
    f = z(3, 2) * z(2, 1) * z(2, 1) + z(3, 2) * z(3, 1) * z(2, 1) + z(3, 1) * z(3, 1)
    assert order.initial(f) == (((2, 1), 1), ((3, 1), 1), ((3, 2), 1))
    # a proper prefix is smaller
    assert order.key((((3, 2), 1),)) < order.key((((3, 2), 1), ((2, 1), 1)))
    with pytest.raises(ValueError):
        VarOrder(((2, 1), (2, 1)))


def test_witness_examples():
    w = squarefree_witness(DIAG100, I3)
    assert w.ok and w.status == "ok"
    assert w.initial == (((2, 1), 1), ((3, 2), 1))
    fail = squarefree_witness(ExactMatrix(((0, 1), (0, 0))), ExactMatrix.identity(2))
    assert fail.status == "failure" and not fail.ok
    assert fail.determinant == z(2, 1) * z(2, 1)
    deg = squarefree_witness(ExactMatrix.identity(3), I3)
    assert deg.status == "degenerate" and deg.determinant.is_zero()


def _det3_from_ell(a):
    """det [l | u_1 | u_2] for l_i = a[i][0] + a[i][1] z21 + a[i][2] z31, expanded by hand."""
    l = [MultiPoly.const(r[0]) + z(2, 1) * r[1] + z(3, 1) * r[2] for r in a]
    return (z(3, 2) * z(2, 1) - z(3, 1)) * l[0] - z(3, 2) * l[1] + l[2]


@settings(max_examples=60)
@given(st.lists(st.lists(st.integers(-2, 2), min_size=3, max_size=3), min_size=3, max_size=3))
def test_witness_base_case_on_arbitrary_y(rows):
    # with g = I the patch matrix is L built from y = x itself
    x = ExactMatrix(rows)
    if not in_mmax_variety(x, I3):
        return
    assert patch_determinant(x, I3) == _det3_from_ell(rows)
    w = squarefree_witness(x, I3)
    assert w.ok, w.to_json()


@pytest.mark.parametrize("n", [3, 4])
def test_witness_on_coordinate_patches(n):
    for t in all_jordan_types(n):
        x = hfpjf(t).x
        for wperm in all_permutations(n):
            g = permutation_matrix(wperm.word)
            if in_mmax_variety(x, g):
                w = squarefree_witness(x, g)
                assert w.ok, (str(t), wperm, w.to_json())
                if w.status == "ok":
                    assert is_squarefree(w.initial)
                    assert set(w.order.variables) == set(patch_variables(n))


def test_witness_over_fp():
    x = hfpjf(JordanType(((2, 2),))).x.reduce_mod(3)
    g = permutation_matrix((1, 2, 3, 4), 3)
    assert squarefree_witness(x, g).ok
