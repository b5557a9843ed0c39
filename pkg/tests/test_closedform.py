import pytest

from hesslab.closedform import (echess_euler_formula, echess_poincare, echess_type, eigenline_count_formula,
                                irreducible_mmax, is_monic_at_top, poincare_mmax_closed, poincare_mmax_for_type,
                                q_factorial, q_factorial_at, q_int, q_int_at, schubert_codim1_poincare,
                                schubert_vs_hessenberg_report, top_degree)
from hesslab.hesscore import JordanType, all_jordan_types, m_max, m_sing
from hesslab.paving import poincare_tymoczko
from hesslab.poly import Poly
from hesslab.symgrp import s, schubert_poincare, w0


def test_q_analogues():
    assert q_int(0) == 0 and q_int(1) == 1
    assert q_int(3)(1) == 3
    assert q_factorial(0) == 1
    assert q_factorial(3) == Poly([1, 2, 2, 1])
    for n in range(6):
        for p in (2, 3, 5):
            assert q_factorial(n)(p) == q_factorial_at(n, p)
            assert q_int(n)(p) == q_int_at(n, p)


def test_mmax_closed_examples():
    assert poincare_mmax_closed(3, (1,)) == Poly([1, 2, 1])
    assert poincare_mmax_closed(3, (1, 1, 1)) == Poly([1, 4, 1])
    for n in (2, 3, 4, 5):
        assert poincare_mmax_closed(n, (n,)) == q_factorial(n)


def test_mmax_closed_rejects_bad_multiplicities():
    with pytest.raises(ValueError):
        poincare_mmax_closed(3, (2, 2))
    with pytest.raises(ValueError):
        poincare_mmax_closed(3, (0, 1))
    with pytest.raises(ValueError):
        poincare_mmax_closed(3, ())


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_closed_form_matches_paving(n):
    for t in all_jordan_types(n):
        assert poincare_mmax_for_type(t) == poincare_tymoczko(t, m_max(n))


def test_closed_form_ignores_eigenvalue_values():
    a = JordanType(((2, 1), (1,)), (1, 2))
    b = JordanType(((2, 1), (1,)), (-7, 40))
    assert poincare_tymoczko(a, m_max(4)) == poincare_tymoczko(b, m_max(4)) == poincare_mmax_for_type(a)


def test_eigenline_formula():
    assert eigenline_count_formula(3, 1, 2) == 9
    assert eigenline_count_formula(3, 7, 2) == 21
    assert eigenline_count_formula(3, 0, 2) == 7
    for n in range(2, 7):
        for p in (2, 3, 5, 7):
            assert eigenline_count_formula(n, q_int_at(n, p), p) == q_factorial_at(n, p)
    with pytest.raises(ValueError):
        eigenline_count_formula(3, 8, 2)


def test_schubert_codim1():
    assert schubert_codim1_poincare(4, 2) == Poly([1, 3, 5, 6, 4, 1])
    assert schubert_codim1_poincare(4, 2)(1) == 20
    for n in (4, 5):
        for i in (2, n - 2):
            assert schubert_codim1_poincare(n, i) == schubert_poincare(s(i, n) * w0(n))
    with pytest.raises(ValueError):
        schubert_codim1_poincare(5, 1)
    with pytest.raises(ValueError):
        schubert_codim1_poincare(3, 2)


def test_named_reducible_families():
    for n in range(3, 8):
        assert irreducible_mmax(JordanType(((2,) + (1,) * (n - 2),))) == "reducible"
        assert irreducible_mmax(JordanType(((1,) * (n - 1), (1,)))) == "reducible"
        assert irreducible_mmax(JordanType(((n,),))) == "irreducible"
        assert irreducible_mmax(JordanType(((1,) * n,))) == "degenerate-scalar"


def test_small_n_classification():
    assert irreducible_mmax(JordanType(((2,),))) == "irreducible"
    assert irreducible_mmax(JordanType(((1,), (1,)))) == "reducible"
    assert irreducible_mmax(JordanType(((1,),))) == "degenerate-scalar"


@pytest.mark.parametrize("n", range(2, 7))
def test_classification_matches_monicity(n):
    for t in all_jordan_types(n):
        verdict = irreducible_mmax(t)
        if verdict == "degenerate-scalar":
            continue
        poly = poincare_mmax_for_type(t)
        assert poly.degree == top_degree(n)
        assert (verdict == "reducible") == (not is_monic_at_top(poly, n))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_echess_against_paving(n):
    for case in ("square-zero", "non-square-zero"):
        t = echess_type(n, case)
        poly = echess_poincare(n, case)
        assert poly == poincare_tymoczko(t, m_sing(n))
        assert poly(1) == echess_euler_formula(n, case)


def test_echess_euler_values():
    assert echess_poincare(4, "square-zero")(1) == 8
    assert echess_poincare(4, "non-square-zero")(1) == 6
    with pytest.raises(ValueError):
        echess_poincare(3, "square-zero")
    with pytest.raises(ValueError):
        echess_poincare(5, "cube-zero")


@pytest.mark.parametrize("n,schub,hess", [(4, 4, (8, 6)), (5, 36, (48, 42)), (6, 288, (336, 312))])
def test_schubert_vs_hessenberg(n, schub, hess):
    rep = schubert_vs_hessenberg_report(n)
    assert rep["poincare_equal"]
    assert rep["schubert_singular_euler"] == schub
    assert tuple(rep["hessenberg_singular_euler"].values()) == hess
    assert rep["euler_distinct"]
