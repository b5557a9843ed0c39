import itertools

import pytest
from hypothesis import given, strategies as st

from hesslab.symgrp import (Permutation, all_permutations, bruhat_cover_closure, bruhat_leq, codim_one_euler_formula,
                            identity, inversions, length, ls_singular_maximal, ls_singular_set, parse_permutation, s,
                            schubert_euler, schubert_poincare, tableau_entry, v2, vn2, w0)

from oracles import bruhat_by_subwords


def perms(n_max=6):
    return st.integers(1, n_max).flatmap(lambda n: st.permutations(range(1, n + 1))).map(Permutation)


def test_rejects_non_permutations():
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


@given(perms())
def test_inverse_and_identity(w):
    assert w * w.inverse() == identity(w.n)
    assert w.inverse().inverse() == w
    assert length(w) == length(w.inverse()) == len(inversions(w))


def test_composition_right_to_left():
    u, v = Permutation((2, 1, 3)), Permutation((1, 3, 2))
    assert (u * v)(2) == u(v(2)) == 3


def test_longest_element_and_reflections():
    assert w0(4).word == (4, 3, 2, 1) and length(w0(4)) == 6
    assert (s(3, 5) * w0(5)).word == (5, 3, 4, 2, 1)
    assert (s(2, 5) * w0(5)).word == (5, 4, 2, 3, 1)
    with pytest.raises(ValueError):
        s(0, 3)


def test_tableau_entry():
    w = Permutation((3, 1, 4, 2))
    assert tableau_entry(w, 1, 2) == 1
    assert tableau_entry(w, 2, 3) == 3


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_bruhat_against_subword_oracle(n):
    below = bruhat_by_subwords(n)
    for v, w in itertools.product(all_permutations(n), repeat=2):
        assert bruhat_leq(v, w) == (v.word in below[w.word])


def test_cover_closure_is_a_partial_order():
    below = bruhat_cover_closure(4)
    for w, down in below.items():
        assert identity(4) in down and w in down
        for u in down:
            assert below[u] <= down


@given(perms(5))
def test_bruhat_rank_function(w):
    assert schubert_poincare(w)(1) == schubert_euler(w)
    assert schubert_poincare(w).degree == length(w)


def test_smooth_schubert_varieties_have_empty_singular_set():
    # avoiding 3412 and 4231 means smooth
    assert ls_singular_set(w0(4)) == set()
    assert ls_singular_set(Permutation((2, 1, 4, 3))) == set()


def test_singular_locus_4231_and_3412():
    assert ls_singular_maximal(Permutation((4, 2, 3, 1))) == {Permutation((2, 1, 4, 3))}
    assert ls_singular_maximal(Permutation((3, 4, 1, 2))) == {Permutation((1, 3, 2, 4))}


@pytest.mark.parametrize("n", [4, 5, 6])
def test_codimension_one_singular_loci(n):
    assert ls_singular_maximal(s(2, n) * w0(n)) == {v2(n)}
    assert ls_singular_maximal(s(n - 2, n) * w0(n)) == {vn2(n)}
    assert schubert_euler(v2(n)) == schubert_euler(vn2(n)) == codim_one_euler_formula(n)


def test_named_elements():
    assert str(v2(5)) == "5,2,1,4,3"
    assert str(vn2(5)) == "3,2,5,4,1"
    assert str(vn2(6)) == "4,3,6,5,2,1"


def test_parse_permutation():
    assert parse_permutation("5,2,1,4,3") == Permutation((5, 2, 1, 4, 3))
    assert parse_permutation("w0@n=3") == w0(3)
    assert parse_permutation("s2w0@n=5") == s(2, 5) * w0(5)
    with pytest.raises(ValueError):
        parse_permutation("banana")
