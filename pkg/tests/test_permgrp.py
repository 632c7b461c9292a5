import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qgroup.permgrp import (
    PermGroup, Permutation, SearchBoundExceeded, batch_order_is, element_order, evaluate,
    exhaustive_search, group_order, is_central, iter_elements,
)
from qgroup.words import Alphabet, parse_word


def cyc(n, *cycles):
    return Permutation.from_cycles(n, cycles)


def closure(gens):
    """Brute-force orbit of the identity; only for tiny groups."""
    n = gens[0].degree
    seen = {Permutation.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = p * g
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def test_product_applies_left_factor_first():
    p, q = cyc(3, (0, 1)), cyc(3, (1, 2))
    assert (p * q)(0) == q(p(0)) == 2


def test_cycles_and_order():
    p = cyc(7, (0, 1, 2), (3, 4))
    assert p.cycles() == [(0, 1, 2), (3, 4)]
    assert p.order() == element_order(p) == 6
    assert (p ** 6).is_identity() and (p ** -1) * p == Permutation.identity(7)


@pytest.mark.parametrize("n", [1, 2, 5, 8, 11])
def test_symmetric_group_order(n):
    gens = [cyc(n, tuple(range(n))), cyc(n, (0, 1) if n > 1 else ())] if n > 1 else [Permutation.identity(1)]
    assert group_order(gens) == math.factorial(n)


def test_alternating_group_order():
    gens = [cyc(7, (i, i + 1, i + 2)) for i in range(5)]
    assert group_order(gens) == math.factorial(7) // 2


def test_m11_order():
    a = cyc(11, tuple(range(11)))
    b = cyc(11, (2, 6, 10, 7), (3, 9, 4, 5))
    g = PermGroup([a, b])
    assert g.order() == 7920
    assert g.contains(a * b * a)
    assert not g.contains(cyc(11, (0, 1)))


def test_centre_of_dihedral_group():
    r, s = cyc(8, tuple(range(8))), cyc(8, (1, 7), (2, 6), (3, 5))
    assert is_central(r ** 4, [r, s])
    assert not is_central(r, [r, s])


def test_evaluate_word():
    alph = Alphabet(("x", "y"))
    x, y = cyc(4, (0, 1)), cyc(4, (1, 2))
    p = evaluate(parse_word("(xy)^3", alph), {"x": x, "y": y})
    assert p.is_identity()
    with pytest.raises(KeyError):
        evaluate(parse_word("xy", alph), {"x": x})


def test_exhaustive_search_and_bound():
    g = PermGroup([cyc(5, (0, 1, 2, 3, 4)), cyc(5, (0, 1))])
    involutions = exhaustive_search(g, lambda p: p.order() == 2)
    assert len(involutions) == 10 + 15
    vec = exhaustive_search(g, lambda b: batch_order_is(b, 2), vectorized=True)
    assert sorted(map(repr, vec)) == sorted(map(repr, involutions))
    with pytest.raises(SearchBoundExceeded):
        exhaustive_search(g, lambda p: True, bound=100)


def test_iter_elements_small_blocks():
    g = PermGroup([cyc(6, tuple(range(6))), cyc(6, (0, 1))])
    rows = np.concatenate(list(iter_elements(g, block_rows=8)))
    assert len({r.tobytes() for r in rows}) == 720 == len(rows)


perms6 = st.permutations(range(6)).map(lambda xs: Permutation(np.array(xs)))


@settings(max_examples=40, deadline=None)
@given(st.lists(perms6, min_size=1, max_size=3))
def test_schreier_sims_matches_brute_force(gens):
    elems = closure(gens)
    g = PermGroup(gens)
    assert g.order() == len(elems)
    rows = np.concatenate(list(iter_elements(g)))
    assert {Permutation(r) for r in rows} == elems
    for p in itertools.islice(itertools.permutations(range(6)), 0, 720, 37):
        q = Permutation(np.array(p))
        assert g.contains(q) == (q in elems)


@given(perms6, perms6, perms6)
def test_group_axioms(p, q, r):
    assert (p * q) * r == p * (q * r)
    assert (p * q).inverse() == q.inverse() * p.inverse()
    assert (p ** p.order()).is_identity()
