import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qgroup import permgrp, tc
from qgroup.coxeter import Presentation, read_presentation
from qgroup.words import Alphabet, parse_word


def pres(gens, rels, involutive=False):
    alph = Alphabet(tuple(gens), involutive)
    return Presentation(alph, tuple(parse_word(r, alph) for r in rels))


def dihedral(n):
    return pres("xy", [f"(xy)^{n}"], involutive=True)


Q8 = pres("ij", ["i^4", "i^2 j^-2", "j^-1 i j i"])
S3 = pres("xy", ["x^2", "y^3", "(xy)^2"])


@pytest.mark.parametrize("strategy", sorted(tc.STRATEGIES))
def test_small_groups(strategy):
    lim = tc.EnumerationLimits(strategy=strategy)
    assert tc.enumerate_cosets(Q8, limits=lim).index == 8
    assert tc.enumerate_cosets(S3, limits=lim).index == 6
    assert tc.enumerate_cosets(S3, ["y"], lim).index == 2
    assert tc.enumerate_cosets(pres("x", ["x"]), limits=lim).index == 1


def test_trivial_subgroup_gives_faithful_regular_action():
    t = tc.enumerate_cosets(Q8)
    assert permgrp.group_order(t.perm_images()) == 8
    assert tc.validate(t, Q8).ok


def test_validate_detects_a_broken_table():
    t = tc.enumerate_cosets(S3)
    bad = t.table.copy()
    bad[[0, 1]] = bad[[1, 0]]
    broken = tc.CosetTable(t.alphabet, bad)
    assert not tc.validate(broken, S3).ok


def test_limit_exceeded_on_infinite_group():
    free = pres("xy", [])
    with pytest.raises(tc.LimitExceeded):
        tc.enumerate_cosets(free, limits=tc.EnumerationLimits(max_cosets=500))
    with pytest.raises(tc.LimitExceeded):
        tc.enumerate_cosets(dihedral(50), limits=tc.EnumerationLimits(max_cosets=60))


def test_limits_validation():
    with pytest.raises(ValueError):
        tc.EnumerationLimits(max_cosets=0)
    with pytest.raises(ValueError):
        tc.EnumerationLimits(strategy="guess")


def test_subgroup_words_fix_coset_zero():
    p = dihedral(6)
    t = tc.enumerate_cosets(p, ["xyx"])
    assert t.index == 6
    assert t.trace(p.word("xyx")) == 0
    assert tc.validate(t, p, ["xyx"]).ok


def test_table_roundtrip(tmp_path):
    t = tc.enumerate_cosets(Q8)
    f = tmp_path / "q8.npz"
    tc.write_table(t, f)
    u = tc.read_table(f)
    assert u == t and u.defined_total == t.defined_total


def test_standardized_tables_agree_across_strategies():
    p = read_presentation("graph: Y_111\n")
    hlt = tc.enumerate_cosets(p, ["b", "c"], tc.EnumerationLimits(strategy="hlt"))
    fel = tc.enumerate_cosets(p, ["b", "c"], tc.EnumerationLimits(strategy="felsch"))
    assert hlt.index == 192 // 6
    assert np.array_equal(hlt.table, fel.table)


def test_compaction_under_tight_limit():
    # Felsch needs few cosets beyond the index; a tight cap forces compaction
    lim = tc.EnumerationLimits(max_cosets=130, strategy="felsch", compaction_threshold=0.5)
    assert tc.enumerate_cosets(dihedral(60), limits=lim).index == 120


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 40), st.sampled_from(["hlt", "felsch"]))
def test_dihedral_orders(n, strategy):
    lim = tc.EnumerationLimits(strategy=strategy)
    p = dihedral(n)
    assert tc.enumerate_cosets(p, limits=lim).index == 2 * n
    assert tc.enumerate_cosets(p, ["x"], lim).index == n


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 30), st.integers(1, 30))
def test_cyclic_product(m, n):
    # <x, y | x^m, y^n, [x,y]> has order mn
    p = pres("xy", [f"x^{m}", f"y^{n}", "[x,y]"])
    t = tc.enumerate_cosets(p)
    assert t.index == m * n
    assert tc.validate(t, p).ok
