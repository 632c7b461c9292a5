import numpy as np
import pytest
from hypothesis import given, strategies as st

from qgroup import gf4, unitary
from qgroup.coxeter import catalog
from qgroup.unitary import (
    EO_VECTOR, GF4Matrix, NotIsotropic, check_relators, complete_diagram, default_space,
    evaluate_word, format_vector, isotropic_classes, parse_vector, standard_assignment, transvection,
)

SPACE = default_space()
vec = st.lists(st.integers(0, 3), min_size=6, max_size=6).map(lambda xs: np.array(xs, dtype=np.uint8))
scal = st.integers(0, 3)


@pytest.fixture(scope="module")
def gens():
    return standard_assignment(SPACE)


def test_vector_text_roundtrip():
    for text in ("v1+v3+w v6", "v1+W v2", "v4"):
        assert format_vector(parse_vector(text)) == text
    assert np.array_equal(parse_vector("w^2 v1+w(v1+v6)+v5"), parse_vector("v1+v5+w v6"))


def test_isotropic_point_count():
    # unitary space of dimension 6 over GF(4): (q^6-1)(q^5+1)/(q^2-1) with q = 2
    assert len(isotropic_classes(SPACE)) == 63 * 33 // 3 == 693


@given(vec, vec, vec, scal)
def test_form_is_sesquilinear(u, v, x, s):
    f = SPACE.form
    assert f(u ^ x, v) == f(u, v) ^ f(x, v)
    assert f(gf4.scale(s, u), v) == gf4.mul(s, f(u, v))
    assert f(u, gf4.scale(s, v)) == gf4.mul(gf4.conj(s), f(u, v))
    assert f(v, u) == gf4.conj(f(u, v))


@given(vec, vec, scal)
def test_first_convention_conjugates_the_other_argument(u, v, s):
    first = default_space("first")
    assert first.form(gf4.scale(s, u), v) == gf4.mul(gf4.conj(s), first.form(u, v))


def test_transvections_are_unitary_involutions():
    pts = isotropic_classes(SPACE)
    for v in pts[::37]:
        t = transvection(SPACE, v)
        assert t.order() == 2
        for u in pts[::101]:
            for x in pts[::97]:
                assert SPACE.form(t.apply(u), t.apply(x)) == SPACE.form(u, x)


def test_transvection_requires_isotropy():
    aniso = next(v for v in gf4.all_vectors()[1:] if not SPACE.is_isotropic(v))
    with pytest.raises(NotIsotropic):
        transvection(SPACE, aniso)


def test_three_transposition_orders():
    # products of two transvections have order 1, 2 or 3
    pts = isotropic_classes(SPACE)[::23]
    ts = [transvection(SPACE, v) for v in pts]
    orders = {(s @ t).order() for s in ts for t in ts}
    assert orders == {1, 2, 3}


def test_assignment_realizes_q221_graph(gens):
    e = catalog("K")
    g = e.graph
    for i, x in enumerate(g.nodes):
        for y in g.nodes[i + 1:]:
            assert (gens[x] @ gens[y]).order() == (3 if g.adjacent(x, y) else 2)


def test_hexagon_relator_is_a_nontrivial_scalar(gens):
    V = evaluate_word(catalog("K").word("(adbecf)^4"), gens)
    assert V == GF4Matrix.scalar(gf4.W)


def test_printed_e_vector_breaks_the_graph():
    gens = standard_assignment(SPACE, "printed")
    bad = [c for c in check_relators(catalog("K").presentation.relators, gens) if not c.projective_ok]
    assert bad


def test_eo_completion_is_unique(gens):
    cons = [("e", 3)] + [(g, 2) for g in ("a", "b", "c", "d", "f", "a'", "c'")]
    found = complete_diagram(SPACE, gens, cons)
    assert [format_vector(v) for v in found] == [EO_VECTOR]


def test_projective_action_of_scalars_is_trivial():
    w = GF4Matrix.scalar(gf4.W)
    full, = unitary.action_permutations([w])
    proj, = unitary.action_permutations([w], projective=True)
    assert full.order() == 3 and proj.is_identity()
