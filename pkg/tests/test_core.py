import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxlimit.catalog import NAMED, oracle_catalog
from coxlimit.core import (INF, CoxeterError, bilinear_form, element_key,
                           inversion_roots, inversion_set, is_reduced,
                           left_descents, make_root, pair_generates_finite,
                           parse_coxeter_matrix, parse_word, reduce_word,
                           reflect, reflection_word, root_system, simple_root,
                           subgroup_classify, word_length)
from coxlimit.oracle import oracle_group


def test_parse_infinite_dihedral():
    m = parse_coxeter_matrix("2\n1 0\n0 1")
    assert m.rank == 2
    assert m.m(0, 1) == INF
    assert m.modulus == 1


def test_parse_pentagon_file(data_dir):
    from coxlimit.core import load_coxeter_matrix
    m = load_coxeter_matrix(data_dir / "pentagon.cox")
    assert m.rank == 5
    assert m.modulus == 2
    assert m.m(0, 1) == 2 and m.m(4, 0) == 2 and m.m(0, 2) == INF


def test_parse_affine_a2():
    m = parse_coxeter_matrix("3\n1 3 3\n3 1 3\n3 3 1")
    assert m.modulus == 3
    assert subgroup_classify(m, [1, 2, 3]).tag == "affine"


@pytest.mark.parametrize("text", [
    "",
    "x\n1",
    "2\n1 2",
    "2\n1 3\n2 1",
    "2\n2 3\n3 1",
    "2\n1 1\n1 1",
    "2\n1 -3\n-3 1",
    "0",
])
def test_parse_rejects(text):
    with pytest.raises(CoxeterError):
        parse_coxeter_matrix(text)


def test_round_trip(pentagon):
    assert parse_coxeter_matrix(pentagon.to_text()) == pentagon


def test_bilinear_form(a2, pentagon):
    assert bilinear_form(a2, 1, 1) == 1
    assert bilinear_form(pentagon, 1, 2) == 0
    assert float(bilinear_form(a2, 1, 2)) == -0.5
    assert bilinear_form(pentagon, 1, 3) == -1


def test_reflect(dinf, pentagon):
    a1 = simple_root(dinf, 1)
    assert reflect(dinf, a1, 1) == -a1
    # infinite dihedral: s_1(a2) = a2 + 2 a1
    assert reflect(dinf, simple_root(dinf, 2), 1) == make_root(dinf, (2, 1))
    assert reflect(pentagon, simple_root(pentagon, 1), 2) == simple_root(pentagon, 1)


def test_pentagon_reflection_values(pentagon):
    # s_5 fixes nothing of a2 besides adding 2 a5 (m_25 = inf)
    assert reflect(pentagon, simple_root(pentagon, 2), 5) == make_root(pentagon, (0, 1, 0, 0, 2))


def test_is_reduced(pentagon):
    assert is_reduced(pentagon, ())
    assert not is_reduced(pentagon, (1, 1))
    assert is_reduced(pentagon, parse_word("1 3 5 2 4 1 3 5 2 4"))
    assert not is_reduced(pentagon, (1, 2, 1))


def test_inversion_sets(dinf, pentagon):
    assert inversion_set(pentagon, (1,)) == {simple_root(pentagon, 1)}
    assert [str(r) for r in inversion_roots(dinf, (1, 2))] == ["a1", "2a1 + a2"]
    assert inversion_set(pentagon, (1, 2)) == {simple_root(pentagon, 1), simple_root(pentagon, 2)}


def test_subgroup_classify(pentagon, affine_a2):
    assert subgroup_classify(pentagon, []).tag == "spherical"
    assert subgroup_classify(affine_a2, [1, 2, 3]).tag == "affine"
    t = subgroup_classify(pentagon, [1, 3])
    assert t.tag == "affine" and t.components == (((1, 3), "affine"),)
    assert subgroup_classify(pentagon, [1, 2, 3]).tag == "affine"
    assert subgroup_classify(pentagon, [1, 3, 5]).tag == "indefinite"
    assert subgroup_classify(NAMED["h3"](), [1, 2, 3]).tag == "spherical"
    assert subgroup_classify(NAMED["triangle_237"](), [1, 2, 3]).tag == "indefinite"
    assert subgroup_classify(NAMED["affine_g2"](), [1, 2, 3]).tag == "affine"


def test_pair_generates_finite(a2, dinf, pentagon):
    assert pair_generates_finite(a2, simple_root(a2, 1), simple_root(a2, 2)) == (True, 3)
    assert pair_generates_finite(pentagon, simple_root(pentagon, 1), simple_root(pentagon, 2)) == (True, 2)
    assert pair_generates_finite(dinf, simple_root(dinf, 1), simple_root(dinf, 2)) == (False, None)


def test_parse_word_errors():
    assert parse_word(" 1 2  3 ") == (1, 2, 3)
    with pytest.raises(CoxeterError):
        parse_word("1 x")
    with pytest.raises(CoxeterError):
        parse_word("1 4", rank=3)


def test_small_helpers(pentagon, a2):
    assert word_length(pentagon, (1, 3, 3, 1)) == 0
    assert left_descents(pentagon, (1, 2)) == (1, 2)
    assert element_key(a2, (1, 2, 1)) == element_key(a2, (2, 1, 2))
    assert reduce_word(a2, (1, 2, 1, 2)) == (2, 1)


# ---------------------------------------------------------------------------
# properties

catalog = sorted(oracle_catalog().items())
systems = st.sampled_from(catalog)


@st.composite
def system_and_word(draw, max_len=8):
    name, mat = draw(systems)
    w = draw(st.lists(st.integers(1, mat.rank), max_size=max_len))
    return mat, tuple(w)


@settings(max_examples=200, deadline=None)
@given(system_and_word())
def test_inversion_count_is_length(sw):
    mat, w = sw
    r = reduce_word(mat, w)
    assert is_reduced(mat, r)
    assert len(inversion_set(mat, r)) == len(r) == oracle_group(mat).length(w)


@settings(max_examples=200, deadline=None)
@given(system_and_word(6))
def test_reflections_preserve_the_form(sw):
    mat, w = sw
    rs = root_system(mat)
    idx = tuple(a - 1 for a in w)
    for i in range(rs.n):
        for j in range(rs.n):
            x, y = rs.apply_word(idx, rs.simple[i]), rs.apply_word(idx, rs.simple[j])
            assert rs.form(x, y) == rs.form(rs.simple[i], rs.simple[j])


@settings(max_examples=100, deadline=None)
@given(system_and_word(6))
def test_reflection_word_is_a_reflection(sw):
    mat, w = sw
    for root in inversion_roots(mat, reduce_word(mat, w)):
        t = reflection_word(mat, root)
        assert len(t) % 2 == 1
        assert word_length(mat, t + t) == 0
        assert inversion_set(mat, t) >= {root}


def test_depth_queries_do_not_hide_roots():
    from coxlimit.core import RootSystem
    mat = NAMED["a3"]()
    rs = RootSystem(mat)  # fresh, uncached
    top = make_root(mat, (1, 1, 1))
    assert rs.depth(top.vec) == 3  # cached before the layers are built
    assert len(rs.roots_up_to_depth(3)) == 6
