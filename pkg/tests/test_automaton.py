import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxlimit.automaton import (ResourceBoundExceeded, build_dfa,
                                build_small_roots, dominance_test,
                                is_reduced_fast, normal_form, reduced_word_dfa,
                                small_roots)
from coxlimit.catalog import NAMED, oracle_catalog
from coxlimit.core import (CoxeterError, is_reduced, make_root,
                           positive_roots, reflect, simple_root)
from coxlimit.oracle import oracle_group


def test_infinite_dihedral_small_roots(dinf):
    srs = build_small_roots(dinf)
    assert [str(r) for r in srs.root_objects()] == ["a1", "a2"]


def test_finite_groups_have_every_positive_root_small():
    for name, count in [("a2", 3), ("a3", 6), ("b3", 9), ("h3", 15)]:
        mat = NAMED[name]()
        assert len(small_roots(mat)) == count == len(positive_roots(mat, 100))


def test_small_root_counts():
    # regression fixtures
    counts = {"pentagon": 5, "affine_a2": 6, "affine_c2": 8, "affine_g2": 12,
              "dodecahedron": 12, "triangle_237": 12, "triangle_334": 7}
    for name, count in counts.items():
        assert len(small_roots(NAMED[name]())) == count


def test_state_counts_of_finite_groups():
    # one state per group element
    for name, order in [("a1", 2), ("a2", 6), ("b2", 8), ("a3", 24), ("b3", 48), ("h3", 120)]:
        assert len(reduced_word_dfa(NAMED[name]()).states) == order


def test_dominance(a2, dinf, pentagon):
    assert not dominance_test(a2, simple_root(a2, 1), simple_root(a2, 2))
    a1 = simple_root(dinf, 1)
    deep = reflect(dinf, reflect(dinf, a1, 2), 1)  # s t (a_s) = 3a1 + 2a2
    assert deep == make_root(dinf, (3, 2))
    assert dominance_test(dinf, deep, a1)
    assert not dominance_test(dinf, a1, deep)
    assert not dominance_test(pentagon, simple_root(pentagon, 1), simple_root(pentagon, 2))


def test_caps(pentagon):
    with pytest.raises(ResourceBoundExceeded):
        build_small_roots(NAMED["h3"](), cap=5)
    with pytest.raises(CoxeterError):
        build_dfa(small_roots(pentagon), state_cap=3)


def test_fast_reduced(pentagon):
    dfa = reduced_word_dfa(pentagon)
    assert not is_reduced_fast(dfa, (1, 1))
    assert is_reduced_fast(dfa, (1, 3, 5, 2, 4) * 2)
    assert normal_form(dfa, (2, 1)) == (1, 2)
    assert normal_form(dfa, (2, 2)) == ()


def test_affine_a2_exhaustive(affine_a2):
    dfa = reduced_word_dfa(affine_a2)
    for n in range(9):
        for w in itertools.product((1, 2, 3), repeat=n):
            assert is_reduced_fast(dfa, w) == is_reduced(affine_a2, w)


def test_dot_is_deterministic(a2):
    text = reduced_word_dfa(a2).to_dot()
    assert text == build_dfa(small_roots(a2)).to_dot()
    assert text.startswith("digraph automaton {")
    assert text.count("->") == 6  # the Hasse diagram of weak order on S3


catalog = sorted(oracle_catalog().items())


@st.composite
def system_and_word(draw):
    name, mat = draw(st.sampled_from(catalog))
    return mat, tuple(draw(st.lists(st.integers(1, mat.rank), max_size=8)))


@settings(max_examples=300, deadline=None)
@given(system_and_word())
def test_normal_form_is_shortlex(sw):
    mat, w = sw
    g = oracle_group(mat)
    assert normal_form(reduced_word_dfa(mat), w) == g.normal_form(w)
    assert is_reduced_fast(reduced_word_dfa(mat), w) == g.is_reduced(w)
