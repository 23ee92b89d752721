import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxlimit.catalog import ICOSAHEDRON_EDGES, NAMED, dihedral
from coxlimit.core import (INF, CoxeterError, element_key, is_reduced,
                           make_root, positive_roots, reflect, root_system,
                           simple_root, word_length)
from coxlimit.epwords import EPWord
from coxlimit.order import (block_fiber_poset, braid_limit_leq,
                            canonical_generators, coxeter_type_name,
                            ends_count, moussong_hyperbolic,
                            project_inversions, same_block, subgroup_elements,
                            subgroup_word_to_word, wxi_group)


def ep(prefix, period):
    return EPWord.parse(prefix, period)


I, I1, J = ep("", "2 5"), ep("1", "2 5"), ep("", "1 3 5 2 4")


# ---------------------------------------------------------------------------
# limit weak order and blocks


def test_pentagon_braid_limit(pentagon):
    assert braid_limit_leq(pentagon, I, I1).value == "yes"
    v = braid_limit_leq(pentagon, I1, I)
    assert v.value == "no" and v.witness == simple_root(pentagon, 1)


def test_infinite_dihedral_is_an_antichain(dinf):
    st_, ts = ep("", "1 2"), ep("", "2 1")
    assert braid_limit_leq(dinf, st_, ts).witness == simple_root(dinf, 1)
    assert braid_limit_leq(dinf, ts, st_).witness == simple_root(dinf, 2)


def test_braid_equivalent_words(pentagon):
    # m_12 = 2, so swapping the first two letters is a braid move
    assert braid_limit_leq(pentagon, ep("1 2", "3 5"), ep("2 1", "3 5")).value == "yes"
    assert braid_limit_leq(pentagon, ep("2 1", "3 5"), ep("1 2", "3 5")).value == "yes"


def test_same_block(pentagon):
    assert same_block(pentagon, I1, I).value == "yes"
    v = same_block(pentagon, I, J)
    assert v.value == "no" and v.witness is not None
    assert same_block(pentagon, J, J).value == "yes"
    assert str(same_block(pentagon, I, J)).startswith("no (witness ")


def test_rejects_non_reduced(pentagon):
    with pytest.raises(CoxeterError):
        braid_limit_leq(pentagon, ep("1", "1 2"), I)


# ---------------------------------------------------------------------------
# reflection subgroups


def test_canonical_generators(a2, dinf, pentagon):
    g = canonical_generators(a2, [simple_root(a2, 1), make_root(a2, (1, 1))])
    assert [str(r) for r in g.canonical] == ["a1", "a2"]
    assert g.type_name == "A2" and len(g.closure) == 3
    a1 = simple_root(dinf, 1)
    tst = reflect(dinf, a1, 2)
    g = canonical_generators(dinf, [a1, tst])
    assert set(g.canonical) == {a1, tst}
    assert g.matrix.m(0, 1) == INF
    assert g.flags == {"infinite"}
    g = canonical_generators(pentagon, [simple_root(pentagon, 3)])
    assert g.type_name == "A1" and g.is_finite()
    assert canonical_generators(pentagon, []).type_name == "trivial"


def test_canonical_generators_of_a_dihedral_subgroup():
    # roots of I2(6) at angles 60 and 90 degrees to a1
    mat = dihedral(6)
    a1, a2 = simple_root(mat, 1), simple_root(mat, 2)
    c = root_system(mat).field.gen()
    at60 = make_root(mat, (2, c))
    at90 = make_root(mat, (c, 2))
    g = canonical_generators(mat, [a1, at60])
    assert g.type_name == "A2" and len(g.closure) == 3
    assert canonical_generators(mat, [a1, at90]).type_name == "A1xA1"
    assert canonical_generators(mat, [a1, a2]).type_name == "G2"
    assert canonical_generators(mat, [at60, at90]).type_name == "G2"


def test_type_names():
    assert coxeter_type_name(NAMED["b2"]()) == "B2"
    assert coxeter_type_name(NAMED["a3"]()) == "A3"
    assert coxeter_type_name(NAMED["dinf_x_a1"]()) == "Ã1xA1"
    assert coxeter_type_name(NAMED["affine_a2"]()) == "Ã2"
    assert coxeter_type_name(dihedral(5)) == "I2(5)"
    assert coxeter_type_name(None) == "trivial"


def test_wxi_group(pentagon, dodecahedron):
    assert wxi_group(pentagon, I).type_name == "A1"
    assert wxi_group(pentagon, I).canonical == (simple_root(pentagon, 1),)
    assert wxi_group(pentagon, J).type_name == "trivial"
    assert wxi_group(dodecahedron, ep("", "3 6"), 3).type_name == "A1xA1"


def test_wxi_group_of_a_ray_is_infinite(affine_a2):
    g = wxi_group(affine_a2, ep("", "1 2 3"), 4)
    assert "infinite" in g.flags and g.type_name == "Ã1"


def test_project_inversions(pentagon, dodecahedron):
    sub = wxi_group(pentagon, I)
    assert project_inversions(pentagon, (1,), sub) == (1,)
    assert project_inversions(pentagon, (2, 3), sub) == ()
    two = wxi_group(dodecahedron, ep("", "3 6"), 3)
    assert project_inversions(dodecahedron, (1, 2), two) == (1, 2)
    assert project_inversions(dodecahedron, (4,), two) == ()


def test_subgroup_elements(a2):
    sub = canonical_generators(a2, [simple_root(a2, 1), simple_root(a2, 2)])
    els = subgroup_elements(sub)
    assert els == [(), (1,), (2,), (1, 2), (2, 1), (1, 2, 1)]
    assert subgroup_word_to_word(a2, sub, (1, 2, 1)) in {(1, 2, 1), (2, 1, 2)}


# ---------------------------------------------------------------------------
# block fibers


def test_fiber_posets(pentagon):
    p = block_fiber_poset(pentagon, I)
    assert len(p) == 2 and p.covers == ((0, 1),)
    assert [str(w) for w in p.nodes] == ["(2 5)^inf", "1 (2 5)^inf"]
    assert len(block_fiber_poset(pentagon, J)) == 1


def test_fiber_poset_refuses_infinite(affine_a2):
    with pytest.raises(CoxeterError):
        block_fiber_poset(affine_a2, ep("", "1 2 3"), 4)


def _dodecahedron_words():
    adj = {tuple(sorted(e)) for e in ICOSAHEDRON_EDGES}
    return {
        "zero": ep("", "1 2 10"),
        "one": ep("", "2 4 6 3 5"),  # around the neighbours of face 1
        "two": ep("", "3 6"),  # 3 and 6 are the common neighbours of faces 1 and 2
    }, adj


def test_dodecahedron_fixture_words(dodecahedron):
    words, adj = _dodecahedron_words()
    assert (1, 2) in adj and {(1, 3), (1, 6), (2, 3), (2, 6)} <= adj and (3, 6) not in adj
    assert all(tuple(sorted((1, k))) in adj for k in (2, 3, 4, 5, 6))


def test_dodecahedron_fibers(dodecahedron):
    words, _ = _dodecahedron_words()
    sizes = {k: len(block_fiber_poset(dodecahedron, w, 3)) for k, w in words.items()}
    assert sizes == {"zero": 1, "one": 2, "two": 4}
    diamond = block_fiber_poset(dodecahedron, words["two"], 3)
    assert sorted(diamond.covers) == [(0, 1), (0, 2), (1, 3), (2, 3)]
    assert "rankdir=BT" in diamond.to_dot()


# ---------------------------------------------------------------------------
# hyperbolicity and ends


@pytest.mark.parametrize("name,expected", [
    ("pentagon", True), ("dinf", True), ("dodecahedron", True), ("affine_a2", False),
    ("dinf_x_dinf", False), ("a3", True), ("triangle_237", True), ("dinf_x_a1", True),
])
def test_moussong(name, expected):
    ok, obs = moussong_hyperbolic(NAMED[name]())
    assert ok is expected
    assert (obs is None) is expected


def test_moussong_witnesses():
    _, obs = moussong_hyperbolic(NAMED["affine_a2"]())
    assert obs.subset == (1, 2, 3) and "affine" in obs.reason
    _, obs = moussong_hyperbolic(NAMED["dinf_x_dinf"]())
    assert obs.subset == (1, 2, 3, 4) and "product" in obs.reason


@pytest.mark.parametrize("name,count", [
    ("a1", 0), ("b3", 0), ("h3", 0), ("dinf", 2), ("dinf_x_a1", 2), ("pentagon", 1),
    ("affine_a2", 1), ("triangle_334", 1), ("a1free3", INF), ("dinf_x_dinf", 1),
])
def test_ends(name, count):
    assert ends_count(NAMED[name]()).count == count


def test_ends_witness():
    e = ends_count(NAMED["a1free3"]())
    assert e.witness == (1,)
    assert str(e) == "infinity (witness T = {1})"


# ---------------------------------------------------------------------------
# properties


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["a2", "b2", "a3", "b3", "h3"]), st.data())
def test_subgroup_length_compatibility(name, data):
    mat = NAMED[name]()
    roots = positive_roots(mat, 100)
    picked = data.draw(st.lists(st.sampled_from(roots), min_size=1, max_size=3, unique=True))
    sub = canonical_generators(mat, picked)
    els = subgroup_elements(sub)
    length = {w: len(w) for w in els}
    key = {element_key(mat, subgroup_word_to_word(mat, sub, w)): w for w in els}
    for w in els:
        if len(w) > 4:
            continue
        ww = subgroup_word_to_word(mat, sub, w)
        for k in range(1, sub.rank + 1):
            rw = subgroup_word_to_word(mat, sub, (k,) + w)
            shorter_in_sub = length[key[element_key(mat, rw)]] < len(w)
            assert shorter_in_sub == (word_length(mat, rw) < word_length(mat, ww))
            assert is_reduced(mat, rw)
