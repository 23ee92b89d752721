from coxlimit.catalog import NAMED
from coxlimit.oracle import (all_reduced_words, bfs_elements,
                             canonical_reflections_brute, oracle_group,
                             reflection_closure_brute, subgroup_elements_brute,
                             weak_order_brute)


def test_a2_ball():
    sl = bfs_elements(NAMED["a2"](), 3)
    assert len(sl.elements) == 6
    assert sl.count_by_length() == [1, 2, 2, 1]
    assert all_reduced_words(NAMED["a2"](), (1, 2, 1)) == {(1, 2, 1), (2, 1, 2)}
    assert sl.check_consistency()


def test_infinite_dihedral_ball():
    sl = bfs_elements(NAMED["dinf"](), 4)
    assert len(sl.elements) == 9
    assert sl.count_by_length() == [1, 2, 2, 2, 2]


def test_pentagon_noncommuting_pair():
    # m_13 = inf: no braid move applies, so the word is its own class
    assert all_reduced_words(NAMED["pentagon"](), (1, 3)) == {(1, 3)}
    assert all_reduced_words(NAMED["pentagon"](), (1, 2)) == {(1, 2), (2, 1)}


def test_group_orders():
    for name, order in [("a3", 24), ("b3", 48), ("h3", 120)]:
        sl = bfs_elements(NAMED[name](), 40)
        assert len(sl.elements) == order


def test_weak_order_a2():
    wo = weak_order_brute(NAMED["a2"](), 3)
    assert wo[()] == set(bfs_elements(NAMED["a2"](), 3).elements)
    assert wo[(1,)] == {(1,), (1, 2), (1, 2, 1)}


def test_reflection_closure_a2():
    mat = NAMED["a2"]()
    clo = reflection_closure_brute(mat, [(1,), (1, 2, 1)])
    assert clo == {(1,), (2,), (1, 2, 1)}
    assert canonical_reflections_brute(mat, clo) == {(1,), (2,)}
    assert len(subgroup_elements_brute(mat, [(1,), (2,)])) == 6


def test_group_inverse():
    g = oracle_group(NAMED["a2"]())
    assert g.inverse((1, 2)) == (2, 1)
    assert g.multiply((1, 2), (2, 1)) == ()
