import pytest

from morandim.subshift import full_shift
from morandim.trees import CompactTree, tree_distance
from morandim.words import Word


def test_cylinder_subtree():
    a = CompactTree.cylinder(2, 2, (1, 2))
    assert a.subtree((1,)) == CompactTree.cylinder(2, 1, (2,))
    assert a.subtree(()) == a
    assert a.subtree((2,)).is_empty


def test_subtree_composition():
    a = CompactTree.cylinder(2, 4, (1, 2))
    assert a.subtree((1,)).subtree((2,)) == a.subtree((1, 2))


def test_from_subshift(golden):
    t = CompactTree.from_subshift(golden, 3)
    assert t.level(3) == frozenset(golden.words(3))


def test_validation():
    with pytest.raises(ValueError):
        CompactTree(2, 2, frozenset({(), (1,)}))  # node (1,) lacks a child
    with pytest.raises(ValueError):
        CompactTree(2, 2, frozenset({(1,), (1, 2)}))  # missing root
    with pytest.raises(ValueError):
        CompactTree(2, 1, frozenset({(), (3,)}))  # symbol out of range
    assert CompactTree.empty(2, 5).is_empty


def test_from_leaves():
    t = CompactTree.from_leaves(2, 2, [(1, 1), (2, 2)])
    assert t.nodes == frozenset({(), (1,), (2,), (1, 1), (2, 2)})
    with pytest.raises(ValueError):
        CompactTree.from_leaves(2, 2, [(1,)])


def test_distance():
    a = CompactTree.cylinder(2, 3, (1,))
    b = CompactTree.cylinder(2, 3, (2,))
    c = CompactTree.from_subshift(full_shift(2), 3)
    assert tree_distance(a, a) == 0.0
    assert tree_distance(a, b) == 0.5  # differ at the first level
    assert tree_distance(a, c) == 0.5
    d = CompactTree.from_leaves(2, 2, [(1, 1)])
    e = CompactTree.from_leaves(2, 2, [(1, 1), (1, 2)])
    assert tree_distance(d, e) == 0.25  # agree to level 1, differ at level 2
    with pytest.raises(ValueError):
        tree_distance(a, d)


def test_level_words():
    t = CompactTree.cylinder(2, 2, (1,))
    assert t.level_words(1) == {Word((1,), 2)}
