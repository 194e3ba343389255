from completability.union_find import UnionFind


def test_union_reports_cycles():
    components = UnionFind(range(4))
    assert components.union(0, 1)
    assert components.union(1, 2)
    assert not components.union(0, 2)
    assert components.num_components == 2
    assert components.connected(0, 2)
    assert not components.connected(0, 3)


def test_lazy_add():
    components = UnionFind()
    assert components.union("a", "b")
    assert "a" in components and "c" not in components
    assert not components.connected("a", "c")


def test_rollback_undoes_unions_and_adds():
    components = UnionFind([1, 2, 3])
    components.union(1, 2)
    mark = components.snapshot()
    components.union(2, 3)
    components.union(3, 4)
    assert components.num_components == 1

    components.rollback(mark)
    assert components.num_components == 2
    assert 4 not in components
    assert components.connected(1, 2)
    assert not components.connected(2, 3)
    assert components.find(3) == 3


def test_rollback_to_start_keeps_initial_elements():
    components = UnionFind("xyz")
    components.union("x", "y")
    components.rollback(0)
    assert components.num_components == 3
    assert all(element in components for element in "xyz")
