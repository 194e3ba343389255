"""
Union-find over hashable elements with undo, for incremental cycle detection during backtracking.

"""

from typing import Dict, Hashable, Iterable, List, Optional, Tuple


class UnionFind:
    """Disjoint sets with union by size. No path compression, so every union can be rolled back."""

    def __init__(self, elements: Iterable[Hashable] = ()):
        self.parent: Dict[Hashable, Hashable] = {}
        self.size: Dict[Hashable, int] = {}
        self.num_components = 0
        # (absorbed root, surviving root) per union, or (element, None) per lazily added element
        self._history: List[Tuple[Hashable, Optional[Hashable]]] = []
        for element in elements:
            self.add(element)
        self._history.clear()

    def add(self, element: Hashable) -> None:
        if element in self.parent:
            return
        self.parent[element] = element
        self.size[element] = 1
        self.num_components += 1
        self._history.append((element, None))

    def __contains__(self, element: Hashable) -> bool:
        return element in self.parent

    def find(self, element: Hashable) -> Hashable:
        root = element
        while self.parent[root] != root:
            root = self.parent[root]
        return root

    def connected(self, a: Hashable, b: Hashable) -> bool:
        return a in self.parent and b in self.parent and self.find(a) == self.find(b)

    def union(self, a: Hashable, b: Hashable) -> bool:
        """Join the sets of a and b, adding either element if unseen.

        Args:
            a: First element
            b: Second element

        Returns:
            False if a and b were already in the same set, i.e. the edge ab closes a cycle

        """
        self.add(a)
        self.add(b)
        root_a, root_b = self.find(a), self.find(b)
        if root_a == root_b:
            return False
        if self.size[root_a] < self.size[root_b]:
            root_a, root_b = root_b, root_a
        self.parent[root_b] = root_a
        self.size[root_a] += self.size[root_b]
        self.num_components -= 1
        self._history.append((root_b, root_a))
        return True

    def snapshot(self) -> int:
        return len(self._history)

    def rollback(self, mark: int) -> None:
        while len(self._history) > mark:
            element, root = self._history.pop()
            if root is None:
                del self.parent[element]
                del self.size[element]
            else:
                self.parent[element] = element
                self.size[root] -= self.size[element]
            self.num_components += 1 if root is not None else -1
