"""Disjoint-set forest with component sizes."""

import numpy as np


class UnionFind:
    """Union-find over ``0..n-1`` with path halving and union by size."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.size = [1] * n
        self.count = n

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, x: int, y: int) -> int:
        """Merge the sets of ``x`` and ``y`` and return the new root.

        Returns -1 if they were already in the same set.
        """
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return -1
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        self.count -= 1
        return rx

    def component_size(self, x: int) -> int:
        return self.size[self.find(x)]

    def roots(self) -> np.ndarray:
        return np.array([self.find(x) for x in range(len(self.parent))])

    def copy(self) -> "UnionFind":
        other = UnionFind.__new__(UnionFind)
        other.parent = self.parent[:]
        other.size = self.size[:]
        other.count = self.count
        return other
