from typing import Hashable, Iterable


class UnionFind:
    """Disjoint sets with path compression and union by rank."""

    def __init__(self, items: Iterable[Hashable]):
        self.parent = {x: x for x in items}
        self.rank = {x: 0 for x in self.parent}
        self.size = {x: 1 for x in self.parent}

    def find(self, x):
        y = self.parent[x]
        if self.parent[y] != y:
            y = self.parent[x] = self.find(y)
        return y

    def union(self, x, y) -> None:
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x
        self.size[x] += self.size[y]
        del self.rank[y]

    def reps(self) -> set:
        return set(self.rank)

    def classes(self, order: Iterable[Hashable]) -> list[list]:
        """Classes listed by first appearance in `order`, members in that order."""
        out: dict = {}
        for x in order:
            out.setdefault(self.find(x), []).append(x)
        return list(out.values())

    def __len__(self) -> int:
        return len(self.rank)
