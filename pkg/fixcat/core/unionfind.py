"""
Disjoint-set forest over hashable items.

Backs every quotient in the engine: pushouts, coequalizers and the
coend identifications of Kan extensions.
"""


class UnionFind:
    def __init__(self, items=()):
        self.parent = {}
        self.size = {}
        for item in items:
            self.add(item)

    def add(self, item):
        if item not in self.parent:
            self.parent[item] = item
            self.size[item] = 1

    def find(self, item):
        root = item
        while self.parent[root] != root:
            root = self.parent[root]
        # path compression
        while self.parent[item] != root:
            self.parent[item], item = root, self.parent[item]
        return root

    def union(self, a, b) -> bool:
        a, b = self.find(a), self.find(b)
        if a == b:
            return False
        if self.size[a] < self.size[b]:
            a, b = b, a
        self.parent[b] = a
        self.size[a] += self.size[b]
        return True

    def classes(self) -> list[list]:
        """Classes in first-seen order of their members."""
        groups = {}
        for item in self.parent:
            groups.setdefault(self.find(item), []).append(item)
        return list(groups.values())

    def __len__(self):
        return sum(1 for item in self.parent if self.parent[item] == item)
