"""Growth classification of nonnegative integer transition matrices.

The weighted digraph of a matrix M has an edge i -> j of weight M[i][j].
Powers of M grow exponentially exactly when some strongly connected
component contains a vertex whose total outgoing weight inside the
component exceeds 1; otherwise every component is a disjoint cycle and the
growth is polynomial, of degree one less than the longest condensation
path counted by the cyclic components it passes through.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Growth:
    kind: str  # "polynomial" or "exponential"
    degree: int | None = None

    @classmethod
    def polynomial(cls, degree: int) -> "Growth":
        return cls("polynomial", degree)

    @classmethod
    def exponential(cls) -> "Growth":
        return cls("exponential", None)

    @property
    def is_exponential(self) -> bool:
        return self.kind == "exponential"

    def __str__(self):
        if self.kind == "exponential":
            return "Exponential"
        return f"Polynomial(degree={self.degree})"


def strongly_connected_components(n: int, successors) -> list[list[int]]:
    """Iterative Tarjan.  successors: vertex -> iterable of vertices.
    Components are returned in reverse topological order."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    comps = []
    counter = 0
    for root in range(n):
        if root in index:
            continue
        work = [(root, iter(successors(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for u in it:
                if u not in index:
                    index[u] = low[u] = counter
                    counter += 1
                    stack.append(u)
                    on_stack.add(u)
                    work.append((u, iter(successors(u))))
                    advanced = True
                    break
                if u in on_stack:
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack.discard(u)
                    comp.append(u)
                    if u == v:
                        break
                comps.append(comp)
    return comps


def classify_growth(matrix) -> Growth:
    """Classify the growth of matrix powers per the module docstring."""
    n = len(matrix)
    if n == 0:
        return Growth.polynomial(0)

    def succ(i):
        return [j for j in range(n) if matrix[i][j] > 0]

    comps = strongly_connected_components(n, succ)
    comp_of = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    cyclic = []
    for comp in comps:
        inside = set(comp)
        has_edge = False
        for i in comp:
            weight = sum(matrix[i][j] for j in range(n) if j in inside)
            if weight > 1:
                return Growth.exponential()
            if weight == 1:
                has_edge = True
        cyclic.append(has_edge)
    # comps are in reverse topological order: successors appear earlier
    best = [0] * len(comps)
    for ci, comp in enumerate(comps):
        succ_best = 0
        for i in comp:
            for j in range(n):
                if matrix[i][j] > 0 and comp_of[j] != ci:
                    succ_best = max(succ_best, best[comp_of[j]])
        best[ci] = succ_best + (1 if cyclic[ci] else 0)
    # a nilpotent matrix (possible only with empty rows) is still bounded
    return Growth.polynomial(max(max(best) - 1, 0))
