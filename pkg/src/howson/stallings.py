"""Subgroup automata for finitely generated subgroups of free groups.

A StallingsGraph is the folded, based core graph of a subgroup H of a free
group F: edges are labeled by generators, a word lies in H exactly when it
traces a closed path at the basepoint.  The construction is the classical
one: wedge a loop per generator at the basepoint, then repeatedly identify
pairs of equally-labeled edges sharing an endpoint until the graph is
deterministic in both directions.

Graphs are immutable and stored in a canonical labeling (breadth-first from
the basepoint, which is always vertex 0), so two graphs are equal as Python
values exactly when they are isomorphic as based labeled graphs.

Folding optionally carries provenance: every edge remembers a word in the
defining generators, and the invariant is kept that for any path p from the
basepoint back to itself, evaluating the edge words along p yields exactly
the label word of p.  Reading off a closed path therefore expresses the
traced word as a product of the original generators, which is what
constructive membership returns.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import (
    FiniteIndexError,
    LetterRangeError,
    NotAMemberError,
    RankMismatchError,
    WordFormatError,
)
from .words import Word, format_letter


@dataclass(frozen=True)
class GeneratorExpression:
    """A product of defining generators: factors are (index, sign) pairs."""

    factors: tuple[tuple[int, int], ...]

    def evaluate(self, gens: list[Word]) -> Word:
        if not gens:
            if self.factors:
                raise LetterRangeError("expression over an empty generator list")
            raise LetterRangeError("cannot evaluate over an empty generator list")
        out = Word.identity(gens[0].rank)
        for idx, sign in self.factors:
            g = gens[idx]
            out = out * (g if sign > 0 else g.inverse())
        return out

    def __len__(self):
        return len(self.factors)


class _FoldEngine:
    """Incremental folding with union-find vertex merging.

    Maintains per-root transition slots; inserting an edge either fills its
    slots, is discarded as a parallel duplicate, or forces a vertex merge
    whose displaced edges are re-queued.  The basepoint class always
    survives merges so base stays meaningful (and, with provenance, keeps
    its connection word trivial).
    """

    def __init__(self, num_vertices, base, edges, exprs=None):
        self.parent = list(range(num_vertices))
        self.size = [1] * num_vertices
        self.base = base
        self.edges = [list(e) for e in edges]
        self.alive = [True] * len(edges)
        self.exprs = exprs  # parallel list of Word or None
        self.fwd = [dict() for _ in range(num_vertices)]
        self.bwd = [dict() for _ in range(num_vertices)]
        self.incident = [[] for _ in range(num_vertices)]
        for i, (u, v, _a) in enumerate(self.edges):
            self.incident[u].append(i)
            self.incident[v].append(i)
        self.queue = deque(range(len(edges)))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def run(self):
        while self.queue:
            eid = self.queue.popleft()
            if self.alive[eid]:
                self._insert(eid)

    def _canon(self, eid):
        u, v, a = self.edges[eid]
        return self.find(u), self.find(v), a

    def _insert(self, eid):
        u, v, a = self._canon(eid)
        slot = self.fwd[u].get(a)
        if slot is not None and slot != eid and self.alive[slot]:
            su, sv, _ = self._canon(slot)
            if su == u:
                if sv == v:
                    self._kill_duplicate(eid, slot)
                    return
                self._merge(v, sv, eid, slot, shared="source")
                self.queue.append(eid)
                return
        self.fwd[u][a] = eid
        slot = self.bwd[v].get(a)
        if slot is not None and slot != eid and self.alive[slot]:
            su, sv, _ = self._canon(slot)
            if sv == v:
                if su == u:
                    self._kill_duplicate(eid, slot)
                    return
                self._merge(u, su, eid, slot, shared="target")
                self.queue.append(eid)
                return
        self.bwd[v][a] = eid

    def _kill_duplicate(self, dead, keep):
        u, v, a = self._canon(dead)
        self.alive[dead] = False
        if self.fwd[u].get(a) == dead:
            self.fwd[u][a] = keep
        if self.bwd[v].get(a) == dead:
            self.bwd[v][a] = keep

    def _merge(self, x, y, eid_new, eid_old, shared):
        """Merge the vertex classes of x and y (the far endpoints of the two
        folding edges).  eid_new's far endpoint is x, eid_old's is y."""
        rx, ry = self.find(x), self.find(y)
        rbase = self.find(self.base)
        if rx == rbase:
            s, z = rx, ry
        elif ry == rbase:
            s, z = ry, rx
        elif self.size[rx] >= self.size[ry]:
            s, z = rx, ry
        else:
            s, z = ry, rx
        if self.exprs is not None:
            e_keep, e_absorb = (eid_new, eid_old) if s == rx else (eid_old, eid_new)
            if shared == "source":
                zeta = self.exprs[e_keep].inverse() * self.exprs[e_absorb]
            else:
                zeta = self.exprs[e_keep] * self.exprs[e_absorb].inverse()
            zeta_inv = zeta.inverse()
            seen = set()
            for g in self.incident[z]:
                if not self.alive[g] or g in seen:
                    continue
                seen.add(g)
                gu, gv, _ = self._canon(g)
                if gu == z:
                    self.exprs[g] = zeta * self.exprs[g]
                if gv == z:
                    self.exprs[g] = self.exprs[g] * zeta_inv
        self.parent[z] = s
        self.size[s] += self.size[z]
        self.fwd[z] = {}
        self.bwd[z] = {}
        moved = self.incident[z]
        self.incident[z] = []
        self.incident[s].extend(moved)
        self.queue.extend(g for g in moved if self.alive[g])

    def result(self):
        """Alive edges with canonical endpoints, plus the base root."""
        out = []
        for eid, alive in enumerate(self.alive):
            if alive:
                u, v, a = self._canon(eid)
                expr = self.exprs[eid] if self.exprs is not None else None
                out.append((u, v, a, expr))
        return self.find(self.base), out


def _trim_and_collect(base, edges):
    """Remove non-base leaves iteratively and keep only the base component.

    edges: list of (u, v, a, expr).  Returns the surviving subset.
    """
    adj = {}
    for i, (u, v, _a, _x) in enumerate(edges):
        adj.setdefault(u, []).append(i)
        adj.setdefault(v, []).append(i)
    adj.setdefault(base, [])
    # base component
    seen = {base}
    stack = [base]
    alive = [False] * len(edges)
    while stack:
        v = stack.pop()
        for i in adj[v]:
            alive[i] = True
            for w in (edges[i][0], edges[i][1]):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    degree = {v: 0 for v in seen}
    for i, e in enumerate(edges):
        if alive[i]:
            degree[e[0]] += 1
            degree[e[1]] += 1
    leaves = [v for v, d in degree.items() if d <= 1 and v != base]
    while leaves:
        v = leaves.pop()
        for i in adj[v]:
            if not alive[i]:
                continue
            alive[i] = False
            other = edges[i][1] if edges[i][0] == v else edges[i][0]
            degree[other] -= 1
            degree[v] -= 1
            if other != base and degree[other] == 1:
                leaves.append(other)
    return [e for i, e in enumerate(edges) if alive[i]]


def _canonical_labeling(rank, base, edges):
    """Breadth-first relabeling from the basepoint; exploration order is
    (label, +1 then -1).  Returns (num_vertices, relabeled sorted edges,
    expr map keyed by relabeled (src, dst, label))."""
    fwd = {}
    bwd = {}
    for u, v, a, _x in edges:
        fwd[(u, a)] = v
        bwd[(v, a)] = u
    order = {base: 0}
    queue = deque([base])
    while queue:
        v = queue.popleft()
        for a in range(rank):
            for tbl in (fwd, bwd):
                w = tbl.get((v, a))
                if w is not None and w not in order:
                    order[w] = len(order)
                    queue.append(w)
    relabeled = []
    exprs = {}
    for u, v, a, x in edges:
        key = (order[u], order[v], a)
        relabeled.append(key)
        if x is not None:
            exprs[key] = x
    relabeled.sort()
    return len(order), tuple(relabeled), exprs


def _fold_edges(rank, num_vertices, base, edges, exprs=None):
    engine = _FoldEngine(num_vertices, base, edges, exprs)
    engine.run()
    base_root, folded = engine.result()
    folded = _trim_and_collect(base_root, folded)
    return _canonical_labeling(rank, base_root, folded)


def _wedge(rank, gens, expr_rank=None):
    """Build the wedge of generator loops at a single basepoint.

    With expr_rank set, each loop's first traversed edge carries that
    generator's symbol and the rest carry the identity, oriented so that
    the provenance invariant holds from the start.
    """
    edges = []
    exprs = [] if expr_rank is not None else None
    nv = 1
    for gi, w in enumerate(gens):
        n = len(w.letters)
        prev = 0
        for pos, v in enumerate(w.letters):
            nxt = 0 if pos == n - 1 else nv
            if pos != n - 1:
                nv += 1
            if expr_rank is not None:
                mark = (
                    Word.generator(expr_rank, gi, 1 if v > 0 else -1)
                    if pos == 0
                    else Word.identity(expr_rank)
                )
            if v > 0:
                edges.append((prev, nxt, v - 1))
                if expr_rank is not None:
                    exprs.append(mark)
            else:
                edges.append((nxt, prev, -v - 1))
                if expr_rank is not None:
                    exprs.append(mark)
            prev = nxt
    return nv, edges, exprs


class StallingsGraph:
    """Folded based core graph of a finitely generated subgroup.

    The basepoint is always vertex 0 and vertex ids are contiguous, so the
    (rank, num_vertices, edges) triple is a canonical form.
    """

    __slots__ = ("rank", "num_vertices", "edges", "_fwd", "_bwd")

    BASE = 0

    def __init__(self, rank, num_vertices, edges):
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "num_vertices", num_vertices)
        object.__setattr__(self, "edges", tuple(edges))
        fwd, bwd = {}, {}
        for u, v, a in self.edges:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise LetterRangeError("edge endpoint out of range")
            if not 0 <= a < rank:
                raise LetterRangeError("edge label out of range")
            if (u, a) in fwd or (v, a) in bwd:
                raise WordFormatError("graph is not folded")
            fwd[(u, a)] = v
            bwd[(v, a)] = u
        object.__setattr__(self, "_fwd", fwd)
        object.__setattr__(self, "_bwd", bwd)

    def __setattr__(self, name, value):
        raise AttributeError("StallingsGraph is immutable")

    # -- construction ----------------------------------------------------

    @classmethod
    def from_generators(cls, rank: int, gens) -> "StallingsGraph":
        gens = list(gens)
        for g in gens:
            if g.rank != rank:
                raise RankMismatchError(
                    f"generator of rank {g.rank} in a rank-{rank} subgroup"
                )
        nv, edges, _ = _wedge(rank, gens)
        n, folded, _ = _fold_edges(rank, nv, 0, edges)
        return cls(rank, n, folded)

    @classmethod
    def from_edges(cls, rank, num_vertices, base, edges) -> "StallingsGraph":
        """Fold, trim and canonicalize an arbitrary labeled graph."""
        for u, v, a in edges:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise LetterRangeError("edge endpoint out of range")
            if not 0 <= a < rank:
                raise LetterRangeError("edge label out of range")
        n, folded, _ = _fold_edges(rank, num_vertices, base, list(edges))
        return cls(rank, n, folded)

    # -- basic queries ---------------------------------------------------

    def subgroup_rank(self) -> int:
        return len(self.edges) - self.num_vertices + 1

    def membership(self, w: Word) -> bool:
        if w.rank != self.rank:
            raise RankMismatchError(
                f"word of rank {w.rank} against a rank-{self.rank} graph"
            )
        cur = self.BASE
        for v in w.letters:
            if v > 0:
                cur = self._fwd.get((cur, v - 1))
            else:
                cur = self._bwd.get((cur, -v - 1))
            if cur is None:
                return False
        return cur == self.BASE

    def index(self):
        """|vertices| when the graph is a cover of the rose, else None."""
        for v in range(self.num_vertices):
            for a in range(self.rank):
                if (v, a) not in self._fwd or (v, a) not in self._bwd:
                    return None
        return self.num_vertices

    # -- spanning tree machinery ------------------------------------------

    def _bfs_tree(self):
        """parent[v] = (u, signed letter) along the canonical BFS tree."""
        parent = {self.BASE: None}
        queue = deque([self.BASE])
        tree_edges = set()
        while queue:
            v = queue.popleft()
            for a in range(self.rank):
                w = self._fwd.get((v, a))
                if w is not None and w not in parent:
                    parent[w] = (v, a + 1)
                    tree_edges.add((v, w, a))
                    queue.append(w)
                w = self._bwd.get((v, a))
                if w is not None and w not in parent:
                    parent[w] = (v, -(a + 1))
                    tree_edges.add((w, v, a))
                    queue.append(w)
        return parent, tree_edges

    def _path_words(self, parent):
        words = {self.BASE: Word.identity(self.rank)}
        for v in range(self.num_vertices):
            chain = []
            u = v
            while u not in words:
                chain.append(u)
                u = parent[u][0]
            for w in reversed(chain):
                u, letter = parent[w]
                words[w] = words[u] * Word(self.rank, (letter,))
        return words

    def basis(self) -> list[Word]:
        """Words freely generating the subgroup, one per non-tree edge."""
        parent, tree_edges = self._bfs_tree()
        paths = self._path_words(parent)
        out = []
        for u, v, a in self.edges:
            if (u, v, a) in tree_edges:
                continue
            out.append(paths[u] * Word(self.rank, (a + 1,)) * paths[v].inverse())
        return out

    # -- subgroup operations ----------------------------------------------

    def is_subgroup_of(self, other: "StallingsGraph") -> bool:
        if self.rank != other.rank:
            raise RankMismatchError("ambient ranks differ")
        return all(other.membership(b) for b in self.basis())

    def conjugate(self, u: Word) -> "StallingsGraph":
        """The graph of u * H * u^-1."""
        if u.rank != self.rank:
            raise RankMismatchError("conjugator rank differs from graph rank")
        return StallingsGraph.from_generators(
            self.rank, [b.conjugate_by(u) for b in self.basis()]
        )

    def pullback(self, other: "StallingsGraph") -> "StallingsGraph":
        """The fiber product component of (base, base): the intersection."""
        if self.rank != other.rank:
            raise RankMismatchError("ambient ranks differ")
        start = (self.BASE, other.BASE)
        ids = {start: 0}
        queue = deque([start])
        edges = []
        while queue:
            s = queue.popleft()
            v1, v2 = s
            for a in range(self.rank):
                w1 = self._fwd.get((v1, a))
                w2 = other._fwd.get((v2, a))
                if w1 is not None and w2 is not None:
                    t = (w1, w2)
                    if t not in ids:
                        ids[t] = len(ids)
                        queue.append(t)
                    edges.append((ids[s], ids[t], a))
                w1 = self._bwd.get((v1, a))
                w2 = other._bwd.get((v2, a))
                if w1 is not None and w2 is not None:
                    t = (w1, w2)
                    if t not in ids:
                        ids[t] = len(ids)
                        queue.append(t)
                    # edge recorded from its source when that state is reached
        n, folded, _ = _fold_edges(self.rank, len(ids), 0, edges)
        return StallingsGraph(self.rank, n, folded)

    def _completion_edges(self):
        """Edges a Hall completion adds: per label, match vertices missing an
        outgoing edge to vertices missing an incoming one, both in ascending
        id order."""
        new_edges = []
        for a in range(self.rank):
            missing_out = [v for v in range(self.num_vertices) if (v, a) not in self._fwd]
            missing_in = [v for v in range(self.num_vertices) if (v, a) not in self._bwd]
            new_edges.extend((u, v, a) for u, v in zip(missing_out, missing_in))
        return new_edges

    def hall_completion(self) -> "StallingsGraph":
        """A cover of the rose on the same vertex set containing this graph.

        Realizes the free-factor theorem: the original subgroup is a free
        factor of the completion's subgroup, which has index
        ``num_vertices``.
        """
        new_edges = self._completion_edges()
        if not new_edges:
            return self
        all_edges = list(self.edges) + new_edges
        n, folded, _ = _fold_edges(self.rank, self.num_vertices, self.BASE, all_edges)
        return StallingsGraph(self.rank, n, folded)

    def free_factor_complement(self) -> list[Word]:
        """Words C such that <H union C> = H * F(C), built from the edges a
        Hall completion adds, read through this graph's spanning tree."""
        if self.index() is not None:
            raise FiniteIndexError(
                "subgroup has finite index; completion adds no edges"
            )
        parent, _ = self._bfs_tree()
        paths = self._path_words(parent)
        out = []
        for u, v, a in self._completion_edges():
            out.append(paths[u] * Word(self.rank, (a + 1,)) * paths[v].inverse())
        return out

    # -- serialization ------------------------------------------------------

    def to_text(self) -> str:
        lines = [f"v {self.num_vertices}", f"base {self.BASE}"]
        for u, v, a in self.edges:
            lines.append(f"e {u} {v} {format_letter(self.rank, a)}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str, rank: int) -> "StallingsGraph":
        num_vertices = None
        base = 0
        edges = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            try:
                if parts[0] == "v":
                    num_vertices = int(parts[1])
                elif parts[0] == "base":
                    base = int(parts[1])
                elif parts[0] == "e":
                    u, v = int(parts[1]), int(parts[2])
                    label = _parse_label(parts[3], rank)
                    edges.append((u, v, label))
                else:
                    raise WordFormatError(f"line {lineno}: unknown directive {parts[0]!r}")
            except (IndexError, ValueError) as exc:
                raise WordFormatError(f"line {lineno}: malformed graph line {raw!r}") from exc
        if num_vertices is None:
            raise WordFormatError("missing 'v <count>' line")
        return cls.from_edges(rank, num_vertices, base, edges)

    # -- value semantics ----------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, StallingsGraph)
            and self.rank == other.rank
            and self.num_vertices == other.num_vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.rank, self.num_vertices, self.edges))

    def __repr__(self):
        return (
            f"StallingsGraph(rank={self.rank}, vertices={self.num_vertices}, "
            f"edges={len(self.edges)}, subgroup_rank={self.subgroup_rank()})"
        )


def _parse_label(tok: str, rank: int) -> int:
    if rank <= 26:
        if len(tok) == 1 and "a" <= tok <= "z" and ord(tok) - 97 < rank:
            return ord(tok) - 97
    elif tok[0] == "x" and tok[1:].isdigit() and int(tok[1:]) < rank:
        return int(tok[1:])
    raise WordFormatError(f"bad edge label {tok!r} for rank {rank}")


class ExpressionGraph:
    """A folded generator graph that can express members as generator words.

    Built once per generating set; ``express`` then answers constructive
    membership queries without refolding.
    """

    def __init__(self, rank: int, gens):
        self.rank = rank
        self.gens = list(gens)
        for g in self.gens:
            if g.rank != rank:
                raise RankMismatchError("generator rank differs from ambient rank")
        k = len(self.gens)
        nv, edges, exprs = _wedge(rank, self.gens, expr_rank=k)
        n, folded, expr_map = _fold_edges(rank, nv, 0, edges, exprs)
        self.graph = StallingsGraph(rank, n, folded)
        self._fwd = {}
        self._bwd = {}
        for (u, v, a), x in expr_map.items():
            self._fwd[(u, a)] = (v, x)
            self._bwd[(v, a)] = (u, x)

    def express(self, w: Word) -> GeneratorExpression | None:
        """Expression of w in the defining generators, or None if w is not
        a member.  The product of generators along the expression reduces
        exactly to w."""
        if w.rank != self.rank:
            raise RankMismatchError("word rank differs from ambient rank")
        cur = StallingsGraph.BASE
        acc = Word.identity(len(self.gens))
        for v in w.letters:
            if v > 0:
                hit = self._fwd.get((cur, v - 1))
                if hit is None:
                    return None
                cur, x = hit
                acc = acc * x
            else:
                hit = self._bwd.get((cur, -v - 1))
                if hit is None:
                    return None
                cur, x = hit
                acc = acc * x.inverse()
        if cur != StallingsGraph.BASE:
            return None
        return GeneratorExpression(
            tuple((abs(t) - 1, 1 if t > 0 else -1) for t in acc.letters)
        )


def constructive_membership(rank: int, gens, w: Word) -> GeneratorExpression:
    """Express w as a product of the given generators; raises NotAMemberError
    when w is outside the subgroup they generate."""
    expr = ExpressionGraph(rank, list(gens)).express(w)
    if expr is None:
        raise NotAMemberError(f"{w} is not in the subgroup generated by the given words")
    return expr


def is_free_basis(rank: int, words) -> bool:
    """True iff the words freely generate a subgroup of rank equal to their
    count (a list with repeats or dependencies folds to smaller rank)."""
    words = list(words)
    graph = StallingsGraph.from_generators(rank, words)
    return graph.subgroup_rank() == len(words)
