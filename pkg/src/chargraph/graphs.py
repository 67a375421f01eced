"""Graphs on prime vertex sets and the generic machinery over them.

A PrimeGraph is immutable: vertices are a sorted tuple of primes and the
adjacency relation is packed into an upper-triangular bit matrix, so
equality and hashing are bit-exact and every operation returns a new
value.  The vertex count is capped at 64 to keep the bit tricks honest;
real degree sets never come close.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from . import primes

UNREACHABLE: float = float("inf")

MAX_VERTICES = 64


def _pair_bit(i: int, j: int) -> int:
    """Bit index of the unordered index pair {i, j}, i != j."""
    if i > j:
        i, j = j, i
    return j * (j - 1) // 2 + i


def _iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class DegreeSet:
    """A finite set of character degrees.  Always contains 1; degrees are
    collapsed to a set because multiplicities never affect the graph."""

    degrees: frozenset[int]

    def __post_init__(self) -> None:
        if not isinstance(self.degrees, frozenset):
            object.__setattr__(self, "degrees", frozenset(self.degrees))
        for d in self.degrees:
            if not isinstance(d, int) or d < 1:
                raise ValueError(f"degrees must be integers >= 1, got {d!r}")
        if 1 not in self.degrees:
            raise ValueError("a degree set must contain 1")

    @classmethod
    def of(cls, values: Iterable[int]) -> "DegreeSet":
        return cls(frozenset(values))

    def sorted(self) -> list[int]:
        return sorted(self.degrees)


@dataclass(frozen=True)
class PrimeGraph:
    """Simple graph whose vertices are primes, in canonical bit-matrix form.

    `bits` holds the upper triangle of the adjacency matrix over the sorted
    vertex order: bit _pair_bit(i, j) is set iff vertices[i] ~ vertices[j].
    """

    vertices: tuple[int, ...]
    bits: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.vertices, tuple):
            object.__setattr__(self, "vertices", tuple(self.vertices))
        n = len(self.vertices)
        if n > MAX_VERTICES:
            raise ValueError(f"at most {MAX_VERTICES} vertices supported, got {n}")
        last = 1
        for v in self.vertices:
            if not isinstance(v, int) or v <= last:
                raise ValueError(f"vertices must be strictly increasing primes: {self.vertices}")
            if not primes.is_prime(v):
                raise ValueError(f"vertex {v} is not prime")
            last = v
        if not 0 <= self.bits < 1 << (n * (n - 1) // 2):
            raise ValueError("adjacency bits out of range for vertex count")

    # -- construction -----------------------------------------------------

    @classmethod
    def from_edges(
        cls, edges: Iterable[tuple[int, int]], isolated: Iterable[int] = ()
    ) -> "PrimeGraph":
        """Build a graph from prime pairs, plus any extra isolated vertices."""
        edge_list = [(int(a), int(b)) for a, b in edges]
        verts = sorted({v for e in edge_list for v in e} | set(isolated))
        index = {p: i for i, p in enumerate(verts)}
        bits = 0
        for a, b in edge_list:
            if a == b:
                raise ValueError(f"self-loop on {a}")
            bits |= 1 << _pair_bit(index[a], index[b])
        return cls(tuple(verts), bits)

    # -- cached derived forms ---------------------------------------------

    @cached_property
    def index(self) -> Mapping[int, int]:
        return {p: i for i, p in enumerate(self.vertices)}

    @cached_property
    def masks(self) -> tuple[int, ...]:
        """Per-vertex neighbor bitmasks over vertex indices."""
        n = len(self.vertices)
        masks = [0] * n
        for i in range(n):
            for j in range(i + 1, n):
                if self.bits >> _pair_bit(i, j) & 1:
                    masks[i] |= 1 << j
                    masks[j] |= 1 << i
        return tuple(masks)

    @cached_property
    def _dist_matrix(self) -> tuple[tuple[float, ...], ...]:
        return tuple(self._bfs(i) for i in range(len(self.vertices)))

    def _bfs(self, src: int) -> tuple[float, ...]:
        dist = [UNREACHABLE] * len(self.vertices)
        dist[src] = 0
        queue = deque([src])
        while queue:
            u = queue.popleft()
            for v in _iter_bits(self.masks[u]):
                if dist[v] == UNREACHABLE:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        return tuple(dist)

    # -- basic queries ------------------------------------------------------

    def __len__(self) -> int:
        return len(self.vertices)

    def _require_vertex(self, v: int) -> int:
        if v not in self.index:
            raise ValueError(f"{v} is not a vertex of this graph")
        return self.index[v]

    def adjacent(self, u: int, v: int) -> bool:
        i, j = self._require_vertex(u), self._require_vertex(v)
        if i == j:
            return False
        return bool(self.bits >> _pair_bit(i, j) & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edge list as prime pairs (p, q) with p < q, lexicographic."""
        out = []
        for i in range(len(self.vertices)):
            for j in range(i + 1, len(self.vertices)):
                if self.bits >> _pair_bit(i, j) & 1:
                    out.append((self.vertices[i], self.vertices[j]))
        return sorted(out)

    def edge_count(self) -> int:
        return self.bits.bit_count()

    def neighbors(self, u: int) -> frozenset[int]:
        i = self._require_vertex(u)
        return frozenset(self.vertices[j] for j in _iter_bits(self.masks[i]))

    # -- operations ---------------------------------------------------------

    def complement(self) -> "PrimeGraph":
        n = len(self.vertices)
        full = (1 << (n * (n - 1) // 2)) - 1
        return PrimeGraph(self.vertices, self.bits ^ full)

    def induced(self, sub: Iterable[int]) -> "PrimeGraph":
        """The induced subgraph on a subset of the vertices."""
        subset = sorted(set(sub))
        for v in subset:
            self._require_vertex(v)
        old = [self.index[v] for v in subset]
        bits = 0
        for a in range(len(subset)):
            for b in range(a + 1, len(subset)):
                if self.bits >> _pair_bit(old[a], old[b]) & 1:
                    bits |= 1 << _pair_bit(a, b)
        return PrimeGraph(tuple(subset), bits)

    def components(self) -> list[frozenset[int]]:
        """Connected components as prime sets, ordered by smallest member."""
        seen = 0
        out: list[frozenset[int]] = []
        for root in range(len(self.vertices)):
            if seen >> root & 1:
                continue
            comp = 1 << root
            queue = deque([root])
            while queue:
                u = queue.popleft()
                fresh = self.masks[u] & ~comp
                comp |= fresh
                queue.extend(_iter_bits(fresh))
            seen |= comp
            out.append(frozenset(self.vertices[i] for i in _iter_bits(comp)))
        return out

    def distances_from(self, u: int) -> dict[int, float]:
        row = self._dist_matrix[self._require_vertex(u)]
        return {p: row[i] for i, p in enumerate(self.vertices)}

    def distance(self, u: int, v: int) -> float:
        """Shortest-path edge count, or UNREACHABLE across components."""
        return self._dist_matrix[self._require_vertex(u)][self._require_vertex(v)]

    def diameter(self) -> int:
        """Largest distance within a component; 0 if every vertex is isolated."""
        if not self.vertices:
            raise ValueError("diameter of the empty graph is undefined")
        best = 0
        for row in self._dist_matrix:
            for d in row:
                if d != UNREACHABLE and d > best:
                    best = d
        return int(best)

    def is_complete(self) -> bool:
        n = len(self.vertices)
        return self.bits == (1 << (n * (n - 1) // 2)) - 1

    # -- DOT ------------------------------------------------------------------

    def to_dot(self) -> str:
        """Deterministic DOT text: vertices ascending, edges lexicographic."""
        lines = ["graph G {"]
        lines += [f'  "{v}";' for v in self.vertices]
        lines += [f'  "{a}" -- "{b}";' for a, b in self.edges()]
        lines.append("}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_dot(cls, text: str) -> "PrimeGraph":
        """Parse the DOT subset written by to_dot."""
        node_re = re.compile(r'^\s*"(\d+)";\s*$')
        edge_re = re.compile(r'^\s*"(\d+)" -- "(\d+)";\s*$')
        verts: set[int] = set()
        edges: list[tuple[int, int]] = []
        body = [ln for ln in text.splitlines() if ln.strip()]
        if not body or not body[0].strip().startswith("graph") or body[-1].strip() != "}":
            raise ValueError("not a DOT graph produced by to_dot")
        for line in body[1:-1]:
            m = node_re.match(line)
            if m:
                verts.add(int(m.group(1)))
                continue
            m = edge_re.match(line)
            if m:
                edges.append((int(m.group(1)), int(m.group(2))))
                continue
            raise ValueError(f"unrecognized DOT line: {line!r}")
        return cls.from_edges(edges, isolated=verts)


def build_graph(cd: DegreeSet) -> PrimeGraph:
    """Graph on the primes dividing the degrees: p ~ q iff pq divides some degree.

    For distinct primes p, q and a degree d, pq | d iff both p | d and q | d,
    so each degree contributes a clique on its prime divisors.
    """
    if not isinstance(cd, DegreeSet):
        cd = DegreeSet.of(cd)
    verts: set[int] = set()
    edges: list[tuple[int, int]] = []
    for d in cd.degrees:
        ps = sorted(primes.prime_set(d))
        verts.update(ps)
        edges.extend(combinations(ps, 2))
    return PrimeGraph.from_edges(edges, isolated=verts)


@dataclass(frozen=True)
class BipartiteCertificate:
    """Either a proper 2-coloring or an odd cycle, checkable against the graph."""

    coloring: Mapping[int, int] | None = None
    odd_cycle: tuple[int, ...] | None = None

    def __post_init__(self) -> None:
        if (self.coloring is None) == (self.odd_cycle is None):
            raise ValueError("exactly one of coloring / odd_cycle must be present")
        if self.odd_cycle is not None:
            k = len(self.odd_cycle)
            if k < 3 or k % 2 == 0 or len(set(self.odd_cycle)) != k:
                raise ValueError(f"odd_cycle must list >= 3 distinct vertices, odd count: {self.odd_cycle}")

    @property
    def is_bipartite(self) -> bool:
        return self.coloring is not None

    def valid_for(self, g: PrimeGraph) -> bool:
        """Re-check the certificate against a graph."""
        if self.coloring is not None:
            if set(self.coloring) != set(g.vertices):
                return False
            if not all(c in (0, 1) for c in self.coloring.values()):
                return False
            return all(self.coloring[a] != self.coloring[b] for a, b in g.edges())
        cyc = self.odd_cycle
        assert cyc is not None
        if not all(v in g.index for v in cyc):
            return False
        return all(g.adjacent(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))

    def color_classes(self) -> tuple[frozenset[int], frozenset[int]]:
        if self.coloring is None:
            raise ValueError("certificate is an odd cycle, not a coloring")
        zero = frozenset(v for v, c in self.coloring.items() if c == 0)
        one = frozenset(v for v, c in self.coloring.items() if c == 1)
        return zero, one


def bipartition_or_odd_cycle(g: PrimeGraph) -> BipartiteCertificate:
    """2-color the graph by breadth-first layering, or extract an odd cycle.

    The cycle is the first one discovered, closed through the BFS tree; it
    is valid but not necessarily minimum length.
    """
    n = len(g.vertices)
    color = [-1] * n
    parent = [-1] * n
    for root in range(n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in _iter_bits(g.masks[u]):
                if color[v] == -1:
                    color[v] = color[u] ^ 1
                    parent[v] = u
                    queue.append(v)
                elif color[v] == color[u]:
                    cycle = _tree_cycle(parent, u, v)
                    return BipartiteCertificate(
                        odd_cycle=tuple(g.vertices[i] for i in cycle)
                    )
    return BipartiteCertificate(coloring={g.vertices[i]: color[i] for i in range(n)})


def _tree_cycle(parent: list[int], u: int, v: int) -> list[int]:
    """Close the edge u-v through the BFS tree: [lca .. u] + [v .. below lca]."""

    def chain(x: int) -> list[int]:
        path = [x]
        while parent[path[-1]] != -1:
            path.append(parent[path[-1]])
        path.reverse()
        return path

    ru, rv = chain(u), chain(v)
    k = 0
    while k < min(len(ru), len(rv)) and ru[k] == rv[k]:
        k += 1
    return ru[k - 1 :] + rv[: k - 1 : -1]
