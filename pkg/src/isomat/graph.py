"""Looped simple graphs, their elementary moves, and small-scale canonical forms.

A :class:`LoopedGraph` keeps an ordered vertex tuple; internally neighborhoods
are int bitmasks over vertex positions, which is what the moves and the
canonical labeling work on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .errors import CapExceeded, LoopedEndpoint, NotAnEdge, ParseError, UnknownVertex
from .config import get_cap
from .gf2 import Gf2Matrix, bits_of, popcount

Vertex = Hashable


class LoopedGraph:
    """Simple graph on an ordered vertex set in which vertices may carry loops."""

    __slots__ = ("vertices", "nbr", "loops", "_index")

    def __init__(self, vertices: Sequence[Vertex], edges: Iterable = (), loops: Iterable[Vertex] = ()):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        self._index = {v: i for i, v in enumerate(self.vertices)}
        nbr = [0] * len(self.vertices)
        for e in edges:
            a, b = tuple(e)
            i, j = self.index(a), self.index(b)
            if i == j:
                raise ValueError("edges join distinct vertices; use loops for self-adjacency")
            nbr[i] |= 1 << j
            nbr[j] |= 1 << i
        self.nbr = tuple(nbr)
        mask = 0
        for v in loops:
            mask |= 1 << self.index(v)
        self.loops = mask

    @classmethod
    def from_masks(cls, vertices, nbr, loops: int = 0) -> "LoopedGraph":
        g = cls.__new__(cls)
        g.vertices = tuple(vertices)
        g._index = {v: i for i, v in enumerate(g.vertices)}
        g.nbr = tuple(nbr)
        g.loops = loops
        return g

    @classmethod
    def from_adjacency(cls, rows: Sequence[Sequence[int]], vertices=None) -> "LoopedGraph":
        n = len(rows)
        vertices = tuple(range(n)) if vertices is None else tuple(vertices)
        nbr = [0] * n
        loops = 0
        for i in range(n):
            for j in range(n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError("adjacency matrix is not symmetric")
                if rows[i][j] & 1:
                    if i == j:
                        loops |= 1 << i
                    else:
                        nbr[i] |= 1 << j
        return cls.from_masks(vertices, nbr, loops)

    # basic access -----------------------------------------------------
    def index(self, v) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertex(f"{v!r} is not a vertex") from None

    def __len__(self):
        return len(self.vertices)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def neighbors(self, v) -> frozenset:
        return frozenset(self.vertices[j] for j in bits_of(self.nbr[self.index(v)]))

    def degree(self, v) -> int:
        return popcount(self.nbr[self.index(v)])

    def is_looped(self, v) -> bool:
        return bool(self.loops >> self.index(v) & 1)

    def looped_vertices(self) -> frozenset:
        return frozenset(self.vertices[j] for j in bits_of(self.loops))

    def adjacent(self, v, w) -> bool:
        return bool(self.nbr[self.index(v)] >> self.index(w) & 1)

    def edges(self) -> list[tuple]:
        """Edges as vertex pairs, sorted by vertex position."""
        out = []
        for i, m in enumerate(self.nbr):
            for j in bits_of(m >> (i + 1)):
                out.append((self.vertices[i], self.vertices[i + 1 + j]))
        return out

    def num_edges(self) -> int:
        return sum(map(popcount, self.nbr)) // 2

    def is_isolated(self, v) -> bool:
        return self.nbr[self.index(v)] == 0

    def simple(self) -> "LoopedGraph":
        """The same graph with every loop removed."""
        return LoopedGraph.from_masks(self.vertices, self.nbr, 0)

    def key(self):
        return self.nbr, self.loops

    def relabel(self, mapping) -> "LoopedGraph":
        """Rename vertices through ``mapping`` (a dict or callable); order is kept."""
        f = mapping if callable(mapping) else mapping.__getitem__
        return LoopedGraph.from_masks([f(v) for v in self.vertices], self.nbr, self.loops)

    def permute(self, order: Sequence[Vertex]) -> "LoopedGraph":
        """Same labeled graph with the vertex tuple reordered to ``order``."""
        pos = [self.index(v) for v in order]
        inv = {p: i for i, p in enumerate(pos)}
        nbr = [sum(1 << inv[j] for j in bits_of(self.nbr[p])) for p in pos]
        loops = sum(1 << i for i, p in enumerate(pos) if self.loops >> p & 1)
        return LoopedGraph.from_masks(order, nbr, loops)

    def delete_vertex(self, v) -> "LoopedGraph":
        i = self.index(v)
        keep = [j for j in range(self.n) if j != i]
        return self.induced([self.vertices[j] for j in keep])

    def induced(self, vs: Iterable[Vertex]) -> "LoopedGraph":
        vs = [w for w in self.vertices if w in set(vs)]
        pos = [self.index(w) for w in vs]
        inv = {p: k for k, p in enumerate(pos)}
        nbr = [sum(1 << inv[j] for j in bits_of(self.nbr[p]) if j in inv) for p in pos]
        loops = sum(1 << k for k, p in enumerate(pos) if self.loops >> p & 1)
        return LoopedGraph.from_masks(vs, nbr, loops)

    def components(self) -> list[list]:
        seen = 0
        out = []
        for i in range(self.n):
            if seen >> i & 1:
                continue
            comp = 1 << i
            frontier = comp
            while frontier:
                nxt = 0
                for j in bits_of(frontier):
                    nxt |= self.nbr[j]
                frontier = nxt & ~comp
                comp |= nxt
            seen |= comp
            out.append([self.vertices[j] for j in bits_of(comp)])
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def __eq__(self, other):
        if not isinstance(other, LoopedGraph):
            return NotImplemented
        if self.vertices == other.vertices:
            return self.nbr == other.nbr and self.loops == other.loops
        if set(self.vertices) != set(other.vertices):
            return False
        return self.permute(other.vertices).key() == other.key()

    def __hash__(self):
        return hash((frozenset(self.vertices), frozenset(map(frozenset, self.edges())), self.looped_vertices()))

    def __repr__(self):
        loops = sorted(map(str, self.looped_vertices()))
        return f"LoopedGraph(V={list(self.vertices)}, E={self.edges()}, loops={loops})"


# elementary moves ---------------------------------------------------------

def lc_masks(nbr: tuple, i: int) -> tuple:
    """Simple local complement at position ``i`` on neighbor bitmasks."""
    N = nbr[i]
    if N & (N - 1) == 0:
        return nbr
    out = list(nbr)
    for u in bits_of(N):
        out[u] ^= N & ~(1 << u)
    return tuple(out)


def loop_complement(G: LoopedGraph, v) -> LoopedGraph:
    return LoopedGraph.from_masks(G.vertices, G.nbr, G.loops ^ (1 << G.index(v)))


def local_complement_simple(G: LoopedGraph, v) -> LoopedGraph:
    return LoopedGraph.from_masks(G.vertices, lc_masks(G.nbr, G.index(v)), G.loops)


def local_complement_nonsimple(G: LoopedGraph, v) -> LoopedGraph:
    i = G.index(v)
    return LoopedGraph.from_masks(G.vertices, lc_masks(G.nbr, i), G.loops ^ G.nbr[i])


def pivot_masks(nbr: tuple, i: int, j: int) -> tuple:
    return lc_masks(lc_masks(lc_masks(nbr, i), j), i)


def edge_pivot(G: LoopedGraph, v, w) -> LoopedGraph:
    """G^{vw} = ((G_s^v)_s^w)_s^v on an edge with unlooped endpoints."""
    i, j = G.index(v), G.index(w)
    if not G.nbr[i] >> j & 1:
        raise NotAnEdge(f"{v!r}{w!r} is not an edge")
    if (G.loops >> i | G.loops >> j) & 1:
        raise LoopedEndpoint("edge pivots are defined only on unlooped endpoints")
    return LoopedGraph.from_masks(G.vertices, pivot_masks(G.nbr, i, j), G.loops)


MOVE_CODES = {"loop": "ls", "simple": "lc", "nonsimple": "lcn", "pivot": "piv"}
_CODE_TO_KIND = {code: kind for kind, code in MOVE_CODES.items()}


@dataclass(frozen=True)
class GraphMove:
    """One elementary move: kind in {'loop', 'simple', 'nonsimple', 'pivot'}."""

    kind: str
    vertices: tuple

    def __post_init__(self):
        if self.kind not in MOVE_CODES:
            raise ValueError(f"unknown move kind {self.kind!r}")
        if (self.kind == "pivot") != (len(self.vertices) == 2) or len(self.vertices) not in (1, 2):
            raise ValueError("pivot moves take a vertex pair, other moves a single vertex")

    @classmethod
    def loop(cls, v):
        return cls("loop", (v,))

    @classmethod
    def simple(cls, v):
        return cls("simple", (v,))

    @classmethod
    def nonsimple(cls, v):
        return cls("nonsimple", (v,))

    @classmethod
    def pivot(cls, v, w):
        return cls("pivot", (v, w))

    def apply(self, G: LoopedGraph) -> LoopedGraph:
        if self.kind == "loop":
            return loop_complement(G, self.vertices[0])
        if self.kind == "simple":
            return local_complement_simple(G, self.vertices[0])
        if self.kind == "nonsimple":
            return local_complement_nonsimple(G, self.vertices[0])
        return edge_pivot(G, *self.vertices)

    def __str__(self):
        return " ".join([MOVE_CODES[self.kind], *map(str, self.vertices)])

    @classmethod
    def parse(cls, text: str, vertex_type=int) -> "GraphMove":
        parts = text.split()
        if not parts or parts[0] not in _CODE_TO_KIND:
            raise ParseError(f"bad move {text!r}")
        try:
            return cls(_CODE_TO_KIND[parts[0]], tuple(vertex_type(p) for p in parts[1:]))
        except ValueError as exc:
            raise ParseError(f"bad move {text!r}: {exc}") from None


def apply_moves(G: LoopedGraph, moves: Iterable[GraphMove]) -> LoopedGraph:
    for m in moves:
        G = m.apply(G)
    return G


# matrices and simple predicates -----------------------------------------

def adjacency_matrix(G: LoopedGraph) -> Gf2Matrix:
    cols = [G.nbr[i] | (G.loops & (1 << i)) for i in range(G.n)]
    return Gf2Matrix(G.vertices, G.vertices, cols)


def is_stable(G: LoopedGraph, X: Iterable[Vertex]) -> bool:
    mask = 0
    for v in X:
        mask |= 1 << G.index(v)
    return all(G.nbr[i] & mask == 0 for i in bits_of(mask))


def stable_mask(nbr: Sequence[int], mask: int) -> bool:
    return all(nbr[i] & mask == 0 for i in bits_of(mask))


def max_stable_size(nbr: Sequence[int]) -> int:
    """Independence number by branching on the lowest remaining vertex."""

    def best(avail):
        if not avail:
            return 0
        low = avail & -avail
        i = low.bit_length() - 1
        without = best(avail ^ low)
        with_i = 1 + best(avail & ~low & ~nbr[i])
        return max(without, with_i)

    return best((1 << len(nbr)) - 1)


def is_bipartite(G: LoopedGraph):
    """A 2-coloring ``(V1, V2)`` of the edge structure, or None.

    Loops are ignored.  The first vertex of each component goes into ``V1``.
    """
    color = {}
    for start in range(G.n):
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            i = stack.pop()
            for j in bits_of(G.nbr[i]):
                if j not in color:
                    color[j] = 1 - color[i]
                    stack.append(j)
                elif color[j] == color[i]:
                    return None
    V1 = frozenset(G.vertices[i] for i, c in color.items() if c == 0)
    V2 = frozenset(G.vertices[i] for i, c in color.items() if c == 1)
    return V1, V2


def distances(G: LoopedGraph) -> list[list]:
    """All-pairs BFS distances over positions; None for unreachable pairs."""
    out = []
    for s in range(G.n):
        dist = [None] * G.n
        dist[s] = 0
        frontier = [s]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for i in frontier:
                for j in bits_of(G.nbr[i]):
                    if dist[j] is None:
                        dist[j] = d
                        nxt.append(j)
            frontier = nxt
        out.append(dist)
    return out


def is_forest(G: LoopedGraph) -> bool:
    return G.loops == 0 and G.num_edges() == G.n - len(G.components())


# canonical forms ------------------------------------------------------------

def _refine(nbr, n, colors):
    """Iterated color refinement; colors are ranks of invariant signatures."""
    ncolors = len(set(colors))
    while True:
        sigs = [(colors[i], tuple(sorted(colors[j] for j in bits_of(nbr[i])))) for i in range(n)]
        order = {s: k for k, s in enumerate(sorted(set(sigs)))}
        new = [order[s] for s in sigs]
        if len(order) == ncolors:
            return new
        colors, ncolors = new, len(order)


def _encode(nbr, loops, perm):
    """Encoding of the graph listed in order ``perm`` (perm[k] = position)."""
    n = len(perm)
    inv = [0] * n
    for k, p in enumerate(perm):
        inv[p] = k
    code = 0
    for k, p in enumerate(perm):
        code = code << 1 | (loops >> p & 1)
    for a in range(n):
        row = nbr[perm[a]]
        for b in range(a + 1, n):
            code = code << 1 | (row >> perm[b] & 1)
    return code


def canonical_labeling(nbr: Sequence[int], loops: int):
    """Return ``(code, perm)``: the minimal encoding over refinement leaves.

    Search is individualization-refinement over the first non-singleton color
    class; twins inside a class (same loop status, same neighborhood apart from
    each other) are interchangeable and only one of them is branched on.
    """
    n = len(nbr)
    cap = get_cap("canon")
    if n > cap:
        raise CapExceeded(f"canonical form capped at {cap} vertices (got {n})")
    start = [((loops >> i & 1), popcount(nbr[i])) for i in range(n)]
    ranks = {s: k for k, s in enumerate(sorted(set(start)))}
    colors = _refine(nbr, n, [2 * ranks[s] for s in start])
    best = [None, None]

    def twins(u, w):
        return (loops >> u & 1) == (loops >> w & 1) and nbr[u] & ~(1 << w) == nbr[w] & ~(1 << u)

    def search(colors):
        counts = {}
        for c in colors:
            counts[c] = counts.get(c, 0) + 1
        target = None
        for c in sorted(counts):
            if counts[c] > 1:
                target = c
                break
        if target is None:
            perm = sorted(range(n), key=colors.__getitem__)
            code = _encode(nbr, loops, perm)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, perm
            return
        cell = [i for i in range(n) if colors[i] == target]
        tried = []
        for v in cell:
            if any(twins(v, u) for u in tried):
                continue
            tried.append(v)
            # colors are even; odd slot just below the cell individualizes v
            new = [2 * c for c in colors]
            new[v] = 2 * target - 1
            search(_refine(nbr, n, new))

    search([2 * c for c in colors] if n else colors)
    if n == 0:
        return 0, []
    return best[0], best[1]


def canonical_form(G: LoopedGraph) -> bytes:
    code, _ = canonical_labeling(G.nbr, G.loops)
    nbits = G.n + G.n * (G.n - 1) // 2
    return f"{G.n}:{code:0{(nbits + 3) // 4}x}".encode() if nbits else f"{G.n}:".encode()


def canonical_graph(G: LoopedGraph) -> LoopedGraph:
    """The canonical representative on vertices 0..n-1."""
    _, perm = canonical_labeling(G.nbr, G.loops)
    return G.permute([G.vertices[p] for p in perm]).relabel({G.vertices[p]: k for k, p in enumerate(perm)})


def are_isomorphic(G: LoopedGraph, H: LoopedGraph):
    """A vertex bijection G -> H preserving edges and loops, or None."""
    if G.n != H.n or G.num_edges() != H.num_edges() or popcount(G.loops) != popcount(H.loops):
        return None
    cg, pg = canonical_labeling(G.nbr, G.loops)
    ch, ph = canonical_labeling(H.nbr, H.loops)
    if cg != ch:
        return None
    return {G.vertices[a]: H.vertices[b] for a, b in zip(pg, ph)}


def is_isomorphism(G: LoopedGraph, H: LoopedGraph, f) -> bool:
    if set(f) != set(G.vertices) or set(f.values()) != set(H.vertices) or len(set(f.values())) != G.n:
        return False
    if any(G.is_looped(v) != H.is_looped(f[v]) for v in G.vertices):
        return False
    return all(G.adjacent(v, w) == H.adjacent(f[v], f[w]) for v, w in itertools.combinations(G.vertices, 2))


# enumeration ----------------------------------------------------------------

def enumerate_graphs(n: int, loops: bool = False) -> list[LoopedGraph]:
    """All unlabeled looped simple graphs on ``n`` vertices (canonical representatives).

    Orderly-style generation: extend every representative with ``m`` edges by
    one more edge and deduplicate by canonical form.  Loops are then distributed
    the same way when requested.
    """
    verts = tuple(range(n))
    layer = {canonical_form(LoopedGraph(verts)): LoopedGraph(verts)}
    found = dict(layer)
    pairs = list(itertools.combinations(range(n), 2))
    while layer:
        nxt = {}
        for g in layer.values():
            for i, j in pairs:
                if g.nbr[i] >> j & 1:
                    continue
                nb = list(g.nbr)
                nb[i] |= 1 << j
                nb[j] |= 1 << i
                h = LoopedGraph.from_masks(verts, nb, 0)
                key = canonical_form(h)
                if key not in found:
                    found[key] = nxt[key] = canonical_graph(h)
        layer = nxt
    graphs = [canonical_graph(g) for g in found.values()]
    if not loops:
        return sorted(graphs, key=lambda g: (g.num_edges(), canonical_form(g)))
    out = {}
    for g in graphs:
        for mask in range(1 << n):
            h = LoopedGraph.from_masks(verts, g.nbr, mask)
            key = canonical_form(h)
            if key not in out:
                out[key] = canonical_graph(h)
    return sorted(out.values(), key=lambda g: (g.num_edges(), popcount(g.loops), canonical_form(g)))


def enumerate_forests(n: int) -> list[LoopedGraph]:
    return [g for g in enumerate_graphs(n) if is_forest(g)]


# named graphs -----------------------------------------------------------------

def cycle_graph(n: int, vertices=None) -> LoopedGraph:
    vertices = tuple(range(n)) if vertices is None else tuple(vertices)
    return LoopedGraph(vertices, [(vertices[i], vertices[(i + 1) % n]) for i in range(n)])


def path_graph(n: int) -> LoopedGraph:
    return LoopedGraph(range(n), [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> LoopedGraph:
    return LoopedGraph(range(n), itertools.combinations(range(n), 2))


def star_graph(leaves: int) -> LoopedGraph:
    return LoopedGraph(range(leaves + 1), [(0, i) for i in range(1, leaves + 1)])


def wheel_graph(rim: int) -> LoopedGraph:
    """Hub 0 joined to every vertex of the cycle 1..rim."""
    edges = [(0, i) for i in range(1, rim + 1)]
    edges += [(i, i % rim + 1) for i in range(1, rim + 1)]
    return LoopedGraph(range(rim + 1), edges)


def empty_graph(n: int) -> LoopedGraph:
    return LoopedGraph(range(n))


# file formats ------------------------------------------------------------------

def parse_lsg(text: str) -> LoopedGraph:
    """Parse the ``.lsg`` format (``n``, ``loops`` and ``e i j`` lines) or a graph6 string."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ParseError("empty graph file")
    if len(lines) == 1 and not lines[0].startswith("n "):
        return parse_graph6(lines[0])
    head = lines[0].split()
    if len(head) != 2 or head[0] != "n" or not head[1].isdigit():
        raise ParseError(f"bad first line {lines[0]!r}; expected 'n <count>'")
    n = int(head[1])
    loops = "0" * n
    rest = lines[1:]
    if rest and rest[0].startswith("loops"):
        parts = rest[0].split()
        loops = parts[1] if len(parts) > 1 else ""
        rest = rest[1:]
        if len(loops) != n or set(loops) - {"0", "1"}:
            raise ParseError("loops line must be a bitstring of length n")
    edges = []
    for ln in rest:
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "e":
            raise ParseError(f"bad edge line {ln!r}")
        try:
            i, j = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(f"bad edge line {ln!r}") from None
        if not (0 <= i < j < n):
            raise ParseError(f"edge {i} {j} must satisfy 0 <= i < j < n")
        edges.append((i, j))
    return LoopedGraph(range(n), edges, [i for i in range(n) if loops[i] == "1"])


def format_lsg(G: LoopedGraph) -> str:
    pos = {v: i for i, v in enumerate(G.vertices)}
    lines = [f"n {G.n}", "loops " + "".join("1" if G.loops >> i & 1 else "0" for i in range(G.n))]
    for a, b in sorted(tuple(sorted((pos[a], pos[b]))) for a, b in G.edges()):
        lines.append(f"e {a} {b}")
    return "\n".join(lines) + "\n"


def parse_graph6(s: str) -> LoopedGraph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    data = [ord(ch) - 63 for ch in s]
    if not data or any(x < 0 or x > 63 for x in data):
        raise ParseError(f"not a graph6 string: {s!r}")
    if data[0] < 63:
        n, data = data[0], data[1:]
    elif len(data) >= 4 and data[1] < 63:
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        data = data[4:]
    else:
        raise ParseError("graph6 strings for n > 258047 are not supported")
    need = (n * (n - 1) // 2 + 5) // 6
    if len(data) != need:
        raise ParseError(f"graph6 body has {len(data)} bytes, expected {need}")
    bits = []
    for x in data:
        bits.extend((x >> (5 - k)) & 1 for k in range(6))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return LoopedGraph(range(n), edges)


def format_graph6(G: LoopedGraph) -> str:
    if G.loops:
        raise ValueError("graph6 cannot encode loops")
    n = G.n
    out = [n + 63] if n < 63 else [126, (n >> 12 & 63) + 63, (n >> 6 & 63) + 63, (n & 63) + 63]
    bits = [G.nbr[j] >> i & 1 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = x << 1 | b
        out.append(x + 63)
    return "".join(map(chr, out))
