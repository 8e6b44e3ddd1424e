"""Isotropic matroids M[IAS(G)] of looped simple graphs and the structure on W(G)."""

from __future__ import annotations

import itertools
from typing import Hashable, Iterable, NamedTuple, Sequence

from .config import get_cap
from .errors import (BothPhi, CapExceeded, IsolatedVertex, NotParallel, NotStable, PreconditionError,
                     NotSubtransversal, ParseError)
from .gf2 import Gf2Matrix, bits_of, popcount, rank_of_ints
from .graph import (GraphMove, LoopedGraph, edge_pivot, is_stable, local_complement_nonsimple,
                    local_complement_simple, loop_complement)
from .matroid import BinaryMatroid, element_invariants

PHI, CHI, PSI = 0, 1, 2
KIND_NAMES = ("phi", "chi", "psi")
KIND_SYMBOLS = ("φ", "χ", "ψ")
ALL_PERMS = tuple(itertools.permutations(range(3)))


class GroundElement(NamedTuple):
    """An element of W(G): ``kind`` is PHI, CHI or PSI."""

    vertex: Hashable
    kind: int

    def __str__(self):
        return f"{KIND_NAMES[self.kind]}:{self.vertex}"

    @property
    def kind_name(self) -> str:
        return KIND_NAMES[self.kind]


def phi(v) -> GroundElement:
    return GroundElement(v, PHI)


def chi(v) -> GroundElement:
    return GroundElement(v, CHI)


def psi(v) -> GroundElement:
    return GroundElement(v, PSI)


def parse_element(text: str, vertex_type=int) -> GroundElement:
    name, _, v = text.strip().partition(":")
    if name not in KIND_NAMES or not v:
        raise ParseError(f"bad ground element {text!r}; expected e.g. 'phi:3'")
    try:
        return GroundElement(vertex_type(v), KIND_NAMES.index(name))
    except ValueError:
        raise ParseError(f"bad vertex in {text!r}") from None


def format_elements(S: Iterable[GroundElement], G: LoopedGraph | None = None) -> str:
    if G is None:
        items = sorted(S)
    else:
        items = sorted(S, key=lambda e: (G.index(e.vertex), e.kind))
    return " ".join(map(str, items))


class IsotropicMatroid:
    """M[IAS(G)] with its vertex-triple partition.

    Ground positions are ``3 * i + kind`` for the vertex at position ``i``, so
    transversals and subtransversals map to int masks directly.
    """

    __slots__ = ("graph", "matroid", "triples")

    def __init__(self, G: LoopedGraph):
        self.graph = G
        rows = G.vertices
        ground, cols = [], []
        for i, v in enumerate(G.vertices):
            a = G.nbr[i] | (G.loops & (1 << i))
            ground += [phi(v), chi(v), psi(v)]
            cols += [1 << i, a, a ^ (1 << i)]
        self.matroid = BinaryMatroid(Gf2Matrix(rows, ground, cols))
        self.triples = {v: (phi(v), chi(v), psi(v)) for v in G.vertices}

    @property
    def ground(self):
        return self.matroid.ground

    @property
    def n(self) -> int:
        return self.graph.n

    def element_pos(self, e: GroundElement) -> int:
        return self.matroid.pos(e)

    def mask(self, S: Iterable[GroundElement]) -> int:
        return self.matroid.mask(S)

    def rank_of(self, S) -> int:
        return self.matroid.rank_of(S)

    def column(self, e: GroundElement) -> int:
        return self.matroid.rep.cols[self.element_pos(e)]

    def transversal(self, choice) -> tuple:
        """Transversal from a ``{vertex: kind}`` map or a kind sequence in vertex order."""
        if isinstance(choice, dict):
            return tuple(GroundElement(v, choice[v]) for v in self.graph.vertices)
        return tuple(GroundElement(v, k) for v, k in zip(self.graph.vertices, choice))

    def is_subtransversal(self, S) -> bool:
        seen = set()
        for e in S:
            if e not in self.matroid._pos:
                return False
            if e.vertex in seen:
                return False
            seen.add(e.vertex)
        return True

    def is_transversal(self, S) -> bool:
        S = list(S)
        return self.is_subtransversal(S) and len(S) == self.n

    def transverse_matroid(self, T) -> BinaryMatroid:
        return self.matroid.restrict(T)

    def __repr__(self):
        return f"IsotropicMatroid({self.graph!r})"


def build_ias(G: LoopedGraph) -> IsotropicMatroid:
    return IsotropicMatroid(G)


def ias_matrix(G: LoopedGraph) -> Gf2Matrix:
    return IsotropicMatroid(G).matroid.rep


def build_ia(G: LoopedGraph):
    """M[IA(G)] and its natural pairs ``{v: (phi(v), chi(v))}``."""
    ground, cols = [], []
    for i, v in enumerate(G.vertices):
        ground += [phi(v), chi(v)]
        cols += [1 << i, G.nbr[i] | (G.loops & (1 << i))]
    M = BinaryMatroid(Gf2Matrix(G.vertices, ground, cols))
    return M, {v: (phi(v), chi(v)) for v in G.vertices}


# transversals and circuits ----------------------------------------------------

def _check_scan(n: int):
    cap = get_cap("scan")
    if n > cap:
        raise CapExceeded(f"3^{n} transversal scan exceeds the cap n <= {cap}")


def transversal_codes(n: int):
    """Kind tuples of all transversals, lexicographic (base-3 order)."""
    _check_scan(n)
    return itertools.product(range(3), repeat=n)


def transversals(G: LoopedGraph):
    _check_scan(G.n)
    for kinds in itertools.product(range(3), repeat=G.n):
        yield tuple(GroundElement(v, k) for v, k in zip(G.vertices, kinds))


def subtransversals(G: LoopedGraph):
    """All subtransversals; each vertex contributes nothing or one of three kinds."""
    _check_scan(G.n)
    for kinds in itertools.product(range(4), repeat=G.n):
        yield tuple(GroundElement(v, k - 1) for v, k in zip(G.vertices, kinds) if k)


def transversal_mask(kinds: Sequence[int]) -> int:
    m = 0
    for i, k in enumerate(kinds):
        m |= 1 << (3 * i + k)
    return m


def is_subtransversal_mask(m: int) -> bool:
    i = 0
    while m:
        if popcount(m & 7) > 1:
            return False
        m >>= 3
        i += 1
    return True


def transverse_circuit_masks(IM: IsotropicMatroid, size_cap: int | None = None) -> list[int]:
    return sorted(c for c in IM.matroid.circuit_masks(size_cap) if is_subtransversal_mask(c))


def transverse_circuits(G_or_IM, size_cap: int | None = None) -> set:
    IM = G_or_IM if isinstance(G_or_IM, IsotropicMatroid) else build_ias(G_or_IM)
    return {IM.matroid.labels(c) for c in transverse_circuit_masks(IM, size_cap)}


def neighborhood_circuit(G: LoopedGraph, v) -> frozenset:
    if G.is_isolated(v):
        raise IsolatedVertex(f"{v!r} is isolated; its triple holds a loop and a parallel pair instead")
    own = psi(v) if G.is_looped(v) else chi(v)
    return frozenset([own] + [phi(w) for w in G.neighbors(v)])


def neighborhood_transversal(G: LoopedGraph, X: Iterable) -> tuple:
    X = set(X)
    if not is_stable(G, X):
        raise NotStable(f"{sorted(map(str, X))} is not stable")
    out = []
    for v in G.vertices:
        if v not in X:
            out.append(phi(v))
        else:
            out.append(psi(v) if G.is_looped(v) else chi(v))
    return tuple(out)


def neighborhood_matroid(G: LoopedGraph, X: Iterable):
    """``(M_G(X), T_G(X))``: the restriction of M[IAS(G)] to T_G(X)."""
    T = neighborhood_transversal(G, X)
    return build_ias(G).matroid.restrict(T), T


# compatible isomorphisms --------------------------------------------------------

class CompatibleIso:
    """A vertex bijection with a kind permutation per vertex.

    ``kind_maps[v][k]`` is the kind of the image of ``GroundElement(v, k)``.
    """

    __slots__ = ("vertex_map", "kind_maps")

    def __init__(self, vertex_map: dict, kind_maps: dict):
        self.vertex_map = dict(vertex_map)
        self.kind_maps = {v: tuple(p) for v, p in kind_maps.items()}

    @classmethod
    def identity(cls, vertices) -> "CompatibleIso":
        return cls({v: v for v in vertices}, {v: (0, 1, 2) for v in vertices})

    @classmethod
    def swaps(cls, vertices, swaps: dict) -> "CompatibleIso":
        """Identity except the listed per-vertex kind transpositions ``{v: [(a, b), ...]}``."""
        maps = {}
        for v in vertices:
            p = [0, 1, 2]
            for a, b in swaps.get(v, ()):
                p[a], p[b] = p[b], p[a]
            maps[v] = tuple(p)
        return cls({v: v for v in vertices}, maps)

    @classmethod
    def from_ground_map(cls, f: dict) -> "CompatibleIso":
        vmap, kmaps = {}, {}
        for e, t in f.items():
            if vmap.setdefault(e.vertex, t.vertex) != t.vertex:
                raise ValueError("ground map does not respect vertex triples")
            kmaps.setdefault(e.vertex, [None] * 3)[e.kind] = t.kind
        return cls(vmap, kmaps)

    def __call__(self, e: GroundElement) -> GroundElement:
        return GroundElement(self.vertex_map[e.vertex], self.kind_maps[e.vertex][e.kind])

    def ground_map(self) -> dict:
        return {GroundElement(v, k): self(GroundElement(v, k)) for v in self.vertex_map for k in range(3)}

    def then(self, other: "CompatibleIso") -> "CompatibleIso":
        """Composition: apply ``self`` first, then ``other``."""
        vmap, kmaps = {}, {}
        for v, w in self.vertex_map.items():
            vmap[v] = other.vertex_map[w]
            kmaps[v] = tuple(other.kind_maps[w][self.kind_maps[v][k]] for k in range(3))
        return CompatibleIso(vmap, kmaps)

    def inverse(self) -> "CompatibleIso":
        vmap, kmaps = {}, {}
        for v, w in self.vertex_map.items():
            vmap[w] = v
            p = self.kind_maps[v]
            inv = [0, 0, 0]
            for k in range(3):
                inv[p[k]] = k
            kmaps[w] = tuple(inv)
        return CompatibleIso(vmap, kmaps)

    def is_identity(self) -> bool:
        return all(v == w for v, w in self.vertex_map.items()) and all(
            p == (0, 1, 2) for p in self.kind_maps.values())

    def to_json(self) -> dict:
        return {str(e): str(t) for e, t in self.ground_map().items()}

    def __eq__(self, other):
        if not isinstance(other, CompatibleIso):
            return NotImplemented
        return self.vertex_map == other.vertex_map and self.kind_maps == other.kind_maps

    def __repr__(self):
        return f"CompatibleIso({self.vertex_map}, {self.kind_maps})"


def induced_iso(G: LoopedGraph, move: GraphMove):
    """Apply ``move`` and return ``(H, beta)`` with beta the induced compatible isomorphism."""
    V = G.vertices
    if move.kind == "loop":
        (v,) = move.vertices
        return loop_complement(G, v), CompatibleIso.swaps(V, {v: [(CHI, PSI)]})
    if move.kind == "nonsimple":
        (v,) = move.vertices
        H = local_complement_nonsimple(G, v)
        own = (PHI, CHI) if G.is_looped(v) else (PHI, PSI)
        return H, CompatibleIso.swaps(V, {v: [own]})
    if move.kind == "simple":
        (v,) = move.vertices
        H = local_complement_simple(G, v)
        swaps = {w: [(CHI, PSI)] for w in G.neighbors(v)}
        swaps[v] = [(PHI, CHI) if G.is_looped(v) else (PHI, PSI)]
        return H, CompatibleIso.swaps(V, swaps)
    v, w = move.vertices
    H = edge_pivot(G, v, w)  # validates the edge and loop status
    beta = CompatibleIso.identity(V)
    cur = G
    for x in (v, w, v):
        cur, b = induced_iso(cur, GraphMove.simple(x))
        beta = beta.then(b)
    assert cur == H
    return H, beta


def compose_induced(G: LoopedGraph, moves: Iterable[GraphMove]):
    beta = CompatibleIso.identity(G.vertices)
    for m in moves:
        G, b = induced_iso(G, m)
        beta = beta.then(b)
    return G, beta


def is_compatible_isomorphism(G: LoopedGraph, H: LoopedGraph, beta: CompatibleIso) -> bool:
    if set(beta.vertex_map) != set(G.vertices) or set(beta.vertex_map.values()) != set(H.vertices):
        return False
    if len(set(beta.vertex_map.values())) != G.n:
        return False
    if any(sorted(p) != [0, 1, 2] for p in beta.kind_maps.values()):
        return False
    return build_ias(G).matroid.is_isomorphism(build_ias(H).matroid, beta.ground_map())


def _triple_invariants(IM: IsotropicMatroid, inv):
    return [tuple(sorted(inv[3 * i: 3 * i + 3])) for i in range(IM.n)]


def compatible_isomorphism(G: LoopedGraph, H: LoopedGraph, fixed_vertices: bool = False):
    """Search for a compatible isomorphism M[IAS(G)] -> M[IAS(H)].

    With ``fixed_vertices`` the associated vertex bijection must be the identity
    (G and H then need the same vertex set).  Returns a :class:`CompatibleIso` or None.
    """
    if G.n != H.n:
        return None
    if fixed_vertices and set(G.vertices) != set(H.vertices):
        return None
    A, B = build_ias(G), build_ias(H)
    c1, c2 = A.matroid.circuit_masks(), B.matroid.circuit_masks()
    if len(c1) != len(c2):
        return None
    inv1, inv2 = element_invariants(A.matroid), element_invariants(B.matroid)
    if sorted(inv1) != sorted(inv2):
        return None
    t1, t2 = _triple_invariants(A, inv1), _triple_invariants(B, inv2)
    if sorted(t1) != sorted(t2):
        return None
    n = G.n
    # vertex order: rarest triple invariant first, then along adjacency/circuits
    counts: dict = {}
    for t in t1:
        counts[t] = counts.get(t, 0) + 1
    touch = [0] * n
    for c in c1:
        vm = 0
        for p in bits_of(c):
            vm |= 1 << (p // 3)
        for i in bits_of(vm):
            touch[i] |= vm
    order: list[int] = []
    placed = 0
    while len(order) < n:
        pool = [i for i in range(n) if not placed >> i & 1 and touch[i] & placed] or [
            i for i in range(n) if not placed >> i & 1]
        i = min(pool, key=lambda k: (counts[t1[k]], -popcount(touch[k] & placed), k))
        order.append(i)
        placed |= 1 << i
    step = {i: s for s, i in enumerate(order)}
    closing: list[list[int]] = [[] for _ in range(n)]
    for c in c1:
        last = max((p // 3 for p in bits_of(c)), key=step.__getitem__)
        closing[step[last]].append(c)
    hpos = {v: j for j, v in enumerate(H.vertices)}
    cols1, cols2 = A.matroid.rep.cols, B.matroid.rep.cols
    image = [0] * (3 * n)
    used = 0

    def ok(s: int) -> bool:
        for c in closing[s]:
            m = 0
            for p in bits_of(c):
                m |= 1 << image[p]
            if m not in c2:
                return False
        pre1 = [cols1[3 * order[t] + k] for t in range(s + 1) for k in range(3)]
        pre2 = [cols2[image[3 * order[t] + k]] for t in range(s + 1) for k in range(3)]
        return rank_of_ints(pre1) == rank_of_ints(pre2)

    def go(s: int) -> bool:
        nonlocal used
        if s == n:
            return True
        i = order[s]
        targets = [hpos[G.vertices[i]]] if fixed_vertices else range(n)
        for j in targets:
            if used >> j & 1 or t2[j] != t1[i]:
                continue
            for p in ALL_PERMS:
                if any(inv2[3 * j + p[k]] != inv1[3 * i + k] for k in range(3)):
                    continue
                for k in range(3):
                    image[3 * i + k] = 3 * j + p[k]
                used |= 1 << j
                if ok(s) and go(s + 1):
                    return True
                used &= ~(1 << j)
        return False

    if not go(0):
        return None
    vmap, kmaps = {}, {}
    for i, v in enumerate(G.vertices):
        j = image[3 * i] // 3
        vmap[v] = H.vertices[j]
        kmaps[v] = tuple(image[3 * i + k] % 3 for k in range(3))
    return CompatibleIso(vmap, kmaps)


# minors -----------------------------------------------------------------------------

def isotropic_minor(IM: IsotropicMatroid, S: Iterable[GroundElement]) -> BinaryMatroid:
    """(M[IAS(G)] / S) - S' where S' holds the other elements of the touched triples."""
    S = list(S)
    if not IM.is_subtransversal(S):
        raise NotSubtransversal(f"{format_elements(S)} is not a subtransversal")
    touched = {e.vertex for e in S}
    others = [g for g in IM.ground if g.vertex in touched and g not in set(S)]
    return IM.matroid.contract(S).delete(others)


def isominor_target(G: LoopedGraph, e: GroundElement):
    """Vertex-minor H with IAS(H) realizing the isotropic minor that contracts ``e``.

    Returns ``(H, exact, w)``: ``exact`` says the identity on labels works;
    otherwise labels inside the triple of ``w`` must be permuted.
    """
    v = e.vertex
    if e.kind == PHI:
        return G.delete_vertex(v), True, None
    # at a looped vertex, chi and psi trade roles (loop complement at v)
    own = CHI if not G.is_looped(v) else PSI
    if G.is_isolated(v):
        return G.delete_vertex(v), True, None
    if e.kind != own:
        return local_complement_nonsimple(G, v).delete_vertex(v), True, None
    w = min(G.neighbors(v), key=G.index)
    H = local_complement_simple(local_complement_simple(local_complement_simple(G, v), w), v)
    return H.delete_vertex(v), False, w


def minor_label_fix(G: LoopedGraph, e: GroundElement):
    """Compatible map (identity off the triple of w) realizing the inexact case, or None."""
    H, exact, w = isominor_target(G, e)
    minor = isotropic_minor(build_ias(G), [e])
    target = build_ias(H).matroid
    if exact:
        return CompatibleIso.identity(H.vertices) if minor.same_as(target) else None
    for p in ALL_PERMS:
        kmaps = {x: (0, 1, 2) for x in H.vertices}
        kmaps[w] = p
        beta = CompatibleIso({x: x for x in H.vertices}, kmaps)
        if minor.is_isomorphism(target, beta.ground_map()):
            return beta
    return None


def transverse_minor_check(G: LoopedGraph, T: Sequence[GroundElement], m: GroundElement) -> dict:
    """Realize M/m and M-m (M = M[IAS(G)]|T) as transverse matroids of isotropic minors.

    Returns flags for the contraction identity, the triangle rank property and
    the deletion identity.
    """
    IM = build_ias(G)
    M = IM.matroid.restrict(T)
    rest = [t for t in T if t != m]
    contracted = isotropic_minor(IM, [m]).restrict(rest)
    contraction_ok = M.contract([m]).same_as(contracted)
    sib = [g for g in IM.triples[m.vertex] if g != m]
    r0 = IM.rank_of(rest)
    ranks = [IM.rank_of(rest + [x]) for x in IM.triples[m.vertex]]
    triangle_ok = sorted(r - r0 for r in ranks) == [0, 1, 1]
    deletion_ok = False
    for x in sib:
        if IM.rank_of(rest + [x]) == r0 + 1:
            deletion_ok = M.delete([m]).same_as(isotropic_minor(IM, [x]).restrict(rest))
            break
    return {"contraction": contraction_ok, "triangle": triangle_ok, "deletion": deletion_ok}


# parallels and pendant-twin reductions ------------------------------------------------

def _entry(G: LoopedGraph, e: GroundElement, row) -> int:
    i, r = G.index(e.vertex), G.index(row)
    if e.kind == PHI:
        return int(i == r)
    a = (G.nbr[i] | (G.loops & (1 << i))) >> r & 1
    return a ^ int(e.kind == PSI and i == r)


def _pick(G: LoopedGraph, v, rows_values) -> GroundElement:
    """The unique non-phi element of tau(v) with the given entries."""
    for k in (CHI, PSI):
        e = GroundElement(v, k)
        if all(_entry(G, e, r) == val for r, val in rows_values):
            return e
    raise AssertionError("no element with the requested entries")


def predicted_parallel_pairs(G: LoopedGraph) -> dict:
    """Parallel pairs of M[IAS(G)] predicted by the four structural categories.

    Returns ``{frozenset(pair): set of categories}``.
    """
    out: dict = {}

    def add(pair, cat):
        out.setdefault(frozenset(pair), set()).add(cat)

    for v in G.vertices:
        if G.is_isolated(v):
            add((phi(v), _pick(G, v, [(v, 1)])), 1)
    for v, w in itertools.combinations(G.vertices, 2):
        Nv, Nw = G.neighbors(v), G.neighbors(w)
        if Nv == Nw and Nv:
            add((_pick(G, v, [(v, 0), (w, 0)]), _pick(G, w, [(v, 0), (w, 0)])), 2)
        if Nv | {v} == Nw | {w} and G.adjacent(v, w):
            add((_pick(G, v, [(v, 1), (w, 1)]), _pick(G, w, [(v, 1), (w, 1)])), 3)
        for a, b in ((v, w), (w, v)):
            if G.neighbors(a) == {b}:
                add((phi(b), _pick(G, a, [(a, 0)])), 4)
    return out


def classify_parallels(IM: IsotropicMatroid) -> list:
    """Each non-loop parallel pair with the sorted tuple of categories that explain it."""
    pred = predicted_parallel_pairs(IM.graph)
    out = []
    for a, b in IM.matroid.parallel_pairs():
        out.append(((a, b), tuple(sorted(pred.get(frozenset((a, b)), ())))))
    return out


def isotropic_parallel_reduction(IM: IsotropicMatroid, pair):
    """Contract the phi element of rho's triple and delete the rest of it.

    ``rho`` is the non-phi member of the pair; when both are non-phi the one at
    the later vertex is used.  Returns ``(minor, removed_vertex)``.
    """
    a, b = pair
    if a.kind == PHI and b.kind == PHI:
        raise BothPhi("two phi elements are never parallel")
    if a == b or IM.column(a) != IM.column(b) or IM.column(a) == 0:
        raise NotParallel(f"{a} and {b} are not parallel non-loop elements")
    G = IM.graph
    if a.kind == PHI:
        rho = b
    elif b.kind == PHI:
        rho = a
    else:
        rho = max((a, b), key=lambda e: (G.index(e.vertex), e.kind))
    v = rho.vertex
    return isotropic_minor(IM, [phi(v)]), v


def pendant_twin_reductions(G: LoopedGraph) -> list:
    """All ``(vertex, kind)`` single-vertex reductions; kind is isolated, pendant or twin."""
    out = []
    for v in G.vertices:
        d = G.degree(v)
        if d == 0:
            out.append((v, "isolated"))
            continue
        if d == 1:
            out.append((v, "pendant"))
        Nv = G.neighbors(v)
        for w in G.vertices:
            if w == v:
                continue
            Nw = G.neighbors(w)
            if (Nv == Nw and Nv) or (G.adjacent(v, w) and Nv | {v} == Nw | {w}):
                out.append((v, "twin"))
                break
    return out


_PREFERENCE = {"isolated": 0, "pendant": 1, "twin": 2}


def dh_resolution(G: LoopedGraph):
    """Greedy pendant-twin resolution: the n-1 removed vertices in order, or None."""
    order = []
    cur = G
    while cur.n > 1:
        red = pendant_twin_reductions(cur)
        if not red:
            return None
        v, _ = min(red, key=lambda r: (_PREFERENCE[r[1]], cur.index(r[0])))
        order.append(v)
        cur = cur.delete_vertex(v)
    return order


def dh_resolution_exhaustive(G: LoopedGraph):
    """Backtracking oracle for :func:`dh_resolution` (memoized on vertex subsets)."""
    failed = set()

    def go(H):
        if H.n <= 1:
            return []
        key = frozenset(H.vertices)
        if key in failed:
            return None
        for v in dict.fromkeys(v for v, _ in pendant_twin_reductions(H)):
            rest = go(H.delete_vertex(v))
            if rest is not None:
                return [v] + rest
        failed.add(key)
        return None

    return go(G)


def is_pendant_twin_step(G: LoopedGraph, v) -> bool:
    return any(u == v for u, _ in pendant_twin_reductions(G))


# B(G) -------------------------------------------------------------------------------

def bipartite_double(G: LoopedGraph) -> LoopedGraph:
    """B(G): fundamental graph of M[IAS(G)] at Phi(G), from the block formula."""
    ground = [GroundElement(v, k) for v in G.vertices for k in range(3)]
    edges = []
    for i, v in enumerate(G.vertices):
        for j, w in enumerate(G.vertices):
            a = (G.nbr[j] | (G.loops & (1 << j))) >> i & 1
            if a:
                edges.append((phi(v), chi(w)))
            if a ^ (i == j):
                edges.append((phi(v), psi(w)))
    return LoopedGraph(ground, edges)


def phi_basis(G: LoopedGraph) -> list:
    return [phi(v) for v in G.vertices]


# automorphisms from a pendant vertex -------------------------------------------------

def pendant_automorphisms(G: LoopedGraph, v):
    """The two compatible automorphisms attached to an unlooped pendant ``v`` on an unlooped ``w``.

    ``a`` swaps the triples of v and w via (chi v, phi w)(phi v, chi w)(psi v, psi w);
    ``b`` fixes the triples and applies (phi v, psi v)(chi w, psi w).
    """
    if G.degree(v) != 1:
        raise PreconditionError(f"{v!r} is not a pendant vertex")
    (w,) = G.neighbors(v)
    if G.is_looped(v) or G.is_looped(w):
        raise PreconditionError("pendant automorphisms are stated for unlooped v and w")
    a = CompatibleIso.identity(G.vertices)
    a.vertex_map[v], a.vertex_map[w] = w, v
    a.kind_maps[v] = (CHI, PHI, PSI)
    a.kind_maps[w] = (CHI, PHI, PSI)
    b = CompatibleIso.swaps(G.vertices, {v: [(PHI, PSI)], w: [(CHI, PSI)]})
    return a, b
