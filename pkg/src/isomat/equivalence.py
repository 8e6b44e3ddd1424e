"""Local and pivot equivalence: orbit searches and executable equivalence checks.

Orbits are explored breadth first.  Each node is keyed by its canonical form
(or by its exact labeled key in labeled mode) and remembers the labeled graph
actually reached from the start together with the move sequence that reached it.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .config import get_cap
from .errors import CapExceeded, HypothesisNotMet, NotABasis, NotAForest, NotATransversal, WrongOrder
from .gf2 import popcount
from .graph import (GraphMove, LoopedGraph, canonical_form, is_bipartite,
                    is_forest, is_isomorphism, max_stable_size, wheel_graph)
from .isotropic import (CHI, PHI, PSI, CompatibleIso, GroundElement, IsotropicMatroid,
                        bipartite_double, build_ias, compatible_isomorphism, induced_iso,
                        neighborhood_circuit, pendant_automorphisms, transversal_codes,
                        transversal_mask, transverse_circuit_masks)
from .matroid import BinaryMatroid, matroid_isomorphism


def report(condition_id: str, verdict: bool, witness=None, moves=None, cap_hit: bool = False, **extra) -> dict:
    """A JSON-ready report in the common schema."""
    out = {"condition_id": condition_id, "verdict": bool(verdict), "cap_hit": bool(cap_hit)}
    if witness is not None:
        out["witness"] = witness
    if moves is not None:
        out["move_sequence"] = [str(m) for m in moves]
    out.update(extra)
    return out


# orbits ----------------------------------------------------------------------------

@dataclass
class OrbitReport:
    start: LoopedGraph
    generator_moves: frozenset
    graphs: dict = field(default_factory=dict)    # key -> labeled graph reached from start
    moves: dict = field(default_factory=dict)     # key -> tuple of GraphMove
    cap_hit: bool = False
    labeled: bool = False

    @property
    def representatives(self) -> set:
        return set(self.graphs)

    @property
    def size(self) -> int:
        return len(self.graphs)

    def key_of(self, G: LoopedGraph):
        return G.key() if self.labeled else canonical_form(G)

    def __contains__(self, G: LoopedGraph) -> bool:
        return self.key_of(G) in self.graphs

    def witness(self, G: LoopedGraph):
        """Move sequence from the start to a graph equal (or isomorphic) to G, or None."""
        return self.moves.get(self.key_of(G))

    def to_json(self) -> dict:
        return {"size": self.size, "generator_moves": sorted(self.generator_moves), "cap_hit": self.cap_hit,
                "representatives": sorted(k.decode() if isinstance(k, bytes) else str(k) for k in self.graphs)}


def _moves_for(H: LoopedGraph, kinds) -> list:
    out = []
    for v in H.vertices:
        if "loop" in kinds:
            out.append(GraphMove.loop(v))
        if "simple" in kinds:
            out.append(GraphMove.simple(v))
    if "pivot" in kinds:
        for v, w in H.edges():
            if not H.is_looped(v) and not H.is_looped(w):
                out.append(GraphMove.pivot(v, w))
    return out


def _orbit(G: LoopedGraph, kinds, cap=None, labeled=False, strict=False, n_cap=None) -> OrbitReport:
    n_cap = get_cap("n") if n_cap is None else n_cap
    if G.n > n_cap:
        raise CapExceeded(f"orbit search on {G.n} vertices exceeds the cap n <= {n_cap}")
    cap = get_cap("orbit") if cap is None else cap
    rep = OrbitReport(G, frozenset(kinds), labeled=labeled)
    k0 = rep.key_of(G)
    rep.graphs[k0] = G
    rep.moves[k0] = ()
    queue = deque([k0])
    while queue:
        k = queue.popleft()
        H = rep.graphs[k]
        for m in _moves_for(H, kinds):
            H2 = m.apply(H)
            k2 = rep.key_of(H2)
            if k2 in rep.graphs:
                continue
            if len(rep.graphs) >= cap:
                rep.cap_hit = True
                if strict:
                    raise CapExceeded(f"orbit exceeds {cap} representatives", partial=rep)
                return rep
            rep.graphs[k2] = H2
            rep.moves[k2] = rep.moves[k] + (m,)
            queue.append(k2)
    return rep


def local_orbit(G: LoopedGraph, cap=None, labeled=False, strict=False) -> OrbitReport:
    """Closure under loop complements and simple local complements."""
    return _orbit(G, ("loop", "simple"), cap, labeled, strict)


def simple_orbit(G: LoopedGraph, cap=None, strict=False) -> OrbitReport:
    """Simple-lc closure of the loopless part of G.

    Loops never influence the simple part of a local complement, so this is the
    projection of the local orbit onto loopless graphs; graph-side scans of
    degrees, stable sets and distances only need it.
    """
    return _orbit(G.simple(), ("simple",), cap, False, strict)


def pivot_orbit(G: LoopedGraph, cap=None, strict=False, n_cap=None) -> OrbitReport:
    return _orbit(G, ("pivot",), cap, False, strict, n_cap)


_SIMPLE_CACHE: dict = {}


def cached_simple_orbit(G: LoopedGraph) -> OrbitReport:
    """:func:`simple_orbit` memoized across all members of an orbit."""
    key = canonical_form(G.simple())
    rep = _SIMPLE_CACHE.get(key)
    if rep is None:
        rep = simple_orbit(G, strict=True)
        for k in rep.graphs:
            _SIMPLE_CACHE[k] = rep
    return rep


def local_equivalence_witness(G: LoopedGraph, H: LoopedGraph, up_to_iso=True, cap=None):
    """Moves carrying G to (a copy of) H, or None."""
    if G.n != H.n:
        return None
    if not up_to_iso and set(G.vertices) != set(H.vertices):
        return None
    rep = local_orbit(G, cap, labeled=not up_to_iso, strict=True)
    return rep.witness(H)


def are_locally_equivalent(G: LoopedGraph, H: LoopedGraph, up_to_iso=True, cap=None) -> bool:
    return local_equivalence_witness(G, H, up_to_iso, cap) is not None


def are_pivot_equivalent(G: LoopedGraph, H: LoopedGraph, cap=None, n_cap=None) -> bool:
    if G.n != H.n:
        return False
    return H in pivot_orbit(G, cap, strict=True, n_cap=n_cap)


def theory_equivalence_check(G: LoopedGraph, H: LoopedGraph) -> dict:
    """Local equivalence, matroid isomorphism and compatible isomorphism must agree."""
    moves = local_equivalence_witness(G, H)
    iso = matroid_isomorphism(build_ias(G).matroid, build_ias(H).matroid) if G.n == H.n else None
    beta = compatible_isomorphism(G, H)
    verdicts = [moves is not None, iso is not None, beta is not None]
    assert len(set(verdicts)) == 1, f"equivalence conditions disagree: {verdicts}"
    return report("iso-equivalence", verdicts[0], moves=moves,
                  witness=beta.to_json() if beta is not None else None,
                  conditions={"local": verdicts[0], "matroid": verdicts[1], "compatible": verdicts[2]})


# transversal scans ------------------------------------------------------------------

def transversal_ranks(IM: IsotropicMatroid) -> dict:
    """``{kinds tuple: rank}`` over all transversals."""
    rank = IM.matroid.rank_mask
    return {k: rank(transversal_mask(k)) for k in transversal_codes(IM.n)}


def min_transversal_rank(G: LoopedGraph):
    ranks = transversal_ranks(build_ias(G))
    k = min(ranks, key=ranks.get)
    return ranks[k], _elements(G, k)


def _elements(G: LoopedGraph, kinds) -> tuple:
    return tuple(GroundElement(v, k) for v, k in zip(G.vertices, kinds))


def _fmt(S) -> list:
    return [str(e) for e in S]


def bipartite_transversals(G: LoopedGraph, parts=None):
    """The two transversals built from a bipartition: phi on V_i, neighborhood circuits off V_i."""
    parts = parts or is_bipartite(G)
    if parts is None:
        raise HypothesisNotMet("graph is not bipartite")
    out = []
    for Vi in parts:
        T = {}
        for v in G.vertices:
            if v in Vi:
                T[v] = GroundElement(v, PHI)
            elif G.is_isolated(v):
                T[v] = GroundElement(v, PSI if G.is_looped(v) else CHI)
            else:
                for e in neighborhood_circuit(G, v):
                    T.setdefault(e.vertex, e)
                T[v] = GroundElement(v, PSI if G.is_looped(v) else CHI)
        assert len(T) == G.n, "neighborhood circuits off V_i only reach V_i"
        out.append(tuple(T[v] for v in G.vertices))
    return tuple(out)


def _dual_iso(M1: BinaryMatroid, M2: BinaryMatroid):
    """Isomorphism M1 -> M2* on abstract labels (both matroids relabeled to positions)."""
    if M1.rank != M2.size - M2.rank:
        return None
    a = M1.relabel({g: i for i, g in enumerate(M1.ground)})
    b = M2.dual().relabel({g: i for i, g in enumerate(M2.ground)})
    return matroid_isomorphism(a, b)


def bip_pair_conditions(IM: IsotropicMatroid, T1, T2) -> dict:
    """Conditions 2-4 of the bipartite criterion for one disjoint transversal pair."""
    M = IM.matroid
    r1, r2 = M.rank_of(T1), M.rank_of(T2)
    r12 = M.rank_of(list(T1) + list(T2))
    c4 = r1 + r2 == IM.n and _dual_iso(M.restrict(T1), M.restrict(T2)) is not None
    return {"2": r1 + r2 == IM.n, "3": r12 == r1 + r2, "4": c4}


def bip_test(G: LoopedGraph) -> dict:
    """All four conditions of the bipartite-equivalence criterion, with witnesses."""
    IM = build_ias(G)
    n = G.n
    rank = IM.matroid.rank_mask
    ranks = transversal_ranks(IM)
    found = {"2": None, "3": None, "4": None}
    for k1, r1 in ranks.items():
        for shift in itertools.product((1, 2), repeat=n):
            k2 = tuple((a + s) % 3 for a, s in zip(k1, shift))
            r2 = ranks[k2]
            if found["2"] is None and r1 + r2 == n:
                found["2"] = (k1, k2)
            if found["3"] is None and rank(transversal_mask(k1) | transversal_mask(k2)) == r1 + r2:
                found["3"] = (k1, k2)
            if found["4"] is None and r1 + r2 == n:
                T1, T2 = _elements(G, k1), _elements(G, k2)
                if _dual_iso(IM.matroid.restrict(T1), IM.matroid.restrict(T2)) is not None:
                    found["4"] = (k1, k2)
            if all(found.values()):
                break
        if all(found.values()):
            break
    orbit = cached_simple_orbit(G)
    bip_graph = next((H for H in orbit.graphs.values() if is_bipartite(H) is not None), None)
    verdicts = {"1": bip_graph is not None, **{c: w is not None for c, w in found.items()}}
    assert len(set(verdicts.values())) == 1, f"bipartite criterion disagrees: {verdicts}"
    witness = None
    if found["2"] is not None:
        k1, k2 = found["2"]
        witness = {"T1": _fmt(_elements(G, k1)), "T2": _fmt(_elements(G, k2)),
                   "ranks": [ranks[k1], ranks[k2]],
                   "bipartite_graph": {"vertices": [str(v) for v in bip_graph.vertices],
                                       "edges": [[str(a), str(b)] for a, b in bip_graph.edges()]}}
    return report("bip", verdicts["1"], witness=witness, conditions=verdicts, cap_hit=orbit.cap_hit)


def bicycle_check(G: LoopedGraph, T1, T2) -> dict:
    """Bicycle spaces of M1, M2 and the cycle space of M3, all carried onto V(G)."""
    IM = build_ias(G)
    T1, T2 = tuple(T1), tuple(T2)
    for T in (T1, T2):
        if not IM.is_transversal(T):
            raise NotATransversal(f"{_fmt(T)} is not a transversal")
    if set(T1) & set(T2):
        raise HypothesisNotMet("transversals are not disjoint")
    conds = bip_pair_conditions(IM, T1, T2)
    if not conds["2"]:
        raise HypothesisNotMet("the pair fails the bipartite criterion: ranks do not sum to n")
    T3 = tuple(e for e in IM.ground if e not in set(T1) | set(T2))
    Ms = [IM.matroid.restrict(T).relabel({e: e.vertex for e in T}) for T in (T1, T2, T3)]
    b1, b2 = Ms[0].bicycle_space(), Ms[1].bicycle_space()
    z3 = Ms[2].cycle_space()
    ok = b1 == b2 == z3
    assert ok, "bicycle spaces of M1 and M2 must equal the cycle space of M3"
    return report("bicycle", ok, witness={"dim": z3.dim, "basis": [sorted(map(str, v.support())) for v in z3.vectors()]})


# circuit and nullity corollaries ---------------------------------------------------------

def _orbit_graphs(G: LoopedGraph) -> list:
    return list(cached_simple_orbit(G).graphs.values())


def min_transverse_circuit(G: LoopedGraph):
    IM = build_ias(G)
    circs = transverse_circuit_masks(IM)
    c = min(circs, key=lambda m: (popcount(m), m))
    return popcount(c), IM.matroid.labels(c)


def circuit_sizes(G: LoopedGraph) -> set:
    return {popcount(c) for c in transverse_circuit_masks(build_ias(G))}


def circk_check(G: LoopedGraph) -> bool:
    """Transverse circuit sizes equal 1 + degrees over the local orbit."""
    lhs = circuit_sizes(G)
    rhs = {H.degree(v) + 1 for H in _orbit_graphs(G) for v in H.vertices}
    assert lhs == rhs, f"circuit sizes {sorted(lhs)} vs degrees+1 {sorted(rhs)}"
    return True


def transverse_nullities(G: LoopedGraph) -> set:
    return {G.n - r for r in transversal_ranks(build_ias(G)).values()} - {0}


def nullnu_check(G: LoopedGraph) -> bool:
    """Positive transverse nullities equal positive stable-set sizes over the local orbit."""
    lhs = transverse_nullities(G)
    alpha = max(max_stable_size(H.nbr) for H in _orbit_graphs(G))
    rhs = set(range(1, alpha + 1))
    assert lhs == rhs, f"nullities {sorted(lhs)} vs stable sizes {sorted(rhs)}"
    return True


def _graph_pair_patterns(G: LoopedGraph) -> dict:
    """Degree pairs over the orbit: nonadjacent/no common neighbor, nonadjacent/common, adjacent."""
    apart, shared, adjacent = set(), set(), set()
    diam_big = False
    disconnected = False
    for H in _orbit_graphs(G):
        for i, j in itertools.combinations(range(H.n), 2):
            d = tuple(sorted((popcount(H.nbr[i]) + 1, popcount(H.nbr[j]) + 1)))
            if H.nbr[i] >> j & 1:
                adjacent.add(d)
            elif H.nbr[i] & H.nbr[j]:
                shared.add(d)
            else:
                apart.add(d)
                diam_big = True
        if not H.is_connected():
            disconnected = True
    return {"apart": apart, "shared": shared, "adjacent": adjacent, "diameter_gt_2": diam_big,
            "disconnected": disconnected}


def _matroid_pair_patterns(G: LoopedGraph) -> dict:
    IM = build_ias(G)
    rank = IM.matroid.rank_mask
    circs = transverse_circuit_masks(IM)
    apart, shared = set(), set()
    for kinds in transversal_codes(G.n):
        T = transversal_mask(kinds)
        inside = [c for c in circs if c & ~T == 0]
        if len(inside) < 2:
            continue
        null = G.n - rank(T)
        for c1, c2 in itertools.combinations(inside, 2):
            d = tuple(sorted((popcount(c1), popcount(c2))))
            if c1 & c2:
                if null == 2:
                    shared.add(d)
            else:
                u = c1 | c2
                if not any(c & ~u == 0 and c not in (c1, c2) for c in inside):
                    apart.add(d)
    adjacent = set()
    for c1, c2 in itertools.combinations_with_replacement(circs, 2):
        u = c1 | c2
        counts = [popcount(u >> (3 * i) & 7) for i in range(G.n)]
        if sum(c - 1 for c in counts if c) != 2:
            continue
        opts = [[3 * i + k for k in range(3) if u >> (3 * i + k) & 1] for i in range(G.n) if counts[i]]
        good = 0
        for pick in itertools.product(*opts):
            m = sum(1 << p for p in pick)
            if rank(m) == len(pick):
                good += 1
                if good >= 2:
                    break
        if good >= 2:
            adjacent.add(tuple(sorted((popcount(c1), popcount(c2)))))
    return {"apart": apart, "shared": shared, "adjacent": adjacent, "diameter_gt_2": bool(apart)}


def circuit_pair_checks(G: LoopedGraph) -> dict:
    """Both sides of the four circuit-pair corollaries; raises AssertionError on disagreement."""
    g = _graph_pair_patterns(G)
    m = _matroid_pair_patterns(G)
    results = {}
    for key, cid in (("apart", "disjoint-pair"), ("shared", "intersecting-pair"), ("adjacent", "adjacent-pair")):
        assert g[key] == m[key], f"{cid}: graph side {sorted(g[key])} vs matroid side {sorted(m[key])}"
        results[cid] = sorted(g[key])
    assert g["diameter_gt_2"] == m["diameter_gt_2"], "diameter criterion disagrees"
    results["diameter>2"] = g["diameter_gt_2"]
    return report("circuit-pairs", True, witness=results, disconnected_in_orbit=g["disconnected"])


# the W5 class ------------------------------------------------------------------------------

W5 = wheel_graph(5)


def w5_classify(G: LoopedGraph) -> dict:
    """The five equivalent descriptions of the local equivalence class of W5 (n <= 6)."""
    n = G.n
    if n > 6:
        raise WrongOrder(f"the W5 characterization is stated for n <= 6, got {n}")
    orbit = cached_simple_orbit(G)
    graphs = list(orbit.graphs.values())
    c1 = n == 6 and canonical_form(W5) in orbit.graphs
    c2 = all(H.degree(v) > 2 for H in graphs for v in H.vertices)
    c3 = all(max_stable_size(H.nbr) < n - 3 for H in graphs)
    IM = build_ias(G)
    circs = transverse_circuit_masks(IM)
    min_circ = min(popcount(c) for c in circs)
    min_rank, _ = min(((r, k) for k, r in transversal_ranks(IM).items()))
    c4 = min_circ > 3
    c5 = min_rank > 3
    verdicts = {"1": c1, "2": c2, "3": c3, "4": c4, "5": c5}
    assert len(set(verdicts.values())) == 1, f"W5 conditions disagree: {verdicts}"
    return report("w5", c1, conditions=verdicts, min_transverse_circuit=min_circ,
                  min_transversal_rank=min_rank, cap_hit=orbit.cap_hit)


def localpivot_check(G: LoopedGraph, H: LoopedGraph) -> dict:
    """Local equivalence of G, H against pivot equivalence of B(G), B(H)."""
    lhs = are_locally_equivalent(G, H)
    # B(G) has 3n vertices; the vertex cap applies to G itself
    rhs = G.n == H.n and are_pivot_equivalent(bipartite_double(G), bipartite_double(H), n_cap=3 * get_cap("n"))
    assert lhs == rhs, "local equivalence and pivot equivalence of B(G) disagree"
    return report("localpivot", lhs, conditions={"local": lhs, "pivot_B": rhs})


# forests -----------------------------------------------------------------------------

def _restrict(beta: CompatibleIso, v) -> CompatibleIso:
    vm = {u: w for u, w in beta.vertex_map.items() if u != v}
    km = {u: p for u, p in beta.kind_maps.items() if u != v}
    return CompatibleIso(vm, km)


def _group(gens, vertices):
    """Closure of a few compatible automorphisms under composition."""
    elems = [CompatibleIso.identity(vertices)]
    frontier = list(elems)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x.then(g)
                if y not in elems:
                    elems.append(y)
                    nxt.append(y)
        frontier = nxt
    return elems


def _peel(G: LoopedGraph, H: LoopedGraph, beta: CompatibleIso) -> dict:
    if G.n == 0:
        return {}
    iso = [v for v in G.vertices if G.is_isolated(v)]
    if iso:
        v = iso[0]
        bv = beta.vertex_map[v]
        assert H.is_isolated(bv), "a loop of the isotropic matroid must map to a loop"
        out = _peel(G.delete_vertex(v), H.delete_vertex(bv), _restrict(beta, v))
        out[v] = bv
        return out
    v = next(u for u in G.vertices if G.degree(u) == 1)
    a, b = pendant_automorphisms(G, v)
    for alpha in _group([a, b], G.vertices):
        gamma = alpha.then(beta)
        if gamma(GroundElement(v, PHI)).kind == PHI:
            break
    else:
        raise AssertionError("no pendant automorphism aligns phi(v)")
    bv = gamma.vertex_map[v]
    out = _peel(G.delete_vertex(v), H.delete_vertex(bv), _restrict(gamma, v))
    out[v] = bv
    return out


def forest_iso(F1: LoopedGraph, F2: LoopedGraph, beta: CompatibleIso | None = None):
    """A graph isomorphism F1 -> F2 recovered from an isomorphism of isotropic matroids, or None.

    Without ``beta`` a compatible isomorphism is first found by search.  The
    recovered bijection agrees with beta at every vertex where beta sends phi to phi.
    """
    for F in (F1, F2):
        if not is_forest(F):
            raise NotAForest("input is not a forest")
        if F.loops:
            raise NotAForest("forests here are loopless")
    if F1.n != F2.n:
        return None
    if beta is None:
        beta = compatible_isomorphism(F1, F2)
        if beta is None:
            return None
    f = _peel(F1, F2, beta)
    assert is_isomorphism(F1, F2, f), "peeling must produce a graph isomorphism"
    return f


# stable transversal form -------------------------------------------------------------

def stable_transversal_form(G: LoopedGraph, T, B):
    """Rewrite G by local complements until the basis B maps into phi elements.

    Returns ``(H, beta, moves)`` where beta is the induced isomorphism; the image
    of V - V_B is stable in H and beta(T) consists of phi elements on V_B and
    neighborhood circuits of the other vertices.
    """
    IM = build_ias(G)
    T = tuple(T)
    B = tuple(B)
    if not IM.is_transversal(T):
        raise NotATransversal(f"{_fmt(T)} is not a transversal")
    sub = IM.matroid.restrict(T)
    if not set(B) <= set(T) or not sub.is_basis(B):
        raise NotABasis(f"{_fmt(B)} is not a basis of the transverse matroid")
    moves = [GraphMove.loop(v) for v in G.vertices if G.is_looped(v)]
    H, beta = G, CompatibleIso.identity(G.vertices)
    for m in moves:
        H, b = induced_iso(H, m)
        beta = beta.then(b)

    def step(move):
        nonlocal H, beta
        H, b = induced_iso(H, move)
        beta = beta.then(b)
        moves.append(move)

    def non_phi():
        return [beta(e) for e in B if beta(e).kind != PHI]

    count = len(non_phi())
    while count:
        img = non_phi()
        J = {e.vertex: e.kind for e in (beta(x) for x in B)}
        psis = [e.vertex for e in img if e.kind == PSI]
        if psis:
            step(GraphMove.simple(psis[0]))
        else:
            chis = [e.vertex for e in img]
            pair = next(((v, w) for v in chis for w in chis if v != w and H.adjacent(v, w)), None)
            if pair is not None:
                step(GraphMove.simple(pair[0]))
            else:
                w = chis[0]
                v = next(u for u in H.neighbors(w) if J.get(u) != PHI)
                step(GraphMove.simple(v))
            # the chosen chi turned into a psi; move it onto phi
            psis = [e.vertex for e in non_phi() if e.kind == PSI]
            step(GraphMove.simple(psis[0]))
        new = len(non_phi())
        assert new < count, "the count of non-phi basis images must drop"
        count = new
    VB = {beta.vertex_map[e.vertex] for e in B}
    rest = [v for v in H.vertices if v not in VB]
    assert all(not H.adjacent(x, y) for x, y in itertools.combinations(rest, 2)), "image of V - V_B is stable"
    image = {beta(e) for e in T}
    expected = {GroundElement(v, PHI) for v in VB}
    for x in rest:
        expected |= neighborhood_circuit(H, x) if not H.is_isolated(x) else {GroundElement(x, CHI)}
    assert image == expected, "image of T has the stable-set form"
    return H, beta, moves


def allphi_basis_graph(G: LoopedGraph, B, C) -> LoopedGraph:
    """The graph read off fundamental circuits: v ~ w iff B(w) lies in the circuit of C(v) at B."""
    IM = build_ias(G)
    Bv = {e.vertex: e for e in B}
    Cv = {e.vertex: e for e in C}
    if set(Bv) != set(G.vertices) or set(Cv) != set(G.vertices) or set(B) & set(C):
        raise NotATransversal("B and C must be disjoint transversals")
    if not IM.matroid.is_basis(B):
        raise NotABasis("B is not a basis")
    edges = []
    for v, w in itertools.combinations(G.vertices, 2):
        circ = IM.matroid.fundamental_circuit(Cv[v], list(B))
        if Bv[w] in circ:
            edges.append((v, w))
    return LoopedGraph(G.vertices, edges)
