import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from conftest import load_shelter
from oracles import brute_circuits, brute_matroid_isomorphic, span, span_rank, to_nx
from isomat.errors import ElementInBasis, NotABasis
from isomat.gf2 import Gf2Matrix
from isomat.graph import LoopedGraph, cycle_graph, enumerate_graphs, is_bipartite
from isomat.isotropic import build_ia, build_ias, chi, phi, psi
from isomat.matroid import BinaryMatroid, brute_force_isomorphism, direct_sum, matroid_isomorphism


@st.composite
def binary_matroids(draw, max_rows=4, max_cols=7):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    cols = draw(st.lists(st.integers(0, (1 << r) - 1), min_size=c, max_size=c))
    return BinaryMatroid(Gf2Matrix(range(r), range(c), cols))


def positions(M, S):
    return frozenset(M.pos(x) for x in S)


def test_rank_examples(c5):
    M = BinaryMatroid.from_rows([[1, 1, 0], [0, 0, 1]])
    assert M.rank_of([]) == 0
    assert M.rank_of([0, 1]) == 1
    IM = build_ias(c5)
    assert IM.rank_of([phi(v) for v in range(5)]) == 5


def test_circuit_examples():
    assert BinaryMatroid.from_rows([[1, 0], [0, 1]]).circuits() == set()
    Q = load_shelter("two_triangles.mat")
    assert Q.matroid.circuits() == {frozenset({"ap", "bp", "cp"}), frozenset({"a", "b", "c"})}
    for n in range(1, 5):
        for G in enumerate_graphs(n, True):
            circs = build_ias(G).matroid.circuits()
            for v in G.vertices:
                if not G.is_isolated(v):
                    assert frozenset({phi(v), chi(v), psi(v)}) in circs


def test_fundamental_circuits_of_example_e():
    M = load_shelter("bouchet_duchamp.mat").matroid
    B = ["a2", "b2", "c1"]
    assert M.fundamental_circuit("a1", B) == {"a1", "a2", "b2", "c1"}
    assert M.fundamental_circuit("b1", B) == {"b1", "b2", "c1"}
    assert M.fundamental_circuit("c2", B) == {"c2", "a2", "b2"}
    with pytest.raises(ElementInBasis):
        M.fundamental_circuit("a2", B)
    with pytest.raises(NotABasis):
        M.fundamental_circuit("a1", ["a2", "b2"])


def test_loops_parallels_series():
    M = BinaryMatroid.from_rows([[1, 1, 0, 0], [0, 0, 0, 1]])
    assert M.loops() == [2]
    assert (0, 1) in M.parallel_pairs()
    assert M.coloops() == [3]
    iso = LoopedGraph([0])
    IM = build_ias(iso)
    assert IM.matroid.loops() == [chi(0)]
    for n in range(1, 5):
        for G in enumerate_graphs(n, True):
            assert build_ias(G).matroid.coloops() == []


def test_dual_examples(c5):
    I = BinaryMatroid.from_rows([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert I.dual().rank == 0
    M, _ = build_ia(c5)
    assert M.dual().dual().same_as(M)
    a = M.relabel({g: i for i, g in enumerate(M.ground)})
    b = M.dual().relabel({g: i for i, g in enumerate(M.ground)})
    assert matroid_isomorphism(a, b) is not None


def test_fundamental_graph_examples():
    I = BinaryMatroid.from_rows([[1, 0], [0, 1]])
    assert I.fundamental_graph([0, 1]).num_edges() == 0
    for n in range(1, 5):
        for G in enumerate_graphs(n, True):
            M = build_ias(G).matroid
            B = M.some_basis()
            assert M.is_connected() == M.fundamental_graph(B).is_connected()
    for G in enumerate_graphs(5):
        if is_bipartite(G) is None:
            continue
        M, _ = build_ia(G)
        FG = M.fundamental_graph([phi(v) for v in G.vertices])
        two = nx.disjoint_union(to_nx(G), to_nx(G))
        assert nx.is_isomorphic(to_nx(FG), two)


def test_isomorphism_examples(c5):
    M = build_ias(c5).matroid
    f = matroid_isomorphism(M, M)
    assert f is not None and M.is_isomorphism(M, f)
    C6 = cycle_graph(6)
    C3C3 = LoopedGraph(range(6), [(0, 2), (2, 4), (0, 4), (1, 3), (3, 5), (1, 5)])
    assert matroid_isomorphism(build_ia(C6)[0], build_ia(C3C3)[0]) is not None


def test_components():
    I = BinaryMatroid.from_rows([[1, 0], [0, 1]])
    assert len(I.components()) == 2
    assert build_ias(cycle_graph(5)).matroid.is_connected()
    C3C3 = LoopedGraph(range(6), [(0, 2), (2, 4), (0, 4), (1, 3), (3, 5), (1, 5)])
    comps = build_ias(C3C3).matroid.components()
    assert sorted(sorted({e.vertex for e in c}) for c in comps) == [[0, 2, 4], [1, 3, 5]]


def test_cycle_and_bicycle_examples():
    I = BinaryMatroid.from_rows([[1, 0], [0, 1]])
    assert I.cycle_space().dim == 0
    assert I.bicycle_space().dim == 0


@given(binary_matroids())
def test_circuits_match_subset_oracle(M):
    expected = brute_circuits(M.rep.cols)
    got = {positions(M, C) for C in M.circuits()}
    assert got == expected


@given(binary_matroids())
def test_rank_matches_oracle(M):
    for k in range(M.size + 1):
        for S in itertools.combinations(M.ground, k):
            assert M.rank_of(S) == span_rank(M.rep.cols[M.pos(x)] for x in S)


@given(binary_matroids())
def test_circuit_elimination(M):
    circs = list(M.circuits())
    for C1, C2 in itertools.combinations(circs, 2):
        for x in C1 & C2:
            U = (C1 | C2) - {x}
            assert any(C <= U for C in circs)


@given(binary_matroids())
def test_dual_bases_are_complements(M):
    D = M.dual()
    assert D.rank == M.size - M.rank
    for B in itertools.combinations(M.ground, M.rank):
        comp = [g for g in M.ground if g not in B]
        assert M.is_basis(B) == D.is_basis(comp)


@given(binary_matroids())
def test_cycle_space_determines_matroid(M):
    Z = M.cycle_space()
    # rebuild from the cycle space: the columns are the rows of a cycle space basis, transposed
    basis = [v.bits for v in Z.vectors()]
    cocycles = [x for x in range(1 << M.size) if all(bin(x & z).count("1") % 2 == 0 for z in basis)]
    cols = [sum(((c >> j) & 1) << i for i, c in enumerate(cocycles)) for j in range(M.size)]
    R = BinaryMatroid(Gf2Matrix(range(len(cocycles)), M.ground, cols))
    for k in range(M.size + 1):
        for S in itertools.combinations(M.ground, k):
            assert M.rank_of(S) == R.rank_of(S)


@given(binary_matroids())
def test_bicycle_space_is_cycle_meet_cocycle(M):
    cyc = span(v.bits for v in M.cycle_space().vectors())
    cocyc = span(v.bits for v in M.cocycle_space().vectors())
    bic = span(v.bits for v in M.bicycle_space().vectors())
    assert bic == cyc & cocyc


@settings(max_examples=40)
@given(binary_matroids(max_rows=3, max_cols=6), st.randoms())
def test_isomorphism_matches_brute_force(M, rnd):
    perm = list(range(M.size))
    rnd.shuffle(perm)
    cols = [M.rep.cols[perm[j]] for j in range(M.size)]
    N = BinaryMatroid(Gf2Matrix(M.rep.row_labels, M.ground, cols))
    f = matroid_isomorphism(M, N)
    assert f is not None and M.is_isomorphism(N, f)
    other = BinaryMatroid(Gf2Matrix(M.rep.row_labels, M.ground, [c ^ 1 if j == 0 else c for j, c in
                                                                  enumerate(M.rep.cols)]))
    expected = brute_matroid_isomorphic(M.rep.cols, other.rep.cols)
    assert (matroid_isomorphism(M, other) is not None) == expected
    assert (brute_force_isomorphism(M, other) is not None) == expected


@given(binary_matroids(), binary_matroids())
def test_direct_sum_ranks(M1, M2):
    M2 = M2.relabel({g: ("b", g) for g in M2.ground})
    S = direct_sum(M1, M2)
    assert S.rank == M1.rank + M2.rank
    assert len(S.components()) == len(M1.components()) + len(M2.components())


def test_text_round_trip(c5):
    M = build_ias(c5).matroid.relabel({g: str(g).replace(":", "") for g in build_ias(c5).ground})
    N, _ = BinaryMatroid.from_text(M.to_text())
    assert N.same_as(M)
