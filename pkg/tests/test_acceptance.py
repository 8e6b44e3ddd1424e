"""Acceptance suite: one test per criterion, each printing a single pass/fail line."""

import itertools
import random
import time

import networkx as nx

from conftest import load_shelter
from oracles import adjacency_rows, ias_columns, nx_isomorphic, to_nx

from isomat import load_graph
from isomat.equivalence import (W5, are_locally_equivalent, are_pivot_equivalent, bicycle_check,
                                bip_test, bipartite_transversals, circk_check, circuit_pair_checks,
                                forest_iso, local_orbit, localpivot_check, min_transversal_rank,
                                nullnu_check, theory_equivalence_check, w5_classify)
from isomat.graph import cycle_graph, enumerate_forests, enumerate_graphs, is_bipartite, is_isomorphism
from isomat.isotropic import (CHI, PHI, PSI, CompatibleIso, GroundElement, build_ia, build_ias,
                              dh_resolution, minor_label_fix, predicted_parallel_pairs, transversal_codes,
                              transverse_minor_check)
from isomat.matroid import matroid_isomorphism
from isomat.multimatroid import (aligned_matrix, classes_in_cycle_space, enumerate_binary_matroids,
                                 extract_graph_from_tight_binary_3matroid, is_sheltering, is_tight,
                                 isotropic_shelter, rebuilt_multimatroid, shelters, strongly_binary_witness,
                                 transversal_bases)


def run(capsys, number, limit, fn):
    """Time fn, print one line and fail if fn reports a problem or the time limit is blown."""
    t0 = time.perf_counter()
    try:
        detail = fn()
        ok, err = True, ""
    except AssertionError as e:
        ok, detail, err = False, "", str(e)
    dt = time.perf_counter() - t0
    if ok and dt > limit:
        ok, err = False, f"took {dt:.1f}s, limit {limit}s"
    with capsys.disabled():
        print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'} ({dt:.2f}s) {detail}{err}")
    assert ok, err


def graphs_upto(n, loops=False):
    return [G for k in range(1, n + 1) for G in enumerate_graphs(k, loops)]


def el(text):
    """'phi1' style label to a ground element; digits are shifted to 0-based, letters a..e to 0..4."""
    for name, kind in (("phi", PHI), ("chi", CHI), ("psi", PSI)):
        if text.startswith(name):
            v = text[len(name):]
            return GroundElement(int(v) - 1 if v.isdigit() else "abcde".index(v), kind)
    raise ValueError(text)


# 1 -----------------------------------------------------------------------------------

C5_ORDER = "phi1 psi1 chi1 psi2 chi5 psi3 phi4 chi3 phi2 psi5 psi4 chi2 chi4 phi5 phi3".split()
C5_ROWS = ["110110000101000", "011101011000000", "000101000011101", "000011110110000",
           "011000000110110"]
H_ORDER = [f"{k}{v}" for v in "abcde" for k in ("phi", "chi", "psi")]
H_ROWS = ["101011000000011", "011101011000000", "000011101011011", "000000011101011",
          "011000011011101"]
ZERO_SUMS = [("chi4 phi5 phi3", "phie chie psie"),
             ("psi2 chi3 psi5 chi4", "phib chic phid phie"),
             ("psi2 phi4 phi2 psi5 chi4", "phib phic psic phid phie")]


def test_criterion_01_worked_example(capsys):
    def body():
        C5, H = load_graph("c5.lsg"), load_graph("h.lsg")
        M1, M2 = build_ias(C5).matroid, build_ias(H).matroid
        for M, order, rows in ((M1, C5_ORDER, C5_ROWS), (M2, H_ORDER, H_ROWS)):
            for j, name in enumerate(order):
                col = M.rep.cols[M.pos(el(name))]
                assert [col >> i & 1 for i in range(5)] == [int(r[j]) for r in rows], f"column {name}"
        f = {el(a): el(b) for a, b in zip(C5_ORDER, H_ORDER)}
        assert M1.is_isomorphism(M2, f), "column correspondence is not an isomorphism"
        for a, b in ZERO_SUMS:
            for M, names in ((M1, a), (M2, b)):
                acc = 0
                for x in names.split():
                    acc ^= M.rep.cols[M.pos(el(x))]
                assert acc == 0, f"{names} does not sum to zero"
            assert {f[el(x)] for x in a.split()} == {el(x) for x in b.split()}
        c1 = {frozenset(f[x] for x in c) for c in M1.circuits()}
        c2 = set(M2.circuits())
        assert c1 == c2, "circuit sets differ under the correspondence"
        # the correspondence matches whole triples only at the first vertex
        beta_ok = True
        try:
            CompatibleIso.from_ground_map(f)
        except ValueError:
            beta_ok = False
        assert not beta_ok
        return f"{len(c1)} circuits preserved"

    run(capsys, 1, 1, body)


# 2 -----------------------------------------------------------------------------------

def test_criterion_02_equivalence_conditions(capsys):
    def body():
        groups = [enumerate_graphs(n, True) for n in (1, 2, 3)] + [enumerate_graphs(4)]
        pairs = yes = 0
        for gs in groups:
            for G, H in itertools.combinations_with_replacement(gs, 2):
                r = theory_equivalence_check(G, H)
                pairs += 1
                yes += r["verdict"]
        return f"{pairs} pairs, {yes} equivalent"

    run(capsys, 2, 300, body)


# 3 -----------------------------------------------------------------------------------

def test_criterion_03_w5_class(capsys):
    def body():
        graphs = enumerate_graphs(6)
        assert len(graphs) == 156
        orbit = local_orbit(W5)
        members = 0
        for G in graphs:
            r = w5_classify(G)
            assert r["verdict"] == (G in orbit), "W5 conditions do not match the W5 local class"
            members += r["verdict"]
        r, _ = min_transversal_rank(W5)
        assert r == 4, f"min transversal rank of W5 is {r}"
        return f"156 graphs, {members} in the W5 class, min rank 4"

    run(capsys, 3, 600, body)


# 4 -----------------------------------------------------------------------------------

def test_criterion_04_bipartite_criterion(capsys):
    def body():
        count = yes = 0
        for G in graphs_upto(5):
            r = bip_test(G)
            count += 1
            yes += r["verdict"]
        fan = bip_test(load_graph("fig2.lsg"))
        assert fan["verdict"] and fan["witness"]["ranks"] == [3, 3]
        assert not set(fan["witness"]["T1"]) & set(fan["witness"]["T2"])
        C5 = load_graph("c5.lsg")
        assert not bip_test(C5)["verdict"]
        assert min_transversal_rank(C5)[0] == 3
        return f"{count} graphs, {yes} locally bipartite"

    run(capsys, 4, 300, body)


# 5 -----------------------------------------------------------------------------------

def test_criterion_05_bicycles(capsys):
    def body():
        count = 0
        for G in graphs_upto(5):
            if is_bipartite(G) is None:
                continue
            T1, T2 = bipartite_transversals(G)
            assert bicycle_check(G, T1, T2)["verdict"]
            count += 1
        return f"{count} bipartite graphs"

    run(capsys, 5, 60, body)


# 6 -----------------------------------------------------------------------------------

def test_criterion_06_bouchet_duchamp(capsys):
    def body():
        Q = load_shelter("bouchet_duchamp.mat")
        bases = transversal_bases(Q)
        assert len(bases) == 7, f"{len(bases)} transversal bases"
        for B in bases:
            assert not aligned_matrix(Q, B).is_symmetric()
        assert strongly_binary_witness(Q)["witness"] is None
        assert Q.is_strict()
        assert is_sheltering(Q.matroid, Q.partition)[0]
        return "7 bases, none symmetric"

    run(capsys, 6, 1, body)


# 7 -----------------------------------------------------------------------------------

def gaussian_binomial(n, k):
    num = den = 1
    for i in range(k):
        num *= 2 ** (n - i) - 1
        den *= 2 ** (i + 1) - 1
    return num // den


def test_criterion_07_sheltering_examples(capsys):
    def body():
        Q = load_shelter("two_triangles.mat")
        assert Q.matroid.rank == 4
        assert is_sheltering(Q.matroid, Q.partition)[0]
        Z = Q.multimatroid()
        scanned = hits = 0
        for M in enumerate_binary_matroids(list(Q.ground), 3):
            scanned += 1
            hits += shelters(M, Z)
        assert scanned == gaussian_binomial(6, 3), scanned
        assert hits == 0
        Q1, Q2 = load_shelter("q1.mat"), load_shelter("q2.mat")
        assert not Q1.matroid.same_as(Q2.matroid)
        assert Q1.multimatroid().same_as(Q2.multimatroid())
        return f"{scanned} rank-3 binary matroids, none shelters; Z(Q1) = Z(Q2)"

    run(capsys, 7, 60, body)


# 8 -----------------------------------------------------------------------------------

def test_criterion_08_tight_round_trip(capsys):
    def body():
        count = 0
        for G in graphs_upto(4, loops=True):
            Q = isotropic_shelter(G)
            Z = Q.multimatroid()
            assert is_tight(Z)
            res = extract_graph_from_tight_binary_3matroid(Z)
            assert rebuilt_multimatroid(res, Z.partition).same_as(Z)
            assert classes_in_cycle_space(Q) is None
            count += 1
        return f"{count} graphs"

    run(capsys, 8, 300, body)


# 9 -----------------------------------------------------------------------------------

def test_criterion_09_circuits_and_nullities(capsys):
    def body():
        graphs = graphs_upto(4) + random.Random(7).sample(enumerate_graphs(5), 12)
        for G in graphs:
            assert nullnu_check(G)
            assert circk_check(G)
            assert circuit_pair_checks(G)["verdict"]
        return f"{len(graphs)} graphs"

    run(capsys, 9, 600, body)


# 10 ----------------------------------------------------------------------------------

def test_criterion_10_isotropic_minors(capsys):
    def body():
        graphs = checks = 0
        for G in graphs_upto(4, loops=True):
            graphs += 1
            IM = build_ias(G)
            for e in IM.ground:
                assert minor_label_fix(G, e) is not None, f"minor at {e}"
            for kinds in transversal_codes(G.n):
                T = IM.transversal(kinds)
                for m in T:
                    r = transverse_minor_check(G, T, m)
                    assert all(r.values()), f"{r} at {m}"
                    checks += 1
        return f"{graphs} graphs, {checks} transverse contractions/deletions"

    run(capsys, 10, 300, body)


# 11 ----------------------------------------------------------------------------------

def brute_parallels(G):
    """Pairs of equal nonzero columns of IAS(G), straight from the adjacency matrix."""
    cols = ias_columns(adjacency_rows(G))
    ground = [GroundElement(v, k) for v in G.vertices for k in range(3)]
    out = set()
    for i, j in itertools.combinations(range(len(cols)), 2):
        if cols[i] and cols[i] == cols[j]:
            out.add(frozenset((ground[i], ground[j])))
    return out, {ground[i] for i, c in enumerate(cols) if c == 0}


def check_parallel_automorphisms(G, M, a, b):
    """Both compatible automorphisms attached to a parallel pair in distinct triples."""
    ra = [GroundElement(a.vertex, k) for k in range(3) if k != a.kind]
    rb = [GroundElement(b.vertex, k) for k in range(3) if k != b.kind]
    fixed = {e: e for e in M.ground if e.vertex not in (a.vertex, b.vertex)}
    swap_ok = False
    for rb2 in (rb, rb[::-1]):
        f = dict(fixed)
        f.update({a: b, b: a, ra[0]: rb2[0], rb2[0]: ra[0], ra[1]: rb2[1], rb2[1]: ra[1]})
        swap_ok = swap_ok or M.is_isomorphism(M, f)
    assert swap_ok, f"no triple-swapping automorphism for {a}, {b}"
    f = dict(fixed)
    f.update({a: a, b: b, ra[0]: ra[1], ra[1]: ra[0], rb[0]: rb[1], rb[1]: rb[0]})
    assert M.is_isomorphism(M, f), f"no fixing automorphism for {a}, {b}"


def is_cograph(G):
    H = to_nx(G)
    P4 = nx.path_graph(4)
    return not any(nx.is_isomorphic(H.subgraph(S), P4) for S in itertools.combinations(H.nodes, 4))


def test_criterion_11_parallels_and_forests(capsys):
    def body():
        looped = graphs_upto(5, loops=True)
        for G in looped:
            M = build_ias(G).matroid
            assert not M.coloops(), "coloop found"
            iso = [v for v in G.vertices if G.is_isolated(v)]
            for c in M.series_classes():
                if len(c) > 1:
                    assert len(c) == 2 and c[0].vertex == c[1].vertex and c[0].vertex in iso
            par, zero = brute_parallels(G)
            expect_loops = {GroundElement(v, PSI if G.is_looped(v) else CHI) for v in iso}
            assert set(M.loops()) == zero == expect_loops
            assert set(predicted_parallel_pairs(G)) == par, "parallel categories vs brute force"
            for pair in par:
                a, b = sorted(pair)
                if a.vertex != b.vertex:
                    check_parallel_automorphisms(G, M, a, b)
        forests = [F for n in range(1, 7) for F in enumerate_forests(n)]
        rng = random.Random(11)
        pairs = 0
        for F1, F2 in itertools.product(forests, repeat=2):
            if F1.n != F2.n:
                continue
            perm = list(F2.vertices)
            rng.shuffle(perm)
            F2r = F2.relabel(dict(zip(F2.vertices, perm)))
            f = forest_iso(F1, F2r)
            assert (f is not None) == nx_isomorphic(F1, F2r)
            if f is not None:
                assert is_isomorphism(F1, F2r, f)
            pairs += 1
        cographs = [G for G in graphs_upto(5) if is_cograph(G)]
        for G in forests + cographs:
            assert dh_resolution(G) is not None
        for G in (cycle_graph(5), cycle_graph(6)):
            assert dh_resolution(G) is None
        return f"{len(looped)} looped graphs, {pairs} forest pairs, {len(cographs)} cographs"

    run(capsys, 11, 600, body)


# 12 ----------------------------------------------------------------------------------

def test_criterion_12_pivots_of_bipartite_doubles(capsys):
    def body():
        pairs = 0
        for n in range(1, 5):
            gs = enumerate_graphs(n)
            for G, H in itertools.combinations_with_replacement(gs, 2):
                localpivot_check(G, H)
                pairs += 1
        C6, C3C3 = load_graph("c6.lsg"), load_graph("2c3.lsg")
        M1, _ = build_ia(C6)
        M2, _ = build_ia(C3C3)
        assert matroid_isomorphism(M1, M2) is not None
        assert not are_pivot_equivalent(C6, C3C3)
        assert not are_locally_equivalent(C6, C3C3)
        return f"{pairs} pairs; C6/2C3 matroids isomorphic, graphs not pivot equivalent"

    run(capsys, 12, 600, body)
