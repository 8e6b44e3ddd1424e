import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import span, span_rank
from isomat.errors import IndexMismatch, ParseError, SingularPivot
from isomat.gf2 import (BitVector, Gf2Matrix, format_matrix, in_span, invert_square, nullspace_basis,
                        parse_matrix, principal_pivot_transform, rank, rank_of_ints, rref)
from isomat.graph import adjacency_matrix, cycle_graph
from isomat.isotropic import build_ias, chi, phi, psi


def matrices(max_rows=5, max_cols=7):
    return st.integers(1, max_rows).flatmap(lambda r: st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.integers(0, (1 << r) - 1), min_size=c, max_size=c).map(
            lambda cols: Gf2Matrix(range(r), range(c), cols))))


@st.composite
def symmetric_zero_diag(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    rows = [[0] * n for _ in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        rows[i][j] = rows[j][i] = draw(st.integers(0, 1))
    return Gf2Matrix.from_rows(rows)


def ias_c5():
    return build_ias(cycle_graph(5)).matroid.rep


def test_rank_examples():
    assert rank(Gf2Matrix.identity(range(5))) == 5
    assert rank(Gf2Matrix.zeros(range(3), range(3))) == 0
    assert rank(adjacency_matrix(cycle_graph(5))) == 4


def test_rref_examples():
    I = Gf2Matrix.identity(range(4))
    R, piv = rref(I)
    assert R == I and piv == [0, 1, 2, 3]
    M = Gf2Matrix.from_rows([[1, 1, 0], [0, 0, 1]])
    assert rref(M)[1] == [0, 2]
    M = ias_c5()
    phis = [phi(v) for v in range(5)]
    _, piv = rref(M.select_columns(phis + [e for e in M.col_labels if e not in phis]))
    assert piv == phis


def test_in_span_examples():
    M = ias_c5()
    zero = BitVector(M.row_labels)
    assert in_span(M, zero) == set()
    assert in_span(M, M.column(psi(2))) == {psi(2)}
    sub = M.select_columns([phi(v) for v in range(5)])
    assert in_span(sub, M.column(chi(0))) == {phi(1), phi(4)}
    with pytest.raises(IndexMismatch):
        in_span(M, BitVector(range(7)))


def test_nullspace_examples():
    assert nullspace_basis(Gf2Matrix.identity(range(3))) == []
    M = ias_c5()
    basis = nullspace_basis(M)
    assert len(basis) == 10
    vecs = span(b.bits for b in basis)
    for v in range(5):
        assert BitVector.from_support(M.col_labels, [phi(v), chi(v), psi(v)]).bits in vecs


def test_ppt_examples():
    A = adjacency_matrix(cycle_graph(5))
    assert principal_pivot_transform(A, []) == A
    with pytest.raises(SingularPivot):
        principal_pivot_transform(A, [0])
    B = principal_pivot_transform(A, [0, 1])
    assert principal_pivot_transform(B, [0, 1]) == A


def test_ppt_change_of_basis():
    # (I | A) on labels x_v, y_v; swapping the x and y labels on X gives (I | A*X) up to row operations
    A = adjacency_matrix(cycle_graph(5))
    X = {0, 1}
    B = principal_pivot_transform(A, X)
    n = 5

    def cols(M):
        return {("x", v): 1 << v for v in range(n)} | {("y", v): M.cols[v] for v in range(n)}

    before = cols(A)
    after = {}
    for (side, v), c in cols(B).items():
        if v in X:
            side = "y" if side == "x" else "x"
        after[side, v] = c
    labels = sorted(before)
    for k in range(len(labels) + 1):
        for S in itertools.combinations(labels, k):
            assert span_rank(before[s] for s in S) == span_rank(after[s] for s in S)


@given(matrices())
def test_rank_matches_span_oracle(M):
    assert rank(M) == span_rank(M.cols)
    assert rank(M) == rank(M.transpose())


@given(matrices(), st.data())
def test_row_operations_preserve_subset_ranks(M, data):
    if len(M.row_labels) < 2:
        return
    a, b = data.draw(st.lists(st.sampled_from(M.row_labels), min_size=2, max_size=2, unique=True))
    N = M.add_row(a, b)
    for k in range(len(M.col_labels) + 1):
        for S in itertools.combinations(M.col_labels, k):
            assert rank(M.select_columns(S)) == rank(N.select_columns(S))


@given(matrices(), st.integers(0, 31))
def test_in_span_consistent_with_rank(M, bits):
    v = BitVector(M.row_labels, bits & ((1 << len(M.row_labels)) - 1))
    sol = in_span(M, v)
    inside = rank_of_ints(list(M.cols) + [v.bits]) == rank(M)
    assert (sol is not None) == inside
    if sol is not None:
        acc = 0
        for c in sol:
            acc ^= M.column(c).bits
        assert acc == v.bits


@given(matrices())
def test_nullspace_basis(M):
    basis = nullspace_basis(M)
    assert len(basis) == len(M.col_labels) - rank(M)
    assert rank_of_ints(b.bits for b in basis) == len(basis)
    for b in basis:
        acc = 0
        for c in b.support():
            acc ^= M.column(c).bits
        assert acc == 0


@given(symmetric_zero_diag(), st.data())
def test_ppt_preserves_symmetric_zero_diagonal(A, data):
    X = data.draw(st.sets(st.sampled_from(A.row_labels)))
    try:
        B = principal_pivot_transform(A, X)
    except SingularPivot:
        return
    assert B.is_symmetric()
    assert all(B.entry(v, v) == 0 for v in B.row_labels)
    assert principal_pivot_transform(B, X) == A


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.integers(0, (1 << n) - 1), min_size=n, max_size=n)))
def test_invert_square(rows):
    n = len(rows)
    inv = invert_square(rows, n)
    assert (inv is None) == (rank_of_ints(rows) < n)
    if inv is not None:
        for i in range(n):
            acc = 0
            for j in range(n):
                if inv[i] >> j & 1:
                    acc ^= rows[j]
            assert acc == 1 << i


@given(st.lists(st.integers(0, 255)), st.lists(st.integers(0, 255)))
def test_bitvector_addition(a, b):
    labels = list(range(8))
    u = BitVector.from_support(labels, set(a) & set(labels))
    w = BitVector.from_support(labels, set(b) & set(labels))
    assert (u + u).is_zero()
    assert set((u + w).support()) == set(u.support()) ^ set(w.support())


def test_matrix_text_round_trip():
    M = ias_c5()
    text = format_matrix(Gf2Matrix(range(5), range(15), M.cols))
    N, extra = parse_matrix(text)
    assert N.cols == M.cols and extra == {}
    with pytest.raises(ParseError):
        parse_matrix("")
    with pytest.raises(ParseError):
        parse_matrix("rows=2 cols=2\n10\n")
