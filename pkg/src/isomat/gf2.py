"""Exact GF(2) vectors and matrices with labeled rows and columns.

Storage is dense Python-int bitsets: a column is an int whose bit ``i`` is the
entry in row ``i`` (rows follow ``row_labels`` order).  All values are immutable.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Sequence

from .errors import IndexMismatch, ParseError, SingularPivot

Label = Hashable


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits_of(x: int):
    """Yield the positions of set bits of ``x`` in increasing order."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def rank_of_ints(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of a collection of int-encoded vectors."""
    basis: list[int] = []  # kept sorted by decreasing leading bit
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return len(basis)


def reduce_rows(rows: Sequence[int], ncols: int):
    """Reduced row echelon form of int-encoded rows (bit ``j`` = column ``j``).

    Pivots are chosen at the first column, in index order, with a nonzero entry
    among the not-yet-pivoted rows.  Returns ``(rows, pivot_columns)``; the
    output keeps the original number of rows with zero rows at the bottom.
    """
    work = list(rows)
    pivots: list[int] = []
    r = 0
    m = len(work)
    for j in range(ncols):
        if r == m:
            break
        bit = 1 << j
        for i in range(r, m):
            if work[i] & bit:
                break
        else:
            continue
        work[r], work[i] = work[i], work[r]
        pr = work[r]
        for i in range(m):
            if i != r and work[i] & bit:
                work[i] ^= pr
        pivots.append(j)
        r += 1
    return work, pivots


def transpose_ints(vectors: Sequence[int], length: int) -> list[int]:
    """Turn ``len(vectors)`` columns of ``length`` bits into ``length`` rows."""
    out = [0] * length
    for j, v in enumerate(vectors):
        bit = 1 << j
        for i in bits_of(v):
            out[i] |= bit
    return out


def nullspace_ints(columns: Sequence[int], nrows: int) -> list[int]:
    """Basis of ``{x : sum of columns selected by x = 0}``; x is int over column positions."""
    ncols = len(columns)
    rows, pivots = reduce_rows(transpose_ints(columns, nrows), ncols)
    pivot_row = {c: i for i, c in enumerate(pivots)}
    basis = []
    for f in range(ncols):
        if f in pivot_row:
            continue
        x = 1 << f
        for c, i in pivot_row.items():
            if rows[i] >> f & 1:
                x |= 1 << c
        basis.append(x)
    return basis


def invert_square(rows: Sequence[int], n: int) -> list[int] | None:
    """Inverse of an n x n matrix given as rows; None if singular."""
    aug = [rows[i] | (1 << (n + i)) for i in range(n)]
    red, pivots = reduce_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        return None
    mask = (1 << n) - 1
    return [(red[i] >> n) & mask for i in range(n)]


class BitVector:
    """A GF(2) vector indexed by a finite ordered label set."""

    __slots__ = ("index_set", "bits", "_pos")

    def __init__(self, index_set: Sequence[Label], bits: int = 0):
        self.index_set = tuple(index_set)
        if bits >> len(self.index_set):
            raise IndexMismatch("bits outside the index set")
        self.bits = bits
        self._pos = None

    @classmethod
    def from_support(cls, index_set, support) -> "BitVector":
        index_set = tuple(index_set)
        pos = {x: i for i, x in enumerate(index_set)}
        bits = 0
        for x in support:
            if x not in pos:
                raise IndexMismatch(f"{x!r} not in index set")
            bits ^= 1 << pos[x]
        return cls(index_set, bits)

    def _positions(self):
        if self._pos is None:
            self._pos = {x: i for i, x in enumerate(self.index_set)}
        return self._pos

    def __getitem__(self, label) -> int:
        return self.bits >> self._positions()[label] & 1

    def __add__(self, other: "BitVector") -> "BitVector":
        if other.index_set != self.index_set:
            raise IndexMismatch("vectors over different index sets")
        return BitVector(self.index_set, self.bits ^ other.bits)

    __sub__ = __add__

    def support(self) -> list:
        return [self.index_set[i] for i in bits_of(self.bits)]

    def is_zero(self) -> bool:
        return self.bits == 0

    def weight(self) -> int:
        return popcount(self.bits)

    def __eq__(self, other):
        if not isinstance(other, BitVector):
            return NotImplemented
        return self.index_set == other.index_set and self.bits == other.bits

    def __hash__(self):
        return hash((self.index_set, self.bits))

    def __repr__(self):
        return f"BitVector({''.join(str(self.bits >> i & 1) for i in range(len(self.index_set)))})"


class Gf2Matrix:
    """Immutable GF(2) matrix with labeled rows and columns, stored by columns."""

    __slots__ = ("row_labels", "col_labels", "cols", "_row_pos", "_col_pos")

    def __init__(self, row_labels: Sequence[Label], col_labels: Sequence[Label], cols: Sequence[int]):
        self.row_labels = tuple(row_labels)
        self.col_labels = tuple(col_labels)
        self.cols = tuple(cols)
        if len(self.cols) != len(self.col_labels):
            raise IndexMismatch("column count does not match column labels")
        if len(set(self.row_labels)) != len(self.row_labels) or len(set(self.col_labels)) != len(self.col_labels):
            raise IndexMismatch("duplicate labels")
        limit = len(self.row_labels)
        if any(c >> limit for c in self.cols):
            raise IndexMismatch("column has entries outside the row range")
        self._row_pos = None
        self._col_pos = None

    # construction -----------------------------------------------------
    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], row_labels=None, col_labels=None) -> "Gf2Matrix":
        m = len(rows)
        n = len(rows[0]) if m else (len(col_labels) if col_labels is not None else 0)
        if any(len(r) != n for r in rows):
            raise IndexMismatch("ragged rows")
        row_labels = tuple(range(m)) if row_labels is None else tuple(row_labels)
        col_labels = tuple(range(n)) if col_labels is None else tuple(col_labels)
        cols = [0] * n
        for i, r in enumerate(rows):
            for j, x in enumerate(r):
                if x & 1:
                    cols[j] |= 1 << i
        return cls(row_labels, col_labels, cols)

    @classmethod
    def identity(cls, labels: Sequence[Label], col_labels=None) -> "Gf2Matrix":
        labels = tuple(labels)
        return cls(labels, labels if col_labels is None else col_labels, [1 << i for i in range(len(labels))])

    @classmethod
    def zeros(cls, row_labels, col_labels) -> "Gf2Matrix":
        return cls(row_labels, col_labels, [0] * len(tuple(col_labels)))

    # access -----------------------------------------------------------
    @property
    def shape(self):
        return len(self.row_labels), len(self.col_labels)

    def row_index(self, label) -> int:
        if self._row_pos is None:
            self._row_pos = {x: i for i, x in enumerate(self.row_labels)}
        return self._row_pos[label]

    def col_index(self, label) -> int:
        if self._col_pos is None:
            self._col_pos = {x: i for i, x in enumerate(self.col_labels)}
        return self._col_pos[label]

    def entry(self, r, c) -> int:
        return self.cols[self.col_index(c)] >> self.row_index(r) & 1

    def column(self, label) -> BitVector:
        return BitVector(self.row_labels, self.cols[self.col_index(label)])

    def rows_as_ints(self) -> list[int]:
        return transpose_ints(self.cols, len(self.row_labels))

    def to_lists(self) -> list[list[int]]:
        return [[c >> i & 1 for c in self.cols] for i in range(len(self.row_labels))]

    def select_columns(self, labels: Iterable[Label]) -> "Gf2Matrix":
        labels = tuple(labels)
        return Gf2Matrix(self.row_labels, labels, [self.cols[self.col_index(c)] for c in labels])

    def submatrix(self, rows: Iterable[Label], cols: Iterable[Label]) -> "Gf2Matrix":
        rows = tuple(rows)
        cols = tuple(cols)
        rpos = [self.row_index(r) for r in rows]
        out = []
        for c in cols:
            v = self.cols[self.col_index(c)]
            out.append(sum((v >> p & 1) << i for i, p in enumerate(rpos)))
        return Gf2Matrix(rows, cols, out)

    def hstack(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if other.row_labels != self.row_labels:
            raise IndexMismatch("row labels differ")
        return Gf2Matrix(self.row_labels, self.col_labels + other.col_labels, self.cols + other.cols)

    def transpose(self) -> "Gf2Matrix":
        return Gf2Matrix(self.col_labels, self.row_labels, self.rows_as_ints())

    def relabel_columns(self, mapping) -> "Gf2Matrix":
        return Gf2Matrix(self.row_labels, [mapping.get(c, c) for c in self.col_labels], self.cols)

    def add_row(self, source, target) -> "Gf2Matrix":
        """Elementary row operation: row ``target`` += row ``source``."""
        s, t = self.row_index(source), self.row_index(target)
        out = [c ^ ((c >> s & 1) << t) for c in self.cols]
        return Gf2Matrix(self.row_labels, self.col_labels, out)

    def is_symmetric(self) -> bool:
        if set(self.row_labels) != set(self.col_labels):
            return False
        return all(self.entry(r, c) == self.entry(c, r) for r in self.row_labels for c in self.col_labels)

    def __add__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if other.row_labels != self.row_labels or other.col_labels != self.col_labels:
            raise IndexMismatch("label mismatch")
        return Gf2Matrix(self.row_labels, self.col_labels, [a ^ b for a, b in zip(self.cols, other.cols)])

    def __eq__(self, other):
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return (self.row_labels, self.col_labels, self.cols) == (other.row_labels, other.col_labels, other.cols)

    def __hash__(self):
        return hash((self.row_labels, self.col_labels, self.cols))

    def __repr__(self):
        body = "\n".join("".join(map(str, r)) for r in self.to_lists())
        return f"Gf2Matrix(rows={len(self.row_labels)} cols={len(self.col_labels)})\n{body}"


def rank(M: Gf2Matrix) -> int:
    return rank_of_ints(M.cols)


def rref(M: Gf2Matrix):
    """Reduced row echelon form and the list of pivot column labels."""
    rows, pivots = reduce_rows(M.rows_as_ints(), len(M.col_labels))
    cols = transpose_ints(rows, len(M.col_labels))
    return Gf2Matrix(M.row_labels, M.col_labels, cols), [M.col_labels[j] for j in pivots]


def in_span(M: Gf2Matrix, v: BitVector):
    """A set of column labels whose columns sum to ``v``, or None.

    A column equal to ``v`` is returned as a singleton; otherwise the solution
    is expressed over the RREF pivot columns.
    """
    if v.index_set != M.row_labels:
        raise IndexMismatch("vector is not indexed by the row labels")
    if v.bits == 0:
        return set()
    for label, c in zip(M.col_labels, M.cols):
        if c == v.bits:
            return {label}
    n = len(M.col_labels)
    rows = M.rows_as_ints()
    aug = [r | ((v.bits >> i & 1) << n) for i, r in enumerate(rows)]
    red, pivots = reduce_rows(aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    return {M.col_labels[c] for i, c in enumerate(pivots) if red[i] >> n & 1}


def nullspace_basis(M: Gf2Matrix) -> list[BitVector]:
    return [BitVector(M.col_labels, x) for x in nullspace_ints(M.cols, len(M.row_labels))]


def principal_pivot_transform(A: Gf2Matrix, X: Iterable[Label]) -> Gf2Matrix:
    """A*X over GF(2) by the Schur-complement block formula.

    With P = A[X], Q = A[X, Y], R = A[Y, X], S = A[Y] (Y the other labels)::

        A*X = | P^-1      P^-1 Q        |
              | R P^-1    S + R P^-1 Q  |
    """
    if set(A.row_labels) != set(A.col_labels) or len(A.row_labels) != len(A.col_labels):
        raise IndexMismatch("principal pivot transform needs a square matrix with equal row/column labels")
    Xset = set(X)
    if not Xset <= set(A.row_labels):
        raise IndexMismatch("pivot set not among the labels")
    xs = [v for v in A.row_labels if v in Xset]
    ys = [v for v in A.row_labels if v not in Xset]
    k = len(xs)
    if k == 0:
        return A.submatrix(A.row_labels, A.row_labels)

    def block(rs, cs):
        # rows of the block as ints over cs positions
        return [sum(A.entry(r, c) << j for j, c in enumerate(cs)) for r in rs]

    P = block(xs, xs)
    Pinv = invert_square(P, k)
    if Pinv is None:
        raise SingularPivot(f"principal submatrix on {sorted(map(str, xs))} is singular")
    Q = block(xs, ys)
    R = block(ys, xs)
    S = block(ys, ys)

    def mul(left, right):
        # left rows over inner positions; right rows over outer positions
        out = []
        for row in left:
            acc = 0
            for i in bits_of(row):
                acc ^= right[i]
            out.append(acc)
        return out

    PinvQ = mul(Pinv, Q)
    RPinv = mul(R, Pinv)
    RPinvQ = mul(RPinv, Q)
    new = {}
    for i, r in enumerate(xs):
        for j, c in enumerate(xs):
            new[r, c] = Pinv[i] >> j & 1
        for j, c in enumerate(ys):
            new[r, c] = PinvQ[i] >> j & 1
    for i, r in enumerate(ys):
        for j, c in enumerate(xs):
            new[r, c] = RPinv[i] >> j & 1
        for j, c in enumerate(ys):
            new[r, c] = (S[i] ^ RPinvQ[i]) >> j & 1
    labels = A.row_labels
    rows = [[new[r, c] for c in labels] for r in labels]
    return Gf2Matrix.from_rows(rows, labels, labels)


# text format ------------------------------------------------------------

def format_matrix(M: Gf2Matrix, labels: bool = True, extra: Sequence[str] = ()) -> str:
    lines = [f"rows={len(M.row_labels)} cols={len(M.col_labels)}"]
    lines += ["".join(map(str, r)) for r in M.to_lists()]
    if labels:
        lines.append("rowlabels: " + " ".join(map(str, M.row_labels)))
        lines.append("collabels: " + " ".join(map(str, M.col_labels)))
    lines += list(extra)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str):
    """Parse the matrix text format.

    Returns ``(matrix, extras)`` where ``extras`` maps any further ``key:`` lines
    (e.g. ``ground:`` or ``partition:``) to their raw values.  Labels default to
    integers when absent.
    """
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    if not lines:
        raise ParseError("empty matrix text")
    head = lines[0].split()
    try:
        fields = dict(tok.split("=", 1) for tok in head)
        m, n = int(fields["rows"]), int(fields["cols"])
    except (ValueError, KeyError):
        raise ParseError(f"bad header line: {lines[0]!r}") from None
    if len(lines) < 1 + m:
        raise ParseError("fewer matrix lines than declared rows")
    body = lines[1:1 + m]
    rows = []
    for ln in body:
        if len(ln) != n or set(ln) - {"0", "1"}:
            raise ParseError(f"bad matrix row: {ln!r}")
        rows.append([int(ch) for ch in ln])
    extras = {}
    for ln in lines[1 + m:]:
        if ":" not in ln:
            raise ParseError(f"unexpected line: {ln!r}")
        key, value = ln.split(":", 1)
        extras[key.strip()] = value.strip()
    row_labels = extras.pop("rowlabels", None)
    col_labels = extras.pop("collabels", None)
    row_labels = row_labels.split() if row_labels is not None else list(range(m))
    col_labels = col_labels.split() if col_labels is not None else list(range(n))
    if len(row_labels) != m or len(col_labels) != n:
        raise ParseError("label count does not match matrix shape")
    if m == 0:
        return Gf2Matrix.zeros(row_labels, col_labels), extras
    return Gf2Matrix.from_rows(rows, row_labels, col_labels), extras
