"""Binary matroids: column matroids of GF(2) matrices over a labeled ground set."""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .config import get_cap
from .errors import CapExceeded, ElementInBasis, NotABasis, UnknownElement
from .gf2 import (BitVector, Gf2Matrix, bits_of, format_matrix, nullspace_ints, parse_matrix,
                  popcount, rank_of_ints, reduce_rows, transpose_ints)
from .graph import LoopedGraph


class CycleSpace:
    """A GF(2) subspace of vectors indexed by a ground set (stored as int masks)."""

    __slots__ = ("ground", "basis")

    def __init__(self, ground: Sequence, basis: Iterable[int]):
        self.ground = tuple(ground)
        rows, piv = reduce_rows(list(basis), len(self.ground))
        self.basis = tuple(rows[: len(piv)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def vectors(self) -> list[BitVector]:
        return [BitVector(self.ground, b) for b in self.basis]

    def contains_mask(self, x: int) -> bool:
        return rank_of_ints(self.basis + (x,)) == self.dim

    def contains(self, labels: Iterable) -> bool:
        pos = {g: i for i, g in enumerate(self.ground)}
        return self.contains_mask(sum(1 << pos[g] for g in set(labels)))

    def members(self):
        """Every vector of the space (2^dim masks), in Gray-code order."""
        x = 0
        yield x
        for k in range(1, 1 << self.dim):
            x ^= self.basis[(k & -k).bit_length() - 1]
            yield x

    def __eq__(self, other):
        if not isinstance(other, CycleSpace):
            return NotImplemented
        return self.ground == other.ground and self.basis == other.basis

    def __hash__(self):
        return hash((self.ground, self.basis))

    def __repr__(self):
        return f"CycleSpace(dim={self.dim}, basis={[sorted(map(str, v.support())) for v in self.vectors()]})"


class BinaryMatroid:
    """Column matroid of a :class:`Gf2Matrix`; the ground set is the column labels."""

    __slots__ = ("rep", "ground", "_pos", "_rank", "_circuits")

    def __init__(self, rep: Gf2Matrix):
        self.rep = rep
        self.ground = rep.col_labels
        self._pos = {g: i for i, g in enumerate(self.ground)}
        self._rank = None
        self._circuits = None

    @classmethod
    def from_rows(cls, rows, ground=None) -> "BinaryMatroid":
        return cls(Gf2Matrix.from_rows(rows, col_labels=ground))

    # element/mask plumbing --------------------------------------------
    def pos(self, e) -> int:
        try:
            return self._pos[e]
        except KeyError:
            raise UnknownElement(f"{e!r} is not in the ground set") from None

    def mask(self, S: Iterable) -> int:
        m = 0
        for e in S:
            m |= 1 << self.pos(e)
        return m

    def labels(self, mask: int) -> frozenset:
        return frozenset(self.ground[i] for i in bits_of(mask))

    @property
    def size(self) -> int:
        return len(self.ground)

    # rank ---------------------------------------------------------------
    def rank_mask(self, mask: int) -> int:
        cols = self.rep.cols
        return rank_of_ints(cols[i] for i in bits_of(mask))

    def rank_of(self, S: Iterable) -> int:
        return self.rank_mask(self.mask(S))

    @property
    def rank(self) -> int:
        if self._rank is None:
            self._rank = rank_of_ints(self.rep.cols)
        return self._rank

    def is_independent(self, S) -> bool:
        S = list(S)
        return len(set(S)) == len(S) and self.rank_of(S) == len(S)

    def is_basis(self, S) -> bool:
        S = set(S)
        return len(S) == self.rank and self.rank_of(S) == len(S)

    def nullity(self, S) -> int:
        S = set(S)
        return len(S) - self.rank_of(S)

    def closure(self, S) -> frozenset:
        r = self.rank_of(S)
        base = list(S)
        return frozenset(e for e in self.ground if self.rank_of(base + [e]) == r)

    # minors -----------------------------------------------------------
    def restrict(self, S: Iterable) -> "BinaryMatroid":
        keep = set(S)
        for e in keep:
            self.pos(e)
        return BinaryMatroid(self.rep.select_columns([g for g in self.ground if g in keep]))

    def delete(self, S: Iterable) -> "BinaryMatroid":
        drop = set(S)
        for e in drop:
            self.pos(e)
        return BinaryMatroid(self.rep.select_columns([g for g in self.ground if g not in drop]))

    def contract(self, S: Iterable) -> "BinaryMatroid":
        """M/S: eliminate the span of S and drop its columns."""
        S = [g for g in self.ground if g in set(S)]
        for e in S:
            self.pos(e)
        rest = [g for g in self.ground if g not in set(S)]
        order = S + rest
        cols = [self.rep.cols[self.pos(g)] for g in order]
        nrows = len(self.rep.row_labels)
        rows, piv = reduce_rows(transpose_ints(cols, nrows), len(order))
        k = sum(1 for p in piv if p < len(S))
        kept = rows[k: len(piv)]
        shift = len(S)
        new_cols = transpose_ints([r >> shift for r in kept], len(rest))
        return BinaryMatroid(Gf2Matrix(range(len(kept)), rest, new_cols))

    def relabel(self, mapping) -> "BinaryMatroid":
        return BinaryMatroid(self.rep.relabel_columns(mapping))

    # standard forms -----------------------------------------------------
    def standard_rows(self, B: Iterable) -> dict:
        """Fundamental-circuit incidence: ``{b: mask of columns with a 1 in row b}``.

        Rows come from the reduced form (I_B | A) with respect to the basis B.
        """
        B = [g for g in self.ground if g in set(B)]
        Bset = set(B)
        if len(Bset) != self.rank or self.rank_of(B) != len(B):
            raise NotABasis(f"{sorted(map(str, Bset))} is not a basis")
        order = B + [g for g in self.ground if g not in Bset]
        cols = [self.rep.cols[self.pos(g)] for g in order]
        rows, piv = reduce_rows(transpose_ints(cols, len(self.rep.row_labels)), len(order))
        out = {}
        for i, b in enumerate(B):
            m = 0
            for j in bits_of(rows[i]):
                m |= 1 << self.pos(order[j])
            out[b] = m
        return out

    def standard_representation(self, B: Iterable) -> Gf2Matrix:
        """(I | A) form with rows labeled by the basis elements and columns by the ground."""
        rows = self.standard_rows(B)
        labels = list(rows)
        cols = [0] * self.size
        for i, b in enumerate(labels):
            for j in bits_of(rows[b]):
                cols[j] |= 1 << i
        return Gf2Matrix(labels, self.ground, cols)

    def fundamental_circuit(self, e, B: Iterable) -> frozenset:
        B = set(B)
        self.pos(e)
        if e in B:
            raise ElementInBasis(f"{e!r} lies in the basis")
        rows = self.standard_rows(B)
        j = self.pos(e)
        return frozenset([e] + [b for b, m in rows.items() if m >> j & 1])

    def fundamental_graph(self, B: Iterable) -> LoopedGraph:
        """Bipartite graph on the ground set with b ~ w iff b lies in C(w, B)."""
        rows = self.standard_rows(B)
        edges = []
        for b, m in rows.items():
            for j in bits_of(m):
                if self.ground[j] != b:
                    edges.append((b, self.ground[j]))
        return LoopedGraph(self.ground, edges)

    def some_basis(self) -> list:
        _, piv = reduce_rows(self.rep.rows_as_ints(), self.size)
        return [self.ground[j] for j in piv]

    # duality and spaces ---------------------------------------------------
    def dual(self) -> "BinaryMatroid":
        """Dual matroid from the standard form at the first basis in ground order."""
        B = self.some_basis()
        rows = self.standard_rows(B)
        Bset = set(B)
        others = [g for g in self.ground if g not in Bset]
        opos = {g: i for i, g in enumerate(others)}
        cols = []
        for g in self.ground:
            if g in Bset:
                m = rows[g]
                cols.append(sum(1 << opos[self.ground[j]] for j in bits_of(m) if self.ground[j] in opos))
            else:
                cols.append(1 << opos[g])
        return BinaryMatroid(Gf2Matrix(others, self.ground, cols))

    def cycle_space(self) -> CycleSpace:
        return CycleSpace(self.ground, nullspace_ints(self.rep.cols, len(self.rep.row_labels)))

    def cocycle_space(self) -> CycleSpace:
        return CycleSpace(self.ground, self.rep.rows_as_ints())

    def bicycle_space(self) -> CycleSpace:
        """Cycle space intersected with its orthogonal complement."""
        null = list(nullspace_ints(self.rep.cols, len(self.rep.row_labels)))
        # x = sum y_i null_i is orthogonal to every cycle iff Gram(null) y = 0
        gram = [sum((popcount(a & b) & 1) << j for j, b in enumerate(null)) for a in null]
        out = []
        for y in nullspace_ints(transpose_ints(gram, len(null)), len(null)):
            x = 0
            for i in bits_of(y):
                x ^= null[i]
            out.append(x)
        return CycleSpace(self.ground, out)

    # circuits and element classes --------------------------------------
    def circuit_masks(self, size_cap: int | None = None) -> frozenset:
        """All circuits as ground masks (optionally only those of size <= size_cap)."""
        if self._circuits is None:
            null = nullspace_ints(self.rep.cols, len(self.rep.row_labels))
            cap = get_cap("nullity")
            if len(null) > cap:
                raise CapExceeded(f"cycle space of dimension {len(null)} exceeds cap {cap}")
            found = set()
            x = 0
            for k in range(1, 1 << len(null)):
                x ^= null[(k & -k).bit_length() - 1]
                if self.rank_mask(x) == popcount(x) - 1:
                    found.add(x)
            self._circuits = frozenset(found)
        if size_cap is None:
            return self._circuits
        return frozenset(c for c in self._circuits if popcount(c) <= size_cap)

    def circuits(self, size_cap: int | None = None) -> set:
        return {self.labels(c) for c in self.circuit_masks(size_cap)}

    def is_circuit(self, S) -> bool:
        m = self.mask(S)
        return m != 0 and self.rank_mask(m) == popcount(m) - 1 and all(
            self.rank_mask(m & ~(1 << i)) == popcount(m) - 1 for i in bits_of(m))

    def loops(self) -> list:
        return [g for g, c in zip(self.ground, self.rep.cols) if c == 0]

    def coloops(self) -> list:
        return [g for g in self.ground if self.rank_mask(self.mask(self.ground) & ~(1 << self.pos(g))) < self.rank]

    def parallel_classes(self) -> list[list]:
        """Classes of size >= 2 of mutually parallel elements (loops form their own class)."""
        groups: dict[int, list] = {}
        for g, c in zip(self.ground, self.rep.cols):
            groups.setdefault(c, []).append(g)
        return [grp for grp in groups.values() if len(grp) > 1]

    def parallel_pairs(self) -> list[tuple]:
        """Pairs of non-loop elements with equal columns."""
        out = []
        for grp in self.parallel_classes():
            if self.rep.cols[self.pos(grp[0])] == 0:
                continue
            out.extend(itertools.combinations(grp, 2))
        return out

    def series_classes(self) -> list[list]:
        """Series classes: parallel classes of the dual among non-coloops."""
        return self.dual().parallel_classes()

    def series_pairs(self) -> list[tuple]:
        return self.dual().parallel_pairs()

    def classify_elements(self) -> dict:
        return {
            "loops": self.loops(),
            "coloops": self.coloops(),
            "parallel": self.parallel_pairs(),
            "series": self.series_pairs(),
        }

    # connectivity ------------------------------------------------------
    def components(self) -> list[list]:
        """Connected components: components of a fundamental graph."""
        return [sorted(c, key=self.pos) for c in self.fundamental_graph(self.some_basis()).components()]

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    # comparison ------------------------------------------------------------
    def same_as(self, other: "BinaryMatroid") -> bool:
        """Equal ground sets and equal matroids (row spaces agree after aligning columns)."""
        if set(self.ground) != set(other.ground) or self.rank != other.rank:
            return False
        cols = [other.rep.cols[other.pos(g)] for g in self.ground]
        mine = self.rep.rows_as_ints()
        theirs = transpose_ints(cols, len(other.rep.row_labels))
        return rank_of_ints(mine + theirs) == self.rank

    def __eq__(self, other):
        if not isinstance(other, BinaryMatroid):
            return NotImplemented
        return self.ground == other.ground and self.same_as(other)

    def __hash__(self):
        return hash((self.ground, self.rank))

    def __repr__(self):
        return f"BinaryMatroid(rank={self.rank}, ground={list(self.ground)})"

    def is_isomorphism(self, other: "BinaryMatroid", f: dict) -> bool:
        """Check that the ground bijection ``f`` carries circuits onto circuits."""
        if len(f) != self.size or set(f) != set(self.ground) or set(f.values()) != set(other.ground):
            return False
        if self.rank != other.rank:
            return False
        mine = self.circuit_masks()
        theirs = other.circuit_masks()
        if len(mine) != len(theirs):
            return False
        img = [1 << other.pos(f[g]) for g in self.ground]
        for c in mine:
            m = 0
            for i in bits_of(c):
                m |= img[i]
            if m not in theirs:
                return False
        return True

    # text format --------------------------------------------------------------
    def to_text(self, extra: Sequence[str] = ()) -> str:
        return format_matrix(self.rep, labels=True, extra=["ground: " + " ".join(map(str, self.ground)), *extra])

    @classmethod
    def from_text(cls, text: str):
        """Parse matrix text; returns ``(matroid, extras)``."""
        M, extras = parse_matrix(text)
        if "ground" in extras:
            ground = extras["ground"].split()
            if len(ground) != len(M.col_labels):
                from .errors import ParseError
                raise ParseError("ground line does not match column count")
            M = Gf2Matrix(M.row_labels, ground, M.cols)
        return cls(M), extras


# isomorphism -------------------------------------------------------------------

def element_invariants(M: BinaryMatroid) -> list[tuple]:
    circ = M.circuit_masks()
    coloops = M.mask(M.coloops())
    par = {}
    for g, c in zip(M.ground, M.rep.cols):
        par[c] = par.get(c, 0) + 1
    out = []
    for i, c in enumerate(M.rep.cols):
        sizes = sorted(popcount(x) for x in circ if x >> i & 1)
        out.append((c == 0, bool(coloops >> i & 1), par[c], tuple(sizes)))
    return out


def _search_order(M: BinaryMatroid, inv: list, counts: dict) -> list[int]:
    """Rarest invariant class first, then grow along shared circuits."""
    n = M.size
    circ = sorted(M.circuit_masks(), key=popcount)
    touch = [0] * n
    for c in circ:
        for i in bits_of(c):
            touch[i] |= c
    order: list[int] = []
    placed = 0
    while len(order) < n:
        frontier = [i for i in range(n) if not placed >> i & 1 and touch[i] & placed]
        pool = frontier or [i for i in range(n) if not placed >> i & 1]
        i = min(pool, key=lambda k: (counts[inv[k]], -popcount(touch[k] & placed), k))
        order.append(i)
        placed |= 1 << i
    return order


def matroid_isomorphism(M1: BinaryMatroid, M2: BinaryMatroid, constraint=None):
    """A ground bijection M1 -> M2 carrying circuits onto circuits, or None.

    Backtracking over ground elements in a circuit-connected order, pruning by
    element invariants, prefix ranks and circuit closure.  ``constraint(e, f)``
    may veto individual assignments.
    """
    if M1.size != M2.size or M1.rank != M2.rank:
        return None
    c1, c2 = M1.circuit_masks(), M2.circuit_masks()
    if len(c1) != len(c2):
        return None
    inv1, inv2 = element_invariants(M1), element_invariants(M2)
    if sorted(inv1) != sorted(inv2):
        return None
    counts: dict = {}
    for x in inv1:
        counts[x] = counts.get(x, 0) + 1
    order = _search_order(M1, inv1, counts)
    n = M1.size
    step_of = {e: k for k, e in enumerate(order)}
    closing: list[list[int]] = [[] for _ in range(n)]
    for c in c1:
        last = max(bits_of(c), key=step_of.__getitem__)
        closing[step_of[last]].append(c)
    cand = [[j for j in range(n) if inv2[j] == inv1[i]] for i in range(n)]
    cols1, cols2 = M1.rep.cols, M2.rep.cols
    image = [0] * n
    used = 0

    def ok(k: int) -> bool:
        for c in closing[k]:
            m = 0
            for i in bits_of(c):
                m |= 1 << image[i]
            if m not in c2:
                return False
        prefix1 = [cols1[order[t]] for t in range(k + 1)]
        prefix2 = [cols2[image[order[t]]] for t in range(k + 1)]
        return rank_of_ints(prefix1) == rank_of_ints(prefix2)

    def go(k: int) -> bool:
        nonlocal used
        if k == n:
            return True
        i = order[k]
        for j in cand[i]:
            if used >> j & 1:
                continue
            if constraint is not None and not constraint(M1.ground[i], M2.ground[j]):
                continue
            image[i] = j
            used |= 1 << j
            if ok(k) and go(k + 1):
                return True
            used &= ~(1 << j)
        return False

    if not go(0):
        return None
    return {M1.ground[i]: M2.ground[image[i]] for i in range(n)}


def brute_force_isomorphism(M1: BinaryMatroid, M2: BinaryMatroid):
    """Try every bijection (test oracle; small ground sets only)."""
    if M1.size != M2.size:
        return None
    for perm in itertools.permutations(M2.ground):
        f = dict(zip(M1.ground, perm))
        if M1.is_isomorphism(M2, f):
            return f
    return None


def direct_sum(*Ms: BinaryMatroid) -> BinaryMatroid:
    rows_total = sum(len(M.rep.row_labels) for M in Ms)
    ground, cols = [], []
    shift = 0
    for M in Ms:
        ground.extend(M.ground)
        cols.extend(c << shift for c in M.rep.cols)
        shift += len(M.rep.row_labels)
    return BinaryMatroid(Gf2Matrix(range(rows_total), ground, cols))
