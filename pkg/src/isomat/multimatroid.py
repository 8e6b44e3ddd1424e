"""Sheltering matroids and the multimatroids they shelter.

A multimatroid is only ever built here as Z(Q) for a sheltering matroid
Q = (M, Omega): its independent sets are the independent subtransversals of M.
All set computations use int masks over the ground order of M.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence

from .config import get_cap
from .errors import (CapExceeded, ClassNotInCycleSpace, NotBinary, NotTight, ParseError,
                     PreconditionError)
from .gf2 import Gf2Matrix, bits_of, popcount
from .graph import LoopedGraph
from .isotropic import GroundElement, build_ias
from .matroid import BinaryMatroid


# matroids that are not binary ---------------------------------------------------------

class UniformMatroid:
    """U(r, n) on a labeled ground set."""

    def __init__(self, ground: Sequence, r: int):
        self.ground = tuple(ground)
        self.r = r
        self._pos = {g: i for i, g in enumerate(self.ground)}

    def pos(self, e) -> int:
        return self._pos[e]

    def mask(self, S) -> int:
        return sum(1 << self._pos[e] for e in set(S))

    def rank_mask(self, m: int) -> int:
        return min(popcount(m), self.r)

    def rank_of(self, S) -> int:
        return self.rank_mask(self.mask(S))

    @property
    def rank(self) -> int:
        return min(self.r, len(self.ground))

    def restrict(self, S) -> "UniformMatroid":
        keep = set(S)
        return UniformMatroid([g for g in self.ground if g in keep], self.r)

    def __repr__(self):
        return f"U({self.r},{len(self.ground)})"


class TruncatedMatroid:
    """Truncation of a matroid to rank ``r``: independents of size < old rank survive."""

    def __init__(self, base, r: int):
        self.base = base
        self.ground = base.ground
        self.r = r

    def pos(self, e) -> int:
        return self.base.pos(e)

    def mask(self, S) -> int:
        return self.base.mask(S)

    def rank_mask(self, m: int) -> int:
        return min(self.base.rank_mask(m), self.r)

    def rank_of(self, S) -> int:
        return self.rank_mask(self.mask(S))

    @property
    def rank(self) -> int:
        return min(self.base.rank, self.r)

    def restrict(self, S) -> "TruncatedMatroid":
        return TruncatedMatroid(self.base.restrict(S), self.r)

    def __repr__(self):
        return f"Truncated({self.base!r}, rank={self.r})"


def _rank(M) -> int:
    return M.rank


# partitions ------------------------------------------------------------------------

class SkewPartition:
    """A partition of a ground set into ordered classes."""

    def __init__(self, classes: Iterable[Iterable]):
        self.classes = tuple(tuple(c) for c in classes)
        if any(not c for c in self.classes):
            raise ValueError("classes must be nonempty")
        self._class_of = {}
        for k, c in enumerate(self.classes):
            for x in c:
                if x in self._class_of:
                    raise ValueError(f"{x!r} lies in two classes")
                self._class_of[x] = k
        self.ground = tuple(x for c in self.classes for x in c)

    def __len__(self):
        return len(self.classes)

    def class_index(self, x) -> int:
        return self._class_of[x]

    def class_of(self, x) -> tuple:
        return self.classes[self._class_of[x]]

    @property
    def q(self):
        sizes = {len(c) for c in self.classes}
        return sizes.pop() if len(sizes) == 1 else None

    def is_q_partition(self, q: int) -> bool:
        return all(len(c) == q for c in self.classes)

    def skew_pairs(self) -> list[tuple]:
        return [p for c in self.classes for p in itertools.combinations(c, 2)]

    def partner(self, x):
        """The other element of a 2-element class."""
        c = self.class_of(x)
        if len(c) != 2:
            raise PreconditionError("partners are defined only in 2-element classes")
        return c[1] if c[0] == x else c[0]

    def is_subtransversal(self, S) -> bool:
        seen = set()
        for x in S:
            k = self._class_of[x]
            if k in seen:
                return False
            seen.add(k)
        return True

    def transversals(self):
        return itertools.product(*self.classes)

    def restrict(self, X) -> "SkewPartition":
        X = set(X)
        return SkewPartition([tuple(x for x in c if x in X) for c in self.classes if any(x in X for x in c)])

    def to_text(self) -> str:
        return "; ".join(" ".join(map(str, c)) for c in self.classes)

    def __eq__(self, other):
        if not isinstance(other, SkewPartition):
            return NotImplemented
        return {frozenset(c) for c in self.classes} == {frozenset(c) for c in other.classes}

    def __hash__(self):
        return hash(frozenset(frozenset(c) for c in self.classes))

    def __repr__(self):
        return f"SkewPartition({self.to_text()})"


def parse_partition(text: str) -> SkewPartition:
    groups = [g.split() for g in text.split(";") if g.strip()]
    if not groups:
        raise ParseError("empty partition line")
    return SkewPartition(groups)


# sheltering matroids -----------------------------------------------------------------

class ShelteringMatroid:
    """A pair (M, Omega).  The shelter axiom is checked by :func:`is_sheltering`, not here."""

    def __init__(self, matroid, partition: SkewPartition):
        if set(partition.ground) != set(matroid.ground) or len(partition.ground) != len(matroid.ground):
            raise PreconditionError("partition must cover the ground set exactly")
        self.matroid = matroid
        self.partition = partition
        self.class_masks = tuple(sum(1 << matroid.pos(x) for x in c) for c in partition.classes)
        self._elems = tuple(tuple(matroid.pos(x) for x in c) for c in partition.classes)

    @property
    def ground(self):
        return self.matroid.ground

    def labels(self, m: int) -> frozenset:
        return frozenset(self.matroid.ground[i] for i in bits_of(m))

    def mask(self, S) -> int:
        return self.matroid.mask(S)

    def independent(self, m: int) -> bool:
        return self.matroid.rank_mask(m) == popcount(m)

    def subtransversal_masks(self):
        """All subtransversals as masks (one choice of 'nothing or one element' per class)."""
        total = 1
        for c in self._elems:
            total *= len(c) + 1
        cap = 4 ** get_cap("scan")
        if total > cap:
            raise CapExceeded(f"{total} subtransversals exceed the cap {cap}")
        for choice in itertools.product(*[(None,) + c for c in self._elems]):
            m = 0
            for p in choice:
                if p is not None:
                    m |= 1 << p
            yield m

    def transversal_masks(self):
        for choice in itertools.product(*self._elems):
            m = 0
            for p in choice:
                m |= 1 << p
            yield m

    def is_strict(self) -> bool:
        return _rank(self.matroid) <= len(self.partition)

    def truncate(self) -> "ShelteringMatroid":
        r = _rank(self.matroid)
        if r < 1:
            raise PreconditionError("truncation needs rank at least 1")
        return ShelteringMatroid(TruncatedMatroid(self.matroid, r - 1), self.partition)

    def delete(self, X) -> "ShelteringMatroid":
        X = set(X)
        keep = [g for g in self.ground if g not in X]
        return ShelteringMatroid(self.matroid.restrict(keep), self.partition.restrict(keep))

    def multimatroid(self) -> "MultimatroidView":
        return MultimatroidView(self)

    def __repr__(self):
        return f"ShelteringMatroid({self.matroid!r}, {self.partition!r})"


def is_sheltering(M, partition: SkewPartition):
    """``(True, None)`` or ``(False, (I, pair))`` with I independent and no extension in the pair."""
    Q = ShelteringMatroid(M, partition)
    pos = [list(c) for c in Q._elems]
    for I in Q.subtransversal_masks():
        if not Q.independent(I):
            continue
        for k, cm in enumerate(Q.class_masks):
            if I & cm:
                continue
            for x, y in itertools.combinations(pos[k], 2):
                if not Q.independent(I | 1 << x) and not Q.independent(I | 1 << y):
                    return False, (Q.labels(I), (M.ground[x], M.ground[y]))
    return True, None


# multimatroids -------------------------------------------------------------------------

class MultimatroidView:
    """Z(Q): independent subtransversals of a sheltering matroid."""

    def __init__(self, shelter: ShelteringMatroid):
        self.shelter = shelter
        self._ind = None

    @property
    def partition(self) -> SkewPartition:
        return self.shelter.partition

    @property
    def ground(self):
        return self.shelter.ground

    def independent_masks(self) -> frozenset:
        if self._ind is None:
            Q = self.shelter
            self._ind = frozenset(m for m in Q.subtransversal_masks() if Q.independent(m))
        return self._ind

    def independents(self) -> set:
        return {self.shelter.labels(m) for m in self.independent_masks()}

    def is_nondegenerate(self) -> bool:
        return all(len(c) > 1 for c in self.partition.classes)

    def basis_masks(self) -> list[int]:
        ind = self.independent_masks()
        out = []
        for m in ind:
            free = [k for k, cm in enumerate(self.shelter.class_masks) if not m & cm]
            if not any(m | 1 << p in ind for k in free for p in self.shelter._elems[k]):
                out.append(m)
        if self.is_nondegenerate():
            assert all(popcount(b) == len(self.partition) for b in out), "nondegenerate bases are transversals"
        return sorted(out)

    def bases(self) -> list[frozenset]:
        return [self.shelter.labels(m) for m in self.basis_masks()]

    def circuit_masks(self) -> list[int]:
        ind = self.independent_masks()
        out = []
        for m in self.shelter.subtransversal_masks():
            if m in ind or m == 0:
                continue
            if all(m & ~(1 << i) in ind for i in bits_of(m)):
                out.append(m)
        return sorted(out)

    def circuits(self) -> set:
        return {self.shelter.labels(m) for m in self.circuit_masks()}

    def rank_of(self, S) -> int:
        """Rank of a subtransversal: its largest independent subset."""
        return self.shelter.matroid.rank_of(S)

    def minor(self, X) -> "MultimatroidView":
        """Z[X]: classes met with X, independents inside X."""
        X = set(X)
        keep = [g for g in self.ground if g in X]
        return MultimatroidView(ShelteringMatroid(self.shelter.matroid.restrict(keep), self.partition.restrict(keep)))

    def delete(self, X) -> "MultimatroidView":
        X = set(X)
        return self.minor([g for g in self.ground if g not in X])

    def same_as(self, other: "MultimatroidView") -> bool:
        """Same ground, same partition, same independent sets."""
        if set(self.ground) != set(other.ground) or self.partition != other.partition:
            return False
        return self.independents() == other.independents()


def mm_minor(Z: MultimatroidView, X) -> MultimatroidView:
    return Z.minor(X)


class AbstractMultimatroid:
    """A multimatroid given by its circuits (used for fixtures that have no obvious shelter)."""

    def __init__(self, partition: SkewPartition, circuits: Iterable[Iterable]):
        self.partition = partition
        self.circuits = [frozenset(c) for c in circuits]

    def independents(self) -> set:
        out = set()
        for choice in itertools.product(*[(None,) + c for c in self.partition.classes]):
            S = frozenset(x for x in choice if x is not None)
            if not any(c <= S for c in self.circuits):
                out.add(S)
        return out


def shelters(M, Z) -> bool:
    """Does M (with Z's partition) shelter exactly the multimatroid Z?"""
    view = MultimatroidView(ShelteringMatroid(M, Z.partition))
    return view.independents() == Z.independents()


def is_tight(Z: MultimatroidView) -> bool:
    """Nondegenerate, and every near-transversal keeps its rank when some element of the missing class is added."""
    if not Z.is_nondegenerate():
        return False
    Q = Z.shelter
    rank = Q.matroid.rank_mask
    k = len(Q.class_masks)
    for m in Q.subtransversal_masks():
        if popcount(m) != k - 1:
            continue
        miss = next(j for j, cm in enumerate(Q.class_masks) if not m & cm)
        r = rank(m)
        if not any(rank(m | 1 << p) == r for p in Q._elems[miss]):
            return False
    return True


def check_base_exchange(Z: MultimatroidView) -> bool:
    """Two-matroid basis exchange: for bases B, B' and a skew pair p in BΔB', some q gives a basis BΔ(p∪q)."""
    Q = Z.shelter
    bases = set(Z.basis_masks())
    for B, B2 in itertools.product(bases, repeat=2):
        D = B ^ B2
        pairs = [cm for cm in Q.class_masks if cm & D == cm]
        for p in pairs:
            if not any(B ^ (p | q) in bases for q in pairs):
                return False
    return True


# standard representations and strong binarity ------------------------------------------

def aligned_matrix(Q: ShelteringMatroid, B: Sequence) -> Gf2Matrix:
    """Aligned A for a transversal basis B of a binary 2-shelter.

    Row i is B[i]; column i is the partner of B[i]; A[b, partner(b')] = 1 iff b is
    in the fundamental circuit of partner(b').
    """
    M = Q.matroid
    rows = M.standard_rows(B)
    B = list(B)
    partners = [Q.partition.partner(b) for b in B]
    cols = []
    for t in partners:
        j = M.pos(t)
        cols.append(sum(1 << i for i, b in enumerate(B) if rows[b] >> j & 1))
    return Gf2Matrix(B, partners, cols)


def _symmetric_aligned(A: Gf2Matrix) -> bool:
    n = len(A.row_labels)
    return all((A.cols[j] >> i & 1) == (A.cols[i] >> j & 1) for i in range(n) for j in range(i + 1, n))


def transversal_bases(Q: ShelteringMatroid) -> list[tuple]:
    """Transversal bases of M in transversal enumeration order."""
    r = _rank(Q.matroid)
    out = []
    for T in Q.partition.transversals():
        if len(T) == r and Q.matroid.rank_of(T) == r:
            out.append(T)
    return out


def strongly_binary_witness(Q: ShelteringMatroid) -> dict:
    """Scan transversal bases for a symmetric aligned standard representation.

    Returns ``{"witness": (A, (T1, T2)) or None, "bases_scanned": k, "asymmetric": [...]}``.
    """
    if not Q.partition.is_q_partition(2):
        raise PreconditionError("strong binarity is defined for 2-partitions")
    if not isinstance(Q.matroid, BinaryMatroid):
        raise NotBinary("the shelter must be a binary matroid")
    scanned = 0
    asym = []
    for B in transversal_bases(Q):
        scanned += 1
        A = aligned_matrix(Q, B)
        if _symmetric_aligned(A):
            T2 = tuple(Q.partition.partner(b) for b in B)
            return {"witness": (A, (tuple(B), T2)), "bases_scanned": scanned, "asymmetric": asym}
        asym.append(tuple(B))
    return {"witness": None, "bases_scanned": scanned, "asymmetric": asym}


def shelter_from_symmetric(A_rows: Sequence[int], T1: Sequence, T2: Sequence) -> BinaryMatroid:
    """Column matroid of (I | A) on ground T1 + T2 (A given as row masks over T2 positions)."""
    k = len(T1)
    cols = [1 << i for i in range(k)]
    for j in range(k):
        cols.append(sum(1 << i for i in range(k) if A_rows[i] >> j & 1))
    return BinaryMatroid(Gf2Matrix(range(k), list(T1) + list(T2), cols))


def unique_strong_shelter_check(Z: MultimatroidView) -> dict:
    """Enumerate every strongly binary shelter (I | A), A symmetric, over all transversal pairs.

    Candidates are pruned by the 1x1 and 2x2 principal-minor conditions that
    basis membership of T1 Δ p and T1 Δ (p ∪ q) imposes; each survivor is compared
    with Z in full.  Returns ``{"unique": bool, "shelters": [...], "candidates": n}``.
    """
    P = Z.partition
    if not P.is_q_partition(2):
        raise PreconditionError("strong shelters are defined for 2-partitions")
    ind = Z.independents()
    bases = {b for b in ind if len(b) == len(P)}
    k = len(P)
    found = []
    candidates = 0
    for T1 in P.transversals():
        if frozenset(T1) not in bases:
            continue
        T2 = [P.partner(x) for x in T1]
        T1s = frozenset(T1)
        diag = [int((T1s - {T1[i]}) | {T2[i]} in bases) for i in range(k)]
        pair = {}
        for i, j in itertools.combinations(range(k), 2):
            swapped = (T1s - {T1[i], T1[j]}) | {T2[i], T2[j]}
            det = int(swapped in bases)
            # det of [[a, x], [x, b]] over GF(2) is ab + x
            pair[i, j] = det ^ (diag[i] & diag[j])
        rows = [diag[i] << i for i in range(k)]
        for (i, j), x in pair.items():
            if x:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
        candidates += 1
        M = shelter_from_symmetric(rows, T1, T2)
        view = MultimatroidView(ShelteringMatroid(M, P))
        if view.independents() == ind:
            found.append(M)
    unique = all(found[0].same_as(M) for M in found[1:]) if found else False
    return {"unique": unique, "shelters": found, "candidates": candidates}


def unique_strong_shelter_bruteforce(Z: MultimatroidView) -> dict:
    """Same as :func:`unique_strong_shelter_check` without pruning (all 2^(k(k+1)/2) symmetric A)."""
    P = Z.partition
    ind = Z.independents()
    k = len(P)
    cells = [(i, j) for i in range(k) for j in range(i, k)]
    found = []
    for T1 in P.transversals():
        T2 = [P.partner(x) for x in T1]
        for bits in range(1 << len(cells)):
            rows = [0] * k
            for t, (i, j) in enumerate(cells):
                if bits >> t & 1:
                    rows[i] |= 1 << j
                    rows[j] |= 1 << i
            M = shelter_from_symmetric(rows, T1, T2)
            if MultimatroidView(ShelteringMatroid(M, P)).independents() == ind:
                found.append(M)
    unique = all(found[0].same_as(M) for M in found[1:]) if found else False
    return {"unique": unique, "shelters": found}


# isotropic matroids as 3-shelters --------------------------------------------------------

def isotropic_shelter(G: LoopedGraph) -> ShelteringMatroid:
    IM = build_ias(G)
    return ShelteringMatroid(IM.matroid, SkewPartition(IM.triples[v] for v in G.vertices))


def _relabeled_ias(G: LoopedGraph, labeling: dict) -> BinaryMatroid:
    """M[IAS(G)] with each GroundElement renamed through ``labeling``."""
    return build_ias(G).matroid.relabel(labeling)


def extract_graph_from_tight_binary_3matroid(Z: MultimatroidView) -> dict:
    """Recover a graph G with Z = Z(M[IAS(G)]) up to relabeling.

    T1 is the first basis of Z; T2 collects, class by class, the element whose
    swap into T1 fails to give a basis; A comes from the T2 columns of the
    standard representation at T1.  Returns ``{"graph", "tuple", "labeling"}``
    where ``labeling`` maps W(G) onto the ground of Z.
    """
    P = Z.partition
    if not P.is_q_partition(3):
        raise PreconditionError("a 3-partition is required")
    if not isinstance(Z.shelter.matroid, BinaryMatroid):
        raise NotBinary("Z must be given through a binary shelter")
    if not is_tight(Z):
        raise NotTight("Z is not tight")
    bases = Z.basis_masks()
    Q = Z.shelter
    M = Q.matroid
    T1 = [M.ground[i] for i in sorted(bits_of(bases[0]), key=lambda p: P.class_index(M.ground[p]))]
    T1s = set(T1)
    bset = set(bases)
    T2, T3 = [], []
    for i, c in enumerate(P.classes):
        others = [u for u in c if u not in T1s]
        base_rest = M.mask(T1) & ~M.mask([T1[i]])
        fail = [u for u in others if base_rest | M.mask([u]) not in bset]
        if len(fail) != 1:
            raise NotTight(f"class {c} has {len(fail)} non-exchangeable elements")
        T2.append(fail[0])
        T3.append(next(u for u in others if u != fail[0]))
    rows = M.standard_rows(T1)
    k = len(P)
    adj = [[0] * k for _ in range(k)]
    for j, t in enumerate(T2):
        pj = M.pos(t)
        for i, b in enumerate(T1):
            adj[i][j] = rows[b] >> pj & 1
    for i in range(k):
        if adj[i][i]:
            raise AssertionError("tightness forces a zero diagonal")
        for j in range(k):
            if adj[i][j] != adj[j][i]:
                raise AssertionError("the T2 block of a 3-sheltering matroid is symmetric")
    G = LoopedGraph.from_adjacency(adj)
    labeling = {}
    for i in range(k):
        labeling[GroundElement(i, 0)] = T1[i]
        labeling[GroundElement(i, 1)] = T2[i]
        labeling[GroundElement(i, 2)] = T3[i]
    return {"graph": G, "tuple": (tuple(T1), tuple(T2), tuple(T3)), "labeling": labeling}


def rebuilt_multimatroid(result: dict, partition: SkewPartition) -> MultimatroidView:
    """Z of the extracted graph's isotropic matroid, carried back to the original labels."""
    M = _relabeled_ias(result["graph"], result["labeling"])
    return MultimatroidView(ShelteringMatroid(M, partition))


def classes_in_cycle_space(Q: ShelteringMatroid):
    """The first class whose columns do not sum to zero, or None."""
    M = Q.matroid
    for c in Q.partition.classes:
        acc = 0
        for x in c:
            acc ^= M.rep.cols[M.pos(x)]
        if acc:
            return c
    return None


def check_3shelt_isotropic(Q: ShelteringMatroid):
    """Graph witness that a strict binary 3-shelter is an isotropic matroid, or None.

    Raises :class:`ClassNotInCycleSpace` when some class does not sum to zero.
    Returns ``{"graph", "labeling"}`` with ``labeling`` mapping W(G) onto Q's ground.
    """
    P = Q.partition
    if not P.is_q_partition(3):
        raise PreconditionError("a 3-partition is required")
    M = Q.matroid
    if not isinstance(M, BinaryMatroid):
        raise NotBinary("binary shelter required")
    if not Q.is_strict():
        raise PreconditionError("the shelter is not strict")
    bad = classes_in_cycle_space(Q)
    if bad is not None:
        raise ClassNotInCycleSpace(f"class {' '.join(map(str, bad))} is not in the cycle space", witness=bad)
    bases = transversal_bases(Q)
    if not bases or len(bases[0]) != len(P):
        return None
    T1 = list(bases[0])
    rows = M.standard_rows(T1)
    k = len(P)
    T2, T3 = [], []
    for i, c in enumerate(P.classes):
        x, y = [u for u in c if u != T1[i]]
        if rows[T1[i]] >> M.pos(x) & 1:
            x, y = y, x
        T2.append(x)
        T3.append(y)
    adj = [[rows[T1[i]] >> M.pos(T2[j]) & 1 for j in range(k)] for i in range(k)]
    if any(adj[i][j] != adj[j][i] for i in range(k) for j in range(k)):
        return None
    G = LoopedGraph.from_adjacency(adj)
    labeling = {}
    for i in range(k):
        labeling[GroundElement(i, 0)] = T1[i]
        labeling[GroundElement(i, 1)] = T2[i]
        labeling[GroundElement(i, 2)] = T3[i]
    assert _relabeled_ias(G, labeling).same_as(M)
    return {"graph": G, "labeling": labeling}


# enumeration of binary matroids ----------------------------------------------------------

def enumerate_binary_matroids(ground: Sequence, r: int):
    """Every rank-r binary matroid on ``ground`` (one per r-dim row space, via RREF shapes)."""
    n = len(ground)
    for piv in itertools.combinations(range(n), r):
        free = [(i, j) for i, p in enumerate(piv) for j in range(p + 1, n) if j not in piv]
        for bits in range(1 << len(free)):
            rows = [1 << p for p in piv]
            for t, (i, j) in enumerate(free):
                if bits >> t & 1:
                    rows[i] |= 1 << j
            cols = [sum((rows[i] >> j & 1) << i for i in range(r)) for j in range(n)]
            yield BinaryMatroid(Gf2Matrix(range(r), ground, cols))


# fixtures -----------------------------------------------------------------------------

def shelter_from_text(text: str) -> ShelteringMatroid:
    """Matrix text with ``collabels:`` (or ``ground:``) and a ``partition:`` line."""
    M, extras = BinaryMatroid.from_text(text)
    if "partition" not in extras:
        raise ParseError("missing 'partition:' line")
    names = {str(g): g for g in M.ground}
    P = parse_partition(extras["partition"])
    try:
        P = SkewPartition([[names[x] for x in c] for c in P.classes])
    except KeyError as exc:
        raise ParseError(f"partition names unknown element {exc}") from None
    return ShelteringMatroid(M, P)


def shelter_to_text(Q: ShelteringMatroid) -> str:
    return Q.matroid.to_text(extra=["partition: " + Q.partition.to_text()])
