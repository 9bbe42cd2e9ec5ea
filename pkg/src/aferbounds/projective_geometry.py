"""Point multisets in PG(k-1, q) and the code/minihyper dictionary.

A multiset is stored as a multiplicity vector indexed by the canonical point
list of :func:`enumerate_points`.  Hyperplanes are identified with dual
points ``h`` via ``H = {p : h . p = 0}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .bounds_core import v
from .gf import field
from .linear_codes import GenMatrix

Point = tuple[int, ...]


@lru_cache(maxsize=None)
def _points(k: int, q: int) -> tuple[Point, ...]:
    if k < 1:
        raise ValueError("k must be >= 1")
    F = field(q)
    pts = []
    for vec in itertools.product(range(q), repeat=k):
        if any(vec) and F.normalize(vec) == vec:
            pts.append(vec)
    return tuple(pts)


def enumerate_points(k: int, q: int) -> list[Point]:
    """All v_k normalized points of PG(k-1, q) in lexicographic order."""
    return list(_points(k, q))


@lru_cache(maxsize=None)
def _index(k: int, q: int) -> dict[Point, int]:
    return {p: i for i, p in enumerate(_points(k, q))}


@lru_cache(maxsize=None)
def _incidence(k: int, q: int) -> np.ndarray:
    """Boolean matrix: row h (dual point), column p, true when h . p = 0."""
    P = np.array(_points(k, q), dtype=np.int64)
    inc = field(q).matmul(P, P.T) == 0
    inc.setflags(write=False)
    return inc


def normalize_point(vec, q: int) -> Point:
    return field(q).normalize(vec)


@dataclass(frozen=True, eq=False)
class PointMultiset:
    """Multiplicities over the points of PG(k-1, q)."""

    k: int
    q: int
    counts: np.ndarray

    def __post_init__(self):
        c = np.array(self.counts, dtype=np.int64)
        if c.shape != (v(self.k, self.q),):
            raise ValueError(f"expected {v(self.k, self.q)} multiplicities, got {c.shape}")
        if c.size and c.min() < 0:
            raise ValueError("multiplicities must be non-negative")
        c.setflags(write=False)
        object.__setattr__(self, "counts", c)

    @classmethod
    def empty(cls, k: int, q: int) -> PointMultiset:
        return cls(k, q, np.zeros(v(k, q), dtype=np.int64))

    @classmethod
    def from_points(cls, points, k: int, q: int) -> PointMultiset:
        """Build from an iterable of (not necessarily normalized) nonzero vectors."""
        idx = _index(k, q)
        c = np.zeros(v(k, q), dtype=np.int64)
        for p in points:
            if len(p) != k:
                raise ValueError(f"point {tuple(p)} does not have {k} coordinates")
            c[idx[normalize_point(p, q)]] += 1
        return cls(k, q, c)

    @classmethod
    def from_matrix(cls, G: GenMatrix) -> PointMultiset:
        """Column multiset of a generator matrix; zero columns are rejected."""
        if np.any(~G.rows.any(axis=0)):
            raise ValueError("generator matrix has a zero column")
        return cls.from_points(G.rows.T, G.k, G.q)

    @property
    def cardinality(self) -> int:
        return int(self.counts.sum())

    def __len__(self):
        return self.cardinality

    @property
    def points(self) -> list[Point]:
        return list(_points(self.k, self.q))

    @property
    def mult(self) -> dict[Point, int]:
        pts = _points(self.k, self.q)
        return {pts[i]: int(self.counts[i]) for i in np.flatnonzero(self.counts)}

    def multiplicity(self, p) -> int:
        return int(self.counts[_index(self.k, self.q)[normalize_point(p, self.q)]])

    @property
    def max_multiplicity(self) -> int:
        return int(self.counts.max()) if self.counts.size else 0

    def _check(self, other: PointMultiset):
        if (self.k, self.q) != (other.k, other.q):
            raise ValueError("multisets live in different spaces")

    def scale(self, s: int) -> PointMultiset:
        if s < 0:
            raise ValueError("scale factor must be non-negative")
        return PointMultiset(self.k, self.q, self.counts * s)

    def add(self, other: PointMultiset) -> PointMultiset:
        self._check(other)
        return PointMultiset(self.k, self.q, self.counts + other.counts)

    def subtract(self, other: PointMultiset) -> PointMultiset:
        self._check(other)
        diff = self.counts - other.counts
        bad = np.flatnonzero(diff < 0)
        if bad.size:
            p = _points(self.k, self.q)[bad[0]]
            raise ValueError(
                f"multiset underflow at point {p}: {self.counts[bad[0]]} - {other.counts[bad[0]]}"
            )
        return PointMultiset(self.k, self.q, diff)

    __add__ = add
    __sub__ = subtract

    def __mul__(self, s: int) -> PointMultiset:
        return self.scale(s)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, PointMultiset)
            and (self.k, self.q) == (other.k, other.q)
            and bool(np.array_equal(self.counts, other.counts))
        )

    def __hash__(self):
        return hash((self.k, self.q, self.counts.tobytes()))

    def __repr__(self):
        return f"PointMultiset(k={self.k}, q={self.q}, |M|={self.cardinality})"


# --- named point sets ----------------------------------------------------


def _unit(i: int, k: int) -> Point:
    return tuple(1 if j == i else 0 for j in range(k))


def subspace_points(A, k: int, q: int) -> PointMultiset:
    """P_A: every point supported inside the 1-based coordinate set A."""
    A = set(int(a) for a in A)
    if not A:
        raise ValueError("subspace_points needs a non-empty coordinate set")
    if min(A) < 1 or max(A) > k:
        raise ValueError(f"coordinates {sorted(A)} outside 1..{k}")
    mask = np.array([all(p[j] == 0 for j in range(k) if j + 1 not in A) for p in _points(k, q)])
    return PointMultiset(k, q, mask.astype(np.int64))


def identity_points(t: int, k: int, q: int, coords=None) -> PointMultiset:
    """P_{I_t}: unit vectors on the given coordinates (default 1..t)."""
    coords = list(range(1, t + 1)) if coords is None else sorted(coords)
    if len(coords) != t or t < 1 or max(coords) > k:
        raise ValueError(f"cannot place I_{t} in dimension {k}")
    return PointMultiset.from_points([_unit(c - 1, k) for c in coords], k, q)


def frame_points(t: int, k: int, q: int, coords=None) -> PointMultiset:
    """P_{T_t}: the unit vectors plus the all-ones vector on the same coordinates."""
    coords = list(range(1, t + 1)) if coords is None else sorted(coords)
    ones = tuple(1 if j + 1 in coords else 0 for j in range(k))
    return identity_points(t, k, q, coords) + PointMultiset.from_points([ones], k, q)


def frame_points_alt(k: int, q: int) -> PointMultiset:
    """P'_{T_4}: I_4 plus (1,0,1,1) and (0,1,1,1), padded with zeros to length k."""
    if k < 4:
        raise ValueError("P'_{T_4} needs k >= 4")
    pad = (0,) * (k - 4)
    extra = [(1, 0, 1, 1) + pad, (0, 1, 1, 1) + pad]
    return identity_points(4, k, q) + PointMultiset.from_points(extra, k, q)


def simplex(k: int, q: int, s: int = 1) -> PointMultiset:
    return PointMultiset(k, q, np.full(v(k, q), s, dtype=np.int64))


# --- code dictionary -----------------------------------------------------


def to_generator_matrix(M: PointMultiset) -> GenMatrix:
    """Columns list each point with its multiplicity, in canonical point order.

    The multiset must span the whole space; otherwise no k-row basis exists.
    """
    if M.cardinality < 1:
        raise ValueError("empty multiset has no generator matrix")
    pts = _points(M.k, M.q)
    cols = [pts[i] for i in range(len(pts)) for _ in range(int(M.counts[i]))]
    rows = np.array(cols, dtype=np.int64).T
    if field(M.q).rank(rows) < M.k:
        raise ValueError(f"multiset has rank {multiset_rank(M)} < k={M.k}; it does not define a k-dim code")
    return GenMatrix(rows, M.q)


@dataclass(frozen=True)
class HyperplaneProfile:
    """Hyperplane intersection statistics.

    ``min_count``/``achieving`` give the minihyper view (m and 𝔢);
    ``max_count``/``max_achieving`` give the code view
    (d = |M| - max_count, A_d = (q-1) * max_achieving).
    """

    cardinality: int
    min_count: int
    achieving: int
    max_count: int
    max_achieving: int
    q: int

    @property
    def code_d(self) -> int:
        return self.cardinality - self.max_count

    @property
    def code_e(self) -> int:
        return (self.q - 1) * self.max_achieving


def hyperplane_counts(M: PointMultiset) -> np.ndarray:
    """M(H) for every hyperplane, indexed by dual point."""
    return _incidence(M.k, M.q).astype(np.int64) @ M.counts


def hyperplane_profile(M: PointMultiset) -> HyperplaneProfile:
    counts = hyperplane_counts(M)
    lo, hi = int(counts.min()), int(counts.max())
    return HyperplaneProfile(
        cardinality=M.cardinality,
        min_count=lo,
        achieving=int((counts == lo).sum()),
        max_count=hi,
        max_achieving=int((counts == hi).sum()),
        q=M.q,
    )


def code_parameters(M: PointMultiset) -> tuple[int, int, int, int]:
    """(n, k, d, A_d) of the code of M, computed from hyperplane counts."""
    if multiset_rank(M) < M.k:
        raise ValueError("multiset does not span PG(k-1, q)")
    prof = hyperplane_profile(M)
    return M.cardinality, M.k, prof.code_d, prof.code_e


def complement_arc(M: PointMultiset, s: int) -> PointMultiset:
    """ð_s(M): p -> s - M(p)."""
    if s < M.max_multiplicity:
        raise ValueError(f"s={s} below the maximum multiplicity {M.max_multiplicity}")
    return simplex(M.k, M.q, s) - M


def multiset_rank(M: PointMultiset) -> int:
    idx = np.flatnonzero(M.counts)
    if idx.size == 0:
        return 0
    P = np.array([_points(M.k, M.q)[i] for i in idx], dtype=np.int64)
    return field(M.q).rank(P)


def restrict_to_span(M: PointMultiset) -> PointMultiset:
    """Rewrite M in coordinates of its own span (a PG(k'-1, q))."""
    F = field(M.q)
    idx = np.flatnonzero(M.counts)
    if idx.size == 0:
        raise ValueError("empty multiset has no span")
    pts = _points(M.k, M.q)
    P = np.array([pts[i] for i in idx], dtype=np.int64)
    _, pivots = F.rref(P)
    # with an rref basis, a vector of the span has coordinates equal to its pivot entries
    out = np.zeros(v(len(pivots), M.q), dtype=np.int64)
    sub_idx = _index(len(pivots), M.q)
    for i, p in zip(idx, P):
        out[sub_idx[F.normalize(p[pivots])]] += M.counts[i]
    return PointMultiset(len(pivots), M.q, out)


@dataclass(frozen=True)
class RankScaling:
    k: int
    k_prime: int
    e_full: int
    e_restricted: int

    @property
    def factor(self) -> int:
        return self.e_full // self.e_restricted


def rank_scaling_check(M: PointMultiset) -> RankScaling:
    """Compare 𝔢 (hyperplanes attaining the minimum) in PG(k-1,q) and in the span of M."""
    kp = multiset_rank(M)
    if kp == M.k:
        raise ValueError("multiset already has full rank")
    if kp == 0:
        raise ValueError("empty multiset")
    e_full = hyperplane_profile(M).achieving
    e_res = hyperplane_profile(restrict_to_span(M)).achieving
    if e_full != M.q ** (M.k - kp) * e_res:
        raise AssertionError(f"rank scaling failed: {e_full} != {M.q}^{M.k - kp} * {e_res}")
    return RankScaling(M.k, kp, e_full, e_res)


# --- Solomon-Stiffler and Belov minihypers -------------------------------


def ss_minihyper(*A_sets, k: int, q: int = 2) -> PointMultiset:
    """Multiplicity-sum of the subspaces P_{A_i}, with |A_1| >= |A_2| >= ..."""
    sizes = [len(set(A)) for A in A_sets]
    if not sizes:
        raise ValueError("need at least one subspace")
    if sizes != sorted(sizes, reverse=True):
        raise ValueError("subspaces must be listed by non-increasing size")
    M = PointMultiset.empty(k, q)
    for A in A_sets:
        M = M + subspace_points(A, k, q)
    return M


def belov_minihyper(*A_sets, k: int, variant: str = "BV1", extra_point=None) -> PointMultiset:
    """SS minihyper with the frame T_t removed from the last subspace (binary)."""
    if variant not in ("BV1", "BV2"):
        raise ValueError("variant must be BV1 or BV2")
    t = len(set(A_sets[-1]))
    if t < 4:
        raise ValueError("Belov minihypers need |A_h| >= 4")
    M = ss_minihyper(*A_sets, k=k, q=2) - frame_points(t, k, 2, coords=A_sets[-1])
    if variant == "BV2":
        if extra_point is None:
            raise ValueError("BV2 needs an extra point")
        M = M + PointMultiset.from_points([extra_point], k, 2)
    return M


def ss_two_subspace_error_coefficient(k: int, a1: int, a2: int, inter: int, q: int = 2) -> int:
    """Error coefficient of the SS code whose minihyper is P_{A1} + P_{A2}."""
    if q != 2:
        raise ValueError("closed form is binary only")
    if not 1 <= a2 <= a1 < k:
        raise ValueError("need 1 <= |A2| <= |A1| < k")
    if not max(0, a1 + a2 - k) <= inter <= a2:
        raise ValueError(f"intersection size {inter} infeasible")
    # 2^(k-a1-a2) * (2^(a1+a2) + 2^inter - 2^a1 - 2^a2), kept in integers
    return 2**k + 2 ** (inter + k - a1 - a2) - 2 ** (k - a1) - 2 ** (k - a2)


def ss_two_subspace_minimum(k: int, a1: int, a2: int) -> tuple[int, int]:
    """(intersection size, value) minimizing the error coefficient."""
    inter = max(0, a1 + a2 - k)
    if a1 + a2 <= k:
        closed = 2**k + 2 ** (k - a1 - a2) - 2 ** (k - a1) - 2 ** (k - a2)
    else:
        closed = 2**k - 2 ** (k - a1) - 2 ** (k - a2) + 1
    if closed != ss_two_subspace_error_coefficient(k, a1, a2, inter):
        raise AssertionError("closed form disagrees with the general expression")
    return inter, closed


@dataclass(frozen=True)
class Classification:
    ss_excluded: bool
    belov_shape: int | None


def classification_predicates(lam, k: int, s: int) -> Classification:
    """Structural hooks read off the binary anti-expansion vector."""
    lam = tuple(int(x) for x in lam)
    if len(lam) != k - 1:
        raise ValueError(f"λ must have {k - 1} entries")
    excluded = sum(x * (i + 1) for i, x in enumerate(lam)) > k * s
    shape = None
    for kbv in range(4, k):
        if lam[kbv - 1] == 0 and all(lam[i] == 1 for i in range(1, kbv - 1)):
            shape = kbv
            break
    return Classification(excluded, shape)


def is_replicated_simplex(M: PointMultiset) -> bool:
    """True when M is s copies of all points of some projective subspace."""
    idx = np.flatnonzero(M.counts)
    if idx.size == 0:
        return False
    vals = M.counts[idx]
    return bool(np.all(vals == vals[0])) and idx.size == v(multiset_rank(M), M.q)
