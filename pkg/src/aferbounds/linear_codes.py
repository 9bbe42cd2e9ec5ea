"""Concrete linear codes over GF(q): enumeration, surgery and structure checks.

A code is always handled through a :class:`GenMatrix` whose rows form a
basis.  Weight distributions are computed by enumerating every message, so
everything here is exact and limited to small dimensions.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .bounds_core import gamma, griesmer_length, is_griesmer_optimal
from .gf import GF, field

ENUMERATION_CAP = 2**26
_CHUNK = 1 << 15


class EnumerationCapExceeded(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GenMatrix:
    """k x n generator matrix over GF(q) with linearly independent rows."""

    rows: np.ndarray
    q: int

    def __post_init__(self):
        rows = np.array(self.rows, dtype=np.int64)
        if rows.ndim != 2:
            raise ValueError("generator matrix must be 2-dimensional")
        if rows.size and (rows.min() < 0 or rows.max() >= self.q):
            raise ValueError(f"entries must lie in 0..{self.q - 1}")
        rows.setflags(write=False)
        object.__setattr__(self, "rows", rows)
        k, n = rows.shape
        if k > n:
            raise ValueError(f"dimension {k} exceeds length {n}")
        if k and self.field.rank(rows) != k:
            raise ValueError("generator rows are linearly dependent")

    @property
    def k(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    @property
    def field(self) -> GF:
        return field(self.q)

    def __eq__(self, other):
        return (
            isinstance(other, GenMatrix)
            and self.q == other.q
            and self.rows.shape == other.rows.shape
            and bool(np.array_equal(self.rows, other.rows))
        )

    def __hash__(self):
        return hash((self.q, self.rows.shape, self.rows.tobytes()))

    def __repr__(self):
        return f"GenMatrix(q={self.q}, k={self.k}, n={self.n})"


def basis_matrix(vectors, q: int, n: int | None = None) -> GenMatrix:
    """Row-reduce arbitrary spanning vectors to a canonical basis."""
    vectors = np.asarray(vectors, dtype=np.int64)
    if vectors.ndim == 1:
        vectors = vectors[None, :]
    if vectors.shape[0] == 0:
        return GenMatrix(np.zeros((0, n if n is not None else vectors.shape[1]), dtype=np.int64), q)
    R, _ = field(q).rref(vectors)
    return GenMatrix(R, q)


@dataclass(frozen=True)
class WeightDistribution:
    """Counts A_0..A_n.  ``linear=False`` marks a coset (no linear-code invariants)."""

    counts: tuple[int, ...]
    q: int
    k: int
    linear: bool = True

    def __post_init__(self):
        if sum(self.counts) != self.q**self.k:
            raise ValueError("weight counts do not sum to q^k")
        if self.linear:
            if self.counts[0] != 1:
                raise ValueError("A_0 must be 1 for a linear code")
            if any(a % (self.q - 1) for a in self.counts[1:]):
                raise ValueError("A_i not divisible by q-1")

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    @property
    def d(self) -> int | None:
        start = 1 if self.linear else 0
        for i in range(start, len(self.counts)):
            if self.counts[i]:
                return i
        return None

    @property
    def e(self) -> int:
        d = self.d
        return 0 if d is None else self.counts[d]

    def nonzero_weights(self) -> list[int]:
        return [i for i, a in enumerate(self.counts) if a and i > 0]


def _messages(k: int, q: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((idx.size, k), dtype=np.int64)
    for j in range(k - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def iter_codewords(G: GenMatrix, cap: int = ENUMERATION_CAP):
    """Yield ``(messages, codewords)`` chunks in lexicographic message order."""
    total = G.q**G.k
    if total > cap:
        raise EnumerationCapExceeded(f"q^k = {total} exceeds the enumeration cap {cap}")
    F = G.field
    for start in range(0, total, _CHUNK):
        M = _messages(G.k, G.q, start, min(total, start + _CHUNK))
        yield M, F.matmul(M, G.rows)


def all_codewords(G: GenMatrix, cap: int = ENUMERATION_CAP) -> tuple[np.ndarray, np.ndarray]:
    Ms, Cs = zip(*iter_codewords(G, cap))
    return np.vstack(Ms), np.vstack(Cs)


def _binary_counts(G: GenMatrix) -> list[int]:
    # Gray-code walk over packed rows; each step flips one generator
    packed = [int("".join(str(int(b)) for b in row), 2) if G.n else 0 for row in G.rows]
    counts = [0] * (G.n + 1)
    counts[0] = 1
    cur = 0
    for i in range(1, 2**G.k):
        cur ^= packed[(i & -i).bit_length() - 1]
        counts[cur.bit_count()] += 1
    return counts


def weight_distribution(G: GenMatrix, cap: int = ENUMERATION_CAP) -> WeightDistribution:
    if G.q**G.k > cap:
        raise EnumerationCapExceeded(f"q^k = {G.q**G.k} exceeds the enumeration cap {cap}")
    if G.q == 2:
        return WeightDistribution(tuple(_binary_counts(G)), 2, G.k)
    counts = np.zeros(G.n + 1, dtype=np.int64)
    for _, C in iter_codewords(G, cap):
        counts += np.bincount(np.count_nonzero(C, axis=1), minlength=G.n + 1)
    return WeightDistribution(tuple(int(c) for c in counts), G.q, G.k)


def parameters(G: GenMatrix) -> tuple[int, int, int, int]:
    """(n, k, d, e) by enumeration."""
    wd = weight_distribution(G)
    return G.n, G.k, wd.d, wd.e


def coset_weights(Gp: GenMatrix, v) -> WeightDistribution:
    """Weight distribution of the coset ``C' + v``."""
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (Gp.n,):
        raise ValueError("coset leader has the wrong length")
    F = Gp.field
    counts = np.zeros(Gp.n + 1, dtype=np.int64)
    if Gp.k == 0:
        counts[np.count_nonzero(v)] += 1
    else:
        for _, C in iter_codewords(Gp):
            counts += np.bincount(np.count_nonzero(F.add[C, v[None, :]], axis=1), minlength=Gp.n + 1)
    return WeightDistribution(tuple(int(c) for c in counts), Gp.q, Gp.k, linear=bool(not v.any()))


# --- support, puncturing, shortening -------------------------------------


def support_and_effective_length(G: GenMatrix) -> tuple[tuple[int, ...], int, GenMatrix]:
    """Support coordinates, effective length n(C) and the code Φ(C) restricted to its support."""
    supp = tuple(int(i) for i in np.flatnonzero(G.rows.any(axis=0)))
    return supp, len(supp), GenMatrix(G.rows[:, list(supp)], G.q)


def puncture(G: GenMatrix, A) -> GenMatrix:
    """Delete the coordinates in ``A`` (0-based) and return a basis of the result."""
    A = set(int(a) for a in A)
    keep = [i for i in range(G.n) if i not in A]
    if not keep:
        raise ValueError("puncturing would remove every coordinate")
    return basis_matrix(G.rows[:, keep], G.q, len(keep))


def shorten(G: GenMatrix, A) -> GenMatrix:
    """Keep the codewords vanishing on ``A``, then delete ``A``."""
    A = sorted(set(int(a) for a in A))
    keep = [i for i in range(G.n) if i not in A]
    if not keep:
        raise ValueError("shortening would remove every coordinate")
    F = G.field
    msgs = F.nullspace(G.rows[:, A].T) if A else np.eye(G.k, dtype=np.int64)
    if msgs.shape[0] == 0:
        return GenMatrix(np.zeros((0, len(keep)), dtype=np.int64), G.q)
    return basis_matrix(F.matmul(msgs, G.rows)[:, keep], G.q, len(keep))


def is_codeword(G: GenMatrix, c) -> bool:
    c = np.asarray(c, dtype=np.int64)
    if c.shape != (G.n,):
        return False
    return G.field.in_row_space(G.rows, c)


def residual(G: GenMatrix, c) -> GenMatrix:
    """Residual code: puncture on the support of the codeword ``c``."""
    c = np.asarray(c, dtype=np.int64)
    if not c.any():
        raise ValueError("residual needs a nonzero codeword")
    if not is_codeword(G, c):
        raise ValueError("vector is not a codeword")
    return puncture(G, np.flatnonzero(c))


def extend(G: GenMatrix) -> GenMatrix:
    """Append an overall parity coordinate (binary only)."""
    if G.q != 2:
        raise ValueError("parity extension is defined here for binary codes only")
    parity = G.rows.sum(axis=1) % 2
    return GenMatrix(np.hstack([G.rows, parity[:, None]]), 2)


def juxtapose(*Gs: GenMatrix) -> GenMatrix:
    if not Gs:
        raise ValueError("nothing to juxtapose")
    q, k = Gs[0].q, Gs[0].k
    if any(g.q != q or g.k != k for g in Gs):
        raise ValueError("juxtaposition needs codes with equal q and k")
    return GenMatrix(np.hstack([g.rows for g in Gs]), q)


# --- minimum weight structure --------------------------------------------


def _min_weight_messages(G: GenMatrix) -> tuple[int, np.ndarray, np.ndarray]:
    M, C = all_codewords(G)
    w = np.count_nonzero(C, axis=1)
    w[0] = G.n + 1  # message 0 is the zero word
    d = int(w.min())
    sel = w == d
    return d, M[sel], C[sel]


def _projective_reps(M: np.ndarray, C: np.ndarray, F: GF) -> tuple[np.ndarray, np.ndarray]:
    """Keep one message per scalar class (leading nonzero entry equal to 1)."""
    lead = np.array([m[np.flatnonzero(m)[0]] for m in M])
    sel = lead == 1
    return M[sel], C[sel]


def find_extension_column(G: GenMatrix) -> np.ndarray | None:
    """Exhaustively search for a column whose addition raises the minimum distance."""
    F = G.field
    _, Mmin, _ = _min_weight_messages(G)
    for x in itertools.product(range(G.q), repeat=G.k):
        x = np.array(x, dtype=np.int64)
        if not x.any():
            continue
        if np.all(F.matmul(Mmin, x[:, None])[:, 0] != 0):
            return x
    return None


@dataclass(frozen=True)
class ExtendabilityReport:
    """Verdicts of the residual criterion and of the exhaustive column search.

    ``nonextendable`` is the search verdict, which is exact.  The residual
    criterion (every minimum-weight residual has distance d/2) implies
    non-extendability but the converse can fail, so ``agree`` may be False.
    """

    nonextendable: bool
    residual_every: bool
    residual_some: bool
    witness: tuple[int, ...] | None

    @property
    def agree(self) -> bool:
        return self.residual_every == self.nonextendable


def check_nonextendable_even(G: GenMatrix) -> ExtendabilityReport:
    """Binary even-distance non-extendability, by residual codes and by exhaustive search."""
    if G.q != 2:
        raise ValueError("check_nonextendable_even is binary only")
    d, _, Cmin = _min_weight_messages(G)
    if d % 2:
        raise ValueError("minimum distance is odd; the code is extendable by parity")
    verdicts = []
    for c in Cmin:
        R = residual(G, c)
        verdicts.append(R.k == G.k - 1 and weight_distribution(R).d == d // 2)
    x = find_extension_column(G)
    return ExtendabilityReport(
        nonextendable=x is None,
        residual_every=all(verdicts),
        residual_some=any(verdicts),
        witness=None if x is None else tuple(int(a) for a in x),
    )


@dataclass
class SubcodeChain:
    success: bool
    targets: list[int]
    lengths: list[int]
    subcodes: list[GenMatrix] = dc_field(default_factory=list)


def find_griesmer_subcode_chain(G: GenMatrix, d: int | None = None) -> SubcodeChain:
    """Search for nested subcodes C_1 < ... < C_k1 with n(C_j) = g_q(j, d).

    Depth-first over codewords; ``k1 = min(Γ, k-1)``.  On failure the
    deepest chain found is returned with ``success=False``.
    """
    F = G.field
    if d is None:
        d = weight_distribution(G).d
    k1 = min(gamma(G.n, G.k, d, G.q), G.k - 1)
    targets = [griesmer_length(j, d, G.q) for j in range(1, k1 + 1)]
    M, C = all_codewords(G)
    M, C = _projective_reps(M[1:], C[1:], F)
    supports = C != 0
    best: list[int] = []

    def dfs(chain: list[int], mask: np.ndarray) -> list[int] | None:
        nonlocal best
        if len(chain) > len(best):
            best = list(chain)
        if len(chain) == k1:
            return chain
        target = targets[len(chain)]
        basis = M[chain]
        for i in range(len(M)):
            if int((mask | supports[i]).sum()) != target:
                continue
            if chain and F.in_row_space(basis, M[i]):
                continue
            found = dfs(chain + [i], mask | supports[i])
            if found is not None:
                return found
        return None

    chain = dfs([], np.zeros(G.n, dtype=bool))
    use = chain if chain is not None else best
    subcodes, lengths = [], []
    for j in range(1, len(use) + 1):
        sub = basis_matrix(C[use[:j]], G.q)
        subcodes.append(sub)
        lengths.append(support_and_effective_length(sub)[1])
    return SubcodeChain(chain is not None, targets, lengths, subcodes)


@dataclass
class ResidualCapReport:
    residual_count: int
    complement_minima: list[int]

    @property
    def holds_for_every_complement(self) -> bool:
        return all(self.residual_count <= m for m in self.complement_minima)

    @property
    def holds_for_some_complement(self) -> bool:
        return any(self.residual_count <= m for m in self.complement_minima)


def residual_cap_check(G: GenMatrix, c) -> ResidualCapReport:
    """Compare A_{d/q} of the residual under ``c`` with A_d of every complement C' and its cosets."""
    F = G.field
    q = G.q
    c = np.asarray(c, dtype=np.int64)
    wd = weight_distribution(G)
    d = wd.d
    if int(np.count_nonzero(c)) != d or not is_codeword(G, c):
        raise ValueError("c must be a minimum-weight codeword")
    if d % q or not is_griesmer_optimal(G.n, G.k, d, q) or gamma(G.n, G.k, d, q) < 2:
        raise ValueError("needs a Griesmer-optimal code with q | d and Γ >= 2")
    res = residual(G, c)
    res_count = weight_distribution(res).counts[d // q]
    # message of c: solve m G = c
    aug = F.rref(np.hstack([G.rows.T, c[:, None]]))[0]
    mc = aug[: G.k, -1]
    minima = []
    for h in itertools.product(range(q), repeat=G.k):
        h = np.array(h, dtype=np.int64)
        if not h.any() or F.normalize(h) != tuple(h):
            continue
        if F.matmul(h[None, :], mc[:, None])[0, 0] == 0:
            continue
        W = F.nullspace(h[None, :])
        sub = basis_matrix(F.matmul(W, G.rows), q)
        vals = [weight_distribution(sub).counts[d]]
        for a in range(1, q):
            vals.append(coset_weights(sub, F.scale(a, c)).counts[d])
        minima.append(min(vals))
    return ResidualCapReport(int(res_count), minima)


def exhaustive_two_dim_oracle(n: int, q: int) -> tuple[int, int]:
    """(d, min A_d) over every [n, 2]_q code, by brute force over column multisets.

    Independent of the projective-geometry module: the line PG(1, q) is
    listed inline and codes are enumerated directly.
    """
    if q not in (2, 3) or not 2 <= n <= 8:
        raise ValueError("oracle budget: 2 <= n <= 8 and q in {2, 3}")
    pts = [(0, 1)] + [(1, a) for a in range(q)]
    best_d, best_e = 0, None
    for cols in itertools.combinations_with_replacement(range(len(pts)), n):
        Gm = np.array([pts[i] for i in cols], dtype=np.int64).T
        if field(q).rank(Gm) < 2:
            continue
        wd = weight_distribution(GenMatrix(Gm, q))
        if wd.d > best_d:
            best_d, best_e = wd.d, wd.e
        elif wd.d == best_d:
            best_e = min(best_e, wd.e)
    return best_d, best_e


# --- matrix file format --------------------------------------------------

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def format_matrix(G: GenMatrix) -> str:
    lines = [f"{G.q} {G.k} {G.n}"]
    lines += ["".join(_DIGITS[int(x)] for x in row) for row in G.rows]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> GenMatrix:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix file")
    header = lines[0].split()
    if len(header) != 3:
        raise ValueError("header must be 'q k n'")
    q, k, n = (int(x) for x in header)
    body = [re.sub(r"\s+", "", ln) for ln in lines[1:]]
    if len(body) != k:
        raise ValueError(f"expected {k} rows, found {len(body)}")
    rows = []
    for i, ln in enumerate(body):
        if len(ln) != n:
            raise ValueError(f"row {i + 1} has {len(ln)} entries, expected {n}")
        rows.append([_DIGITS.index(ch.lower()) for ch in ln])
    return GenMatrix(np.array(rows, dtype=np.int64).reshape(k, n), q)


def read_matrix(path) -> GenMatrix:
    return parse_matrix(Path(path).read_text())


def write_matrix(G: GenMatrix, path) -> None:
    Path(path).write_text(format_matrix(G))
