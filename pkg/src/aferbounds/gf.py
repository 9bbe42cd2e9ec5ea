"""Finite field arithmetic over GF(q) for small q.

Prime fields use modular arithmetic.  Extension fields use exp/log tables
built from fixed Conway polynomials.  Elements are integers ``0 .. q-1``;
for extension fields an element encodes its polynomial-basis coefficients
in base ``p`` (``a0 + a1*p + a2*p**2 + ...``).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

# Conway polynomials, coefficients low degree first, monic leading term implied.
CONWAY = {
    4: (2, (1, 1)),  # x^2 + x + 1
    8: (2, (1, 1, 0)),  # x^3 + x + 1
    9: (3, (2, 2)),  # x^2 + 2x + 2
    16: (2, (1, 1, 0, 0)),  # x^4 + x + 1
}


class UnsupportedFieldError(ValueError):
    pass


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, m)`` with ``q == p**m`` or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            if not _is_prime(p):
                return None
            m, r = 0, q
            while r % p == 0:
                r //= p
                m += 1
            return (p, m) if r == 1 else None
    return None


def is_prime_power(q: int) -> bool:
    return prime_power(q) is not None


class GF:
    """Arithmetic tables for GF(q).  Obtain instances through :func:`field`."""

    def __init__(self, q: int):
        pm = prime_power(q)
        if pm is None:
            raise UnsupportedFieldError(f"q={q} is not a prime power")
        self.q = q
        self.p, self.m = pm
        if self.m == 1:
            el = np.arange(q)
            self.add = (el[:, None] + el[None, :]) % q
            self.mul = (el[:, None] * el[None, :]) % q
        elif q in CONWAY:
            self.add, self.mul = _extension_tables(q)
        else:
            raise UnsupportedFieldError(f"no field table for q={q}")
        self.neg = np.array([int(np.flatnonzero(self.add[a] == 0)[0]) for a in range(q)])
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(self.mul[a] == 1)[0])
        self.inv = inv
        self.sub = self.add[:, self.neg]
        for t in (self.add, self.mul, self.neg, self.inv, self.sub):
            t.setflags(write=False)

    @property
    def is_prime(self) -> bool:
        return self.m == 1

    def __repr__(self):
        return f"GF({self.q})"

    # vectorised helpers -------------------------------------------------

    def matmul(self, A, B) -> np.ndarray:
        """Matrix product over GF(q) of integer arrays ``A`` (a x b) and ``B`` (b x c)."""
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        if self.is_prime:
            return (A @ B) % self.q
        out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        for i in range(A.shape[1]):
            out = self.add[out, self.mul[A[:, i, None], B[None, i, :]]]
        return out

    def scale(self, a: int, v) -> np.ndarray:
        return self.mul[a, np.asarray(v, dtype=np.int64)]

    def axpy(self, a: int, x, y) -> np.ndarray:
        """Return ``a*x + y``."""
        return self.add[self.mul[a, np.asarray(x, dtype=np.int64)], np.asarray(y, dtype=np.int64)]

    def normalize(self, v) -> tuple[int, ...]:
        """Scale a nonzero vector so its first nonzero entry is 1."""
        v = np.asarray(v, dtype=np.int64)
        nz = np.flatnonzero(v)
        if nz.size == 0:
            raise ValueError("cannot normalize the zero vector")
        return tuple(int(x) for x in self.mul[self.inv[v[nz[0]]], v])

    # linear algebra -----------------------------------------------------

    def rref(self, A) -> tuple[np.ndarray, list[int]]:
        """Reduced row-echelon form with unit pivots; zero rows are dropped."""
        R = np.array(A, dtype=np.int64, copy=True)
        if R.ndim != 2:
            raise ValueError("rref expects a 2-d array")
        rows, cols = R.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(R[r:, c])
            if nz.size == 0:
                continue
            piv = r + int(nz[0])
            if piv != r:
                R[[r, piv]] = R[[piv, r]]
            R[r] = self.mul[self.inv[R[r, c]], R[r]]
            for i in range(rows):
                if i != r and R[i, c]:
                    R[i] = self.add[R[i], self.mul[self.neg[R[i, c]], R[r]]]
            pivots.append(c)
            r += 1
        return R[:r], pivots

    def rank(self, A) -> int:
        A = np.asarray(A)
        if A.size == 0:
            return 0
        return len(self.rref(A)[1])

    def nullspace(self, A) -> np.ndarray:
        """Basis (as rows) of ``{x : A @ x = 0}``."""
        A = np.asarray(A, dtype=np.int64)
        ncols = A.shape[1]
        if A.shape[0] == 0:
            return np.eye(ncols, dtype=np.int64)
        R, pivots = self.rref(A)
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        for f in free:
            x = np.zeros(ncols, dtype=np.int64)
            x[f] = 1
            for i, pc in enumerate(pivots):
                x[pc] = self.neg[R[i, f]]
            basis.append(x)
        if not basis:
            return np.zeros((0, ncols), dtype=np.int64)
        return np.array(basis)

    def in_row_space(self, basis, v) -> bool:
        basis = np.asarray(basis, dtype=np.int64)
        return self.rank(np.vstack([basis, np.asarray(v, dtype=np.int64)[None, :]])) == self.rank(basis)


def _extension_tables(q: int) -> tuple[np.ndarray, np.ndarray]:
    p, low = CONWAY[q]
    m = len(low)

    def digits(a):
        return [(a // p**i) % p for i in range(m)]

    def undigits(ds):
        return sum(int(c) * p**i for i, c in enumerate(ds))

    add = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        da = digits(a)
        for b in range(q):
            add[a, b] = undigits([(x + y) % p for x, y in zip(da, digits(b))])

    # exp table: successive powers of x reduced modulo the Conway polynomial
    exp = [0] * (q - 1)
    cur = [1] + [0] * (m - 1)
    for i in range(q - 1):
        exp[i] = undigits(cur)
        top = cur[-1]
        cur = [0] + cur[:-1]
        cur = [(c - top * lc) % p for c, lc in zip(cur, low)]
    if len(set(exp)) != q - 1:
        raise UnsupportedFieldError(f"polynomial for q={q} is not primitive")
    log = {v: i for i, v in enumerate(exp)}
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(1, q):
        for b in range(1, q):
            mul[a, b] = exp[(log[a] + log[b]) % (q - 1)]
    return add, mul


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
