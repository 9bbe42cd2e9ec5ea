"""Integer arithmetic of the Griesmer framework.

Everything here is exact integer arithmetic on Python ints.  The only
floating point quantity is :func:`afer_estimate`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.special import log_ndtr

from .gf import is_prime_power


def _check_q(q: int) -> None:
    if not is_prime_power(q):
        raise ValueError(f"q={q} is not a prime power")


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def v(k: int, q: int) -> int:
    """Number of points of PG(k-1, q)."""
    return (q**k - 1) // (q - 1)


@dataclass(frozen=True)
class CodeParams:
    n: int
    k: int
    d: int
    q: int
    e: int | None = None

    def __post_init__(self):
        _check_q(self.q)
        if not (1 <= self.k <= self.n and 1 <= self.d <= self.n):
            raise ValueError(f"invalid parameters {self}")
        if self.e is not None and (self.e < self.q - 1 or self.e % (self.q - 1)):
            raise ValueError(f"error coefficient {self.e} is not a positive multiple of q-1")

    def __str__(self):
        tail = f";{self.e}" if self.e is not None else ""
        return f"[{self.n},{self.k},{self.d}{tail}]_{self.q}"


def griesmer_length(k: int, d: int, q: int) -> int:
    """g_q(k, d): the Griesmer lower bound on the length of an [n, k, d]_q code."""
    if k < 1 or d < 1:
        raise ValueError("griesmer_length needs k >= 1 and d >= 1")
    _check_q(q)
    return sum(ceil_div(d, q**i) for i in range(k))


def modified_griesmer_length(k: int, d: int, m: int, q: int) -> int:
    """Griesmer bound for a code whose maximum weight is ``m``."""
    if k < 2:
        raise ValueError("modified_griesmer_length needs k >= 2")
    if m < d:
        raise ValueError(f"maximum weight m={m} below minimum distance d={d}")
    _check_q(q)
    return sum(ceil_div(d, q**i) for i in range(k - 1)) + ceil_div(m, q ** (k - 1))


def griesmer_max_distance(n: int, k: int, q: int) -> int:
    """Largest d with g_q(k, d) <= n."""
    if k < 1 or n < k:
        raise ValueError(f"need n >= k >= 1, got n={n}, k={k}")
    _check_q(q)
    # g_q(k, d) >= d, so the answer lies in [1, n]
    lo, hi = 1, n
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if griesmer_length(k, mid, q) <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def is_griesmer_optimal(n: int, k: int, d: int, q: int) -> bool:
    return griesmer_length(k, d, q) <= n < griesmer_length(k, d + 1, q)


def gamma_with_flag(n: int, k: int, d: int, q: int) -> tuple[int, bool]:
    """Γ_q(n, k, d) and whether the undefined fallback case was hit.

    The fallback (n > g_q(k, d) yet no k1 < k qualifies) returns ``k``.
    """
    if not is_griesmer_optimal(n, k, d, q):
        raise ValueError(f"({n},{k},{d})_{q} is not Griesmer optimal")
    if n == griesmer_length(k, d, q):
        return k, False
    for k1 in range(1, k):
        if n - griesmer_length(k1, d, q) >= griesmer_length(k - k1, ceil_div(d, q**k1) + 1, q):
            return k1, False
    return k, True


def gamma(n: int, k: int, d: int, q: int) -> int:
    return gamma_with_flag(n, k, d, q)[0]


@dataclass(frozen=True)
class AdicExpansion:
    """d = s * q**(k-1) - sum(lam[i] * q**i)."""

    s: int
    lam: tuple[int, ...]
    q: int = 2

    def reconstruct(self) -> int:
        k = len(self.lam) + 1
        return self.s * self.q ** (k - 1) - sum(c * self.q**i for i, c in enumerate(self.lam))

    @property
    def weight(self) -> int:
        return sum(1 for c in self.lam if c)


def adic_anti_expansion(d: int, k: int, q: int = 2) -> AdicExpansion:
    """The q-adic anti-expansion of d (the binary case is the 2-adic vector λ).

    For q > 2 the entries are digits in ``0 .. q-1``.
    """
    if k < 2:
        raise ValueError("adic_anti_expansion needs k >= 2")
    if d < 1:
        raise ValueError("adic_anti_expansion needs d >= 1")
    top = q ** (k - 1)
    s = ceil_div(d, top)
    r = s * top - d
    lam = []
    for _ in range(k - 1):
        lam.append(r % q)
        r //= q
    return AdicExpansion(s, tuple(lam), q)


@dataclass(frozen=True)
class TwoDimAnswer:
    s: int
    t: int
    d: int
    e: int


def two_dim_optimal(n: int, q: int) -> TwoDimAnswer:
    """Optimal distance and smallest error coefficient of an [n, 2]_q code."""
    if n < 2:
        raise ValueError("two_dim_optimal needs n >= 2")
    _check_q(q)
    s, t = divmod(n - 1, q + 1)
    if t < q:
        return TwoDimAnswer(s, t, s * q + t, (q - 1) * (t + 1))
    # n is a multiple of q+1: replicated two-dimensional Simplex code
    r = n // (q + 1)
    return TwoDimAnswer(r, q, r * q, q * q - 1)


def gaussian_tail(x: float) -> float:
    """Q(x), the standard normal upper tail."""
    return 0.5 * math.erfc(x / math.sqrt(2.0))


def log_gaussian_tail(x: float) -> float:
    return float(log_ndtr(-x))


def afer_value(n: int, k: int, d: int, e: int, ebn0: float) -> float:
    """A_d * Q(sqrt(2 d k Eb/N0 / n)) without validating the code parameters."""
    if not ebn0 > 0:
        raise ValueError("ebn0 must be positive")
    if e == 0:
        return 0.0
    x = math.sqrt(2.0 * d * k * ebn0 / n)
    q_val = 0.5 * math.erfc(x / math.sqrt(2.0))
    if q_val > 0.0:
        return e * q_val
    # Q underflowed but e * Q may still be representable
    return math.exp(math.log(e) + log_gaussian_tail(x))


def afer_estimate(params: CodeParams, ebn0: float) -> float:
    """Asymptotic frame error rate of a code with known error coefficient.

    ``ebn0`` is linear scale, not dB.
    """
    if params.e is None:
        raise ValueError("afer_estimate needs the error coefficient e")
    return afer_value(params.n, params.k, params.d, params.e, ebn0)
