"""Independent brute-force oracles shared by the test modules.

These deliberately avoid the package's own enumeration code: codewords are
formed with itertools.product and plain modular arithmetic (prime q only).
"""

import itertools
import math

import pytest


def brute_weights(rows, q):
    """Weight histogram of the row space of ``rows`` over prime GF(q)."""
    rows = [list(map(int, r)) for r in rows]
    n = len(rows[0]) if rows else 0
    hist = [0] * (n + 1)
    for coeffs in itertools.product(range(q), repeat=len(rows)):
        word = [sum(c * r[j] for c, r in zip(coeffs, rows)) % q for j in range(n)]
        hist[sum(1 for x in word if x)] += 1
    return hist


def brute_d_e(rows, q):
    hist = brute_weights(rows, q)
    d = next(w for w in range(1, len(hist)) if hist[w])
    return d, hist[d]


def brute_griesmer(k, d, q):
    return sum(-(-d // q**i) for i in range(k))


def q_tail_mp(x):
    import mpmath

    mpmath.mp.dps = 50
    return mpmath.erfc(mpmath.mpf(x) / mpmath.sqrt(2)) / 2


@pytest.fixture(scope="session")
def db_binary():
    from aferbounds.code_db import build_database

    db, _ = build_database(6, 2, 100)
    return db


@pytest.fixture(scope="session")
def db_k5():
    from aferbounds.code_db import build_database

    db, _ = build_database(5, 2, 100)
    return db


def binom(n, k):
    return math.comb(n, k)


# --- acceptance summary ---------------------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def criterion():
    """Record a PASS/FAIL line for an acceptance criterion.

    Usage: ``with criterion(3, "bound tightness"): ...``
    """
    import contextlib

    @contextlib.contextmanager
    def _rec(num, title):
        try:
            yield
        except BaseException as exc:
            ACCEPTANCE_LINES[num] = f"FAIL  criterion {num:2d}: {title}  ({type(exc).__name__}: {str(exc)[:120]})"
            raise
        ACCEPTANCE_LINES[num] = f"PASS  criterion {num:2d}: {title}"

    return _rec


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[num])
