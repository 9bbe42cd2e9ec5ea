"""A small text grammar for point-multiset constructions.

Examples::

    s*P[5] - (P[4] - P{I3})
    (s+1)*P[5] - (P[4] + P[3..5])
    s*P[5] + G{10_5_4}

Atoms:

* ``P[a..b]`` (or ``P[a,b]``): subspace on coordinates a..b inclusive; ``P[b]`` is ``P[1..b]``
* ``P{i,j,...}``: subspace on an explicit coordinate set
* ``P{I t}``, ``P{T t}``, ``P{T4'}``: identity columns, frame, alternative 4-frame
* ``G{n_k_d}``: column multiset of a bundled fixture matrix

``+`` (alias ``∪``) is multiplicity sum, ``-`` (alias ``\\``) is multiset
difference, ``*`` scales by an integer.  ``s`` is the row parameter.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .linear_codes import GenMatrix, parse_matrix
from .projective_geometry import (
    PointMultiset,
    frame_points,
    frame_points_alt,
    identity_points,
    subspace_points,
)


class ConstructionSyntaxError(ValueError):
    def __init__(self, msg: str, pos: int, text: str):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.pos = pos


_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+)
  | (?P<s>s\b)
  | (?P<op>[+\-*()]|∪|\\)
  | (?P<prange>P\[\s*(?P<a>\d+)\s*(?:(?:\.\.|,)\s*(?P<b>\d+)\s*)?\])
  | (?P<pset>P\{\s*(?P<body>[^}]*)\})
  | (?P<fix>G\{\s*(?P<fn>\d+)_(?P<fk>\d+)_(?P<fd>\d+)\s*\})
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Atom:
    kind: str  # range, set, I, T, T4p, fixture
    args: tuple
    pos: int

    def min_k(self) -> int:
        if self.kind in ("range", "set"):
            return max(self.args)
        if self.kind in ("I", "T"):
            return self.args[0]
        if self.kind == "T4p":
            return 4
        return self.args[1]


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ConstructionSyntaxError("unexpected character", pos, text)
        if m.group("ws"):
            pass
        elif m.group("num"):
            out.append(("num", int(m.group("num")), pos))
        elif m.group("s"):
            out.append(("s", None, pos))
        elif m.group("op"):
            op = {"∪": "+", "\\": "-"}.get(m.group("op"), m.group("op"))
            out.append(("op", op, pos))
        elif m.group("prange"):
            a = int(m.group("a"))
            b = m.group("b")
            lo, hi = (1, a) if b is None else (a, int(b))
            if lo < 1 or hi < lo:
                raise ConstructionSyntaxError("empty coordinate range", pos, text)
            out.append(("atom", Atom("range", tuple(range(lo, hi + 1)), pos), pos))
        elif m.group("pset"):
            out.append(("atom", _parse_set(m.group("body").strip(), pos, text), pos))
        elif m.group("fix"):
            args = (int(m.group("fn")), int(m.group("fk")), int(m.group("fd")))
            out.append(("atom", Atom("fixture", args, pos), pos))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def _parse_set(body: str, pos: int, text: str) -> Atom:
    m = re.fullmatch(r"I\s*(\d+)", body)
    if m:
        return Atom("I", (int(m.group(1)),), pos)
    m = re.fullmatch(r"T\s*(\d+)", body)
    if m:
        return Atom("T", (int(m.group(1)),), pos)
    if re.fullmatch(r"T\s*4\s*'", body):
        return Atom("T4p", (), pos)
    if re.fullmatch(r"\d+(\s*,\s*\d+)*", body):
        coords = tuple(sorted({int(x) for x in body.split(",")}))
        if coords[0] < 1:
            raise ConstructionSyntaxError("coordinates are 1-based", pos, text)
        return Atom("set", coords, pos)
    raise ConstructionSyntaxError(f"unknown atom P{{{body}}}", pos, text)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg):
        raise ConstructionSyntaxError(msg, self.peek()[2], self.text)

    def parse(self):
        node = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected token")
        return node

    def expr(self):
        node = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()
            node = (op[1], node, self.term(), op[2])
        return node

    def term(self):
        node = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            op = self.take()
            node = ("*", node, self.factor(), op[2])
        return node

    def factor(self):
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            return ("num", val, pos)
        if kind == "s":
            self.take()
            return ("s", None, pos)
        if kind == "atom":
            self.take()
            return ("atom", val, pos)
        if kind == "op" and val == "(":
            self.take()
            node = self.expr()
            if self.peek()[1] != ")":
                self.fail("expected ')'")
            self.take()
            return node
        self.fail("expected a number, 's', an atom or '('")


@dataclass(frozen=True)
class Construction:
    text: str
    tree: tuple
    min_k: int

    def build(self, s: int = 0, k: int | None = None, q: int = 2) -> PointMultiset:
        k = self.min_k if k is None else k
        if k < self.min_k:
            raise ValueError(f"construction needs k >= {self.min_k}")
        val = _eval(self.tree, s, k, q, self.text)
        if isinstance(val, int):
            raise ValueError("construction evaluates to a number, not a multiset")
        return val


def _walk_atoms(node):
    if node[0] == "atom":
        yield node[1]
    elif node[0] in "+-*":
        yield from _walk_atoms(node[1])
        yield from _walk_atoms(node[2])


def parse_construction(text: str) -> Construction:
    tree = _Parser(text).parse()
    atoms = list(_walk_atoms(tree))
    if not atoms:
        raise ConstructionSyntaxError("construction has no point-set atom", 0, text)
    return Construction(text, tree, max(a.min_k() for a in atoms))


def _eval(node, s, k, q, text):
    kind = node[0]
    if kind == "num":
        return node[1]
    if kind == "s":
        return s
    if kind == "atom":
        return build_atom(node[1], k, q)
    a = _eval(node[1], s, k, q, text)
    b = _eval(node[2], s, k, q, text)
    pos = node[3]
    if kind == "*":
        if isinstance(a, int) and isinstance(b, int):
            return a * b
        if isinstance(a, int):
            a, b = b, a
        if not isinstance(b, int):
            raise ConstructionSyntaxError("cannot multiply two multisets", pos, text)
        if b < 0:
            raise ValueError(f"negative multiplier {b} (position {pos})")
        return a.scale(b)
    if isinstance(a, int) != isinstance(b, int):
        raise ConstructionSyntaxError("cannot mix numbers and multisets with +/-", pos, text)
    return a + b if kind == "+" else a - b


def build_atom(atom: Atom, k: int, q: int) -> PointMultiset:
    if atom.kind in ("range", "set"):
        return subspace_points(atom.args, k, q)
    if atom.kind == "I":
        return identity_points(atom.args[0], k, q)
    if atom.kind == "T":
        return frame_points(atom.args[0], k, q)
    if atom.kind == "T4p":
        return frame_points_alt(k, q)
    G = load_fixture(*atom.args)
    if G.k != k:
        raise ValueError(f"fixture G{{{'_'.join(map(str, atom.args))}}} has k={G.k}, not {k}")
    if G.q != q:
        raise ValueError(f"fixture is over GF({G.q}), not GF({q})")
    return PointMultiset.from_matrix(G)


def fixture_names() -> list[str]:
    files = resources.files("aferbounds").joinpath("fixtures")
    return sorted(p.name for p in files.iterdir() if p.name.endswith(".txt"))


@lru_cache(maxsize=None)
def load_fixture(n: int, k: int, d: int) -> GenMatrix:
    path = resources.files("aferbounds").joinpath("fixtures", f"G_{n}_{k}_{d}.txt")
    if not path.is_file():
        raise FileNotFoundError(f"no fixture G_{n}_{k}_{d}.txt")
    return parse_matrix(path.read_text())


def construct(text: str, s: int = 0, k: int | None = None, q: int = 2) -> PointMultiset:
    return parse_construction(text).build(s=s, k=k, q=q)
