"""Parking functions, transposition factorizations and noncrossing trees.

Permutations are composed right to left: the product (a1 b1)(a2 b2)...(an bn)
sends x to t1(t2(...tn(x))).  The long cycle (n+1, n, ..., 2, 1) is the map
x -> x-1 with 1 -> n+1.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .errors import BadProduct, Crossing, LabelOrder, NoConsistentFactorization, NotMember, NotTree, ParseError
from .whirl import WhirlOrder, apply_order, whirl_at
from .words import FamilySpec, FunctionWord, is_member, make_word


def _park(n: int) -> FamilySpec:
    return FamilySpec.park(n)


def _check_park(f: FunctionWord) -> FamilySpec:
    fam = _park(f.n)
    if f.k != f.n or not is_member(fam, f):
        raise NotMember(f"{f} is not a parking function")
    return fam


def _shift(x: int, t: int, size: int) -> int:
    return (x - 1 + t) % size + 1


@dataclass(frozen=True)
class TranspositionFactorization:
    n: int
    cycles: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.cycles) != self.n:
            raise BadProduct(f"expected {self.n} transpositions, got {len(self.cycles)}")
        for a, b in self.cycles:
            if not 1 <= a < b <= self.n + 1:
                raise BadProduct(f"bad transposition ({a} {b}) for n={self.n}")

    @classmethod
    def from_pairs(cls, n: int, pairs) -> "TranspositionFactorization":
        return cls(n, tuple(tuple(sorted((int(a), int(b)))) for a, b in pairs))

    def product(self) -> list[int]:
        """Right-to-left product as a list p with p[x] the image of x (index 0 unused)."""
        size = self.n + 1
        perm = list(range(size + 1))
        for x in range(1, size + 1):
            y = x
            for a, b in reversed(self.cycles):
                if y == a:
                    y = b
                elif y == b:
                    y = a
            perm[x] = y
        return perm

    def is_long_cycle(self) -> bool:
        size = self.n + 1
        perm = self.product()
        return all(perm[x] == (x - 2) % size + 1 for x in range(1, size + 1))

    def lesser(self) -> tuple[int, ...]:
        return tuple(a for a, _ in self.cycles)

    def __str__(self):
        sep = "" if self.n + 1 <= 9 else " "
        return "".join(f"({a}{sep}{b})" for a, b in self.cycles)

    def to_dict(self):
        return {"n": self.n, "cycles": [list(c) for c in self.cycles]}


def parse_factorization(text: str, n: int | None = None) -> TranspositionFactorization:
    """Parse "(15)(34)(35)(23)" or "(1 5)(3 4)..." ."""
    groups = re.findall(r"\(([^()]*)\)", text)
    if not groups or re.sub(r"\([^()]*\)", "", text).strip():
        raise ParseError(f"bad factorization {text!r}")
    pairs = []
    for g in groups:
        parts = re.split(r"[\s,]+", g.strip())
        if len(parts) == 1 and len(parts[0]) == 2:
            parts = list(parts[0])
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError(f"bad transposition ({g})")
        pairs.append((int(parts[0]), int(parts[1])))
    return TranspositionFactorization.from_pairs(n if n is not None else len(pairs), pairs)


def wbar(f: FunctionWord) -> FunctionWord:
    """Whirl at index 1, then move the first entry to the end."""
    fam = _check_park(f)
    g = whirl_at(fam, f, 1)
    return make_word(f.n, f.k, g.values[1:] + g.values[:1])


def park_orbit_rows(f: FunctionWord) -> list[FunctionWord]:
    """The identity-order orbit of f, starting at f."""
    fam = _check_park(f)
    order = WhirlOrder.identity(f.n)
    rows = [f]
    while True:
        g = apply_order(fam, rows[-1], order)
        if g == f:
            return rows
        rows.append(g)


def park_to_factorization(f: FunctionWord) -> TranspositionFactorization:
    """Recover the factorization of f from its whirl orbit.

    In the row just above a 1 in column i, the i-th transposition contains
    n+1; shifting that row's pair back to row 0 gives a candidate pair, and
    the candidate must reproduce the lesser entry of column i in every row.
    """
    orbit = park_orbit_rows(f)
    n = f.n
    size = n + 1
    # Park(1) = {1} is fixed, so its orbit has length 1 rather than n+1
    if size % len(orbit):
        raise NoConsistentFactorization(f"orbit of {f} has length {len(orbit)}, expected {size}")
    rows = [orbit[t % len(orbit)] for t in range(size)]
    cycles = []
    for i in range(n):
        found = set()
        for t in range(size):
            if rows[t].values[i] != 1:
                continue
            above = (t - 1) % size
            pair = (_shift(rows[above].values[i], -above, size), _shift(size, -above, size))
            if pair[0] == pair[1]:
                continue
            ok = all(min(_shift(pair[0], s, size), _shift(pair[1], s, size)) == rows[s].values[i]
                     for s in range(size))
            if ok:
                found.add(tuple(sorted(pair)))
        if len(found) != 1:
            raise NoConsistentFactorization(f"{len(found)} consistent transpositions for index {i + 1} of {f}")
        cycles.append(found.pop())
    fac = TranspositionFactorization(n, tuple(cycles))
    if not fac.is_long_cycle():
        raise NoConsistentFactorization(f"recovered factorization {fac} does not multiply to the long cycle")
    return fac


def factorization_to_park(fac: TranspositionFactorization) -> FunctionWord:
    if not fac.is_long_cycle():
        raise BadProduct(f"{fac} does not multiply to (n+1, n, ..., 1)")
    return make_word(fac.n, fac.n, fac.lesser())


def conjugate_factorization(fac: TranspositionFactorization) -> TranspositionFactorization:
    """Move the first transposition to the end and add 1 mod n+1 to its entries."""
    if not fac.is_long_cycle():
        raise BadProduct(f"{fac} does not multiply to (n+1, n, ..., 1)")
    size = fac.n + 1
    a, b = fac.cycles[0]
    moved = tuple(sorted((_shift(a, 1, size), _shift(b, 1, size))))
    return TranspositionFactorization(fac.n, fac.cycles[1:] + (moved,))


def conjugate_all(fac: TranspositionFactorization) -> TranspositionFactorization:
    """Add 1 mod n+1 to every entry of every transposition (the effect of a full whirl)."""
    size = fac.n + 1
    return TranspositionFactorization.from_pairs(
        fac.n, [(_shift(a, 1, size), _shift(b, 1, size)) for a, b in fac.cycles])


# -- trees ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LabeledTree:
    """Edges (label, a, b) on the points 1..n+1 placed clockwise on a circle."""

    n: int
    edges: tuple[tuple[int, int, int], ...]

    def rotated(self, steps: int = 1) -> "LabeledTree":
        size = self.n + 1
        return LabeledTree(self.n, tuple(
            (lab, *sorted((_shift(a, steps, size), _shift(b, steps, size)))) for lab, a, b in self.edges))

    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def to_dict(self):
        return {"n": self.n, "edges": [{"label": lab, "a": a, "b": b} for lab, a, b in self.edges]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict()) + "\n"

    def to_text(self) -> str:
        """Per point, the labels of its edges in clockwise order."""
        lines = []
        for v in range(1, self.n + 2):
            lines.append(f"{v}: " + " ".join(str(lab) for lab, _ in _around(self, v)))
        return "\n".join(lines) + "\n"


def _around(tree: LabeledTree, v: int) -> list[tuple[int, int]]:
    """(label, other end) for edges at v, sorted clockwise starting just after v."""
    size = tree.n + 1
    out = []
    for lab, a, b in tree.edges:
        if v in (a, b):
            u = b if v == a else a
            out.append((lab, u))
    out.sort(key=lambda e: (e[1] - v) % size)
    return out


def _strictly_between(x: int, a: int, b: int) -> bool:
    return a < x < b


def chords_cross(e1: tuple[int, int], e2: tuple[int, int]) -> bool:
    a, b = sorted(e1)
    c, d = e2
    return _strictly_between(c, a, b) != _strictly_between(d, a, b) and len({a, b, c, d}) == 4


def check_tree(tree: LabeledTree) -> None:
    """Raise unless the edges form a noncrossing tree with clockwise-increasing labels."""
    size = tree.n + 1
    parent = list(range(size + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, a, b in tree.edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            raise NotTree(f"edge ({a} {b}) closes a cycle")
        parent[ra] = rb
    if len(tree.edges) != tree.n:
        raise NotTree("a tree on n+1 points needs n edges")
    for x, (_, a, b) in enumerate(tree.edges):
        for _, c, d in tree.edges[x + 1:]:
            if chords_cross((a, b), (c, d)):
                raise Crossing(f"chords ({a} {b}) and ({c} {d}) cross")
    for v in range(1, size + 1):
        labels = [lab for lab, _ in _around(tree, v)]
        if labels != sorted(labels):
            raise LabelOrder(f"labels {labels} at point {v} do not increase clockwise")


def factorization_to_tree(fac: TranspositionFactorization) -> LabeledTree:
    if not fac.is_long_cycle():
        raise BadProduct(f"{fac} does not multiply to (n+1, n, ..., 1)")
    tree = LabeledTree(fac.n, tuple((i + 1, a, b) for i, (a, b) in enumerate(fac.cycles)))
    check_tree(tree)
    return tree
