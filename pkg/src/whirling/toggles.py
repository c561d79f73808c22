"""Toggles on the cardinality band L_r(n) = {X subset of [n] : r <= #X <= n-r}.

Subsets are bitmasks: element e is bit e-1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import NotMember, OutOfRange
from .orbits import HomomesyReport, build_report
from .whirl import WhirlOrder
from .words import FamilySpec, FunctionWord, is_member, make_word


@dataclass(frozen=True)
class BoundedSubsetFamily:
    n: int
    r: int

    def __post_init__(self):
        if self.n < 1 or self.r < 0 or 2 * self.r > self.n:
            raise OutOfRange(f"need 0 <= r <= n/2, got n={self.n}, r={self.r}")

    def __contains__(self, mask: int) -> bool:
        return 0 <= mask < (1 << self.n) and self.r <= bin(mask).count("1") <= self.n - self.r

    def members(self) -> list[int]:
        return [x for x in range(1 << self.n) if x in self]

    def word_family(self) -> FamilySpec:
        """The family Inj_{n-r}(n,2) matched with this band by ``subset_of_word``."""
        return FamilySpec.inj(self.n - self.r, self.n, 2)

    def __str__(self):
        return f"band:n={self.n},r={self.r}"


def to_mask(X: Iterable[int] | int) -> int:
    if isinstance(X, int):
        return X
    mask = 0
    for e in X:
        mask |= 1 << (e - 1)
    return mask


def to_set(mask: int) -> frozenset[int]:
    return frozenset(e + 1 for e in range(mask.bit_length()) if mask >> e & 1)


def format_subset(mask: int) -> str:
    return "{" + ",".join(str(e) for e in sorted(to_set(mask))) + "}"


def format_mask(mask: int) -> str:
    return hex(mask)


def toggle_at(n: int, r: int, X, e: int) -> int:
    """t_e: add or remove e when the result stays in L_r(n); otherwise leave X."""
    fam = BoundedSubsetFamily(n, r)
    mask = to_mask(X)
    if mask not in fam:
        raise NotMember(f"{format_subset(mask)} is not in L_{r}({n})")
    if not 1 <= e <= n:
        raise OutOfRange(f"element {e} outside [1,{n}]")
    size = bin(mask).count("1")
    bit = 1 << (e - 1)
    if mask & bit:
        return mask ^ bit if size >= r + 1 else mask
    return mask | bit if size <= n - r - 1 else mask


def apply_toggles(n: int, r: int, X, order: WhirlOrder) -> int:
    mask = to_mask(X)
    for e in order.sequence:
        mask = toggle_at(n, r, mask, e)
    return mask


def subset_of_word(f: FunctionWord) -> int:
    """S(f) = {i : f(i) = 1} for a word in Inj_{n-r}(n,2)."""
    if f.k != 2:
        raise NotMember(f"{f} is not a word in [2]")
    return to_mask(i for i, v in enumerate(f.values, start=1) if v == 1)


def word_of_subset(n: int, r: int, X) -> FunctionWord:
    """Inverse of ``subset_of_word``."""
    fam = BoundedSubsetFamily(n, r)
    mask = to_mask(X)
    if mask not in fam:
        raise NotMember(f"{format_subset(mask)} is not in L_{r}({n})")
    f = make_word(n, 2, [1 if mask >> (i - 1) & 1 else 2 for i in range(1, n + 1)])
    assert is_member(fam.word_family(), f)
    return f


def toggle_orbits(n: int, r: int, order: WhirlOrder) -> list[list[int]]:
    """T_pi-orbits on L_r(n), each starting at its least mask, sorted by that mask."""
    fam = BoundedSubsetFamily(n, r)
    if order.n != n or set(order.sequence) != set(range(1, n + 1)):
        raise OutOfRange(f"order {order} must use every element of [1,{n}] once")
    seen: set[int] = set()
    orbits = []
    for x in fam.members():
        if x in seen:
            continue
        orbit = [x]
        seen.add(x)
        y = apply_toggles(n, r, x, order)
        while y != x:
            orbit.append(y)
            seen.add(y)
            y = apply_toggles(n, r, y, order)
        orbits.append(orbit)
    return orbits


def check_toggle_homomesy(n: int, r: int, order: WhirlOrder, include_values: bool = False) -> HomomesyReport:
    """Exact cardinality averages over the T_pi-orbits of L_r(n)."""
    orbits = toggle_orbits(n, r, order)
    card = [[bin(x).count("1") for x in orb] for orb in orbits]
    return build_report([format_mask(o[0]) for o in orbits], [len(o) for o in orbits], [sum(c) for c in card],
                        str(BoundedSubsetFamily(n, r)), str(order), "card", card if include_values else None)
