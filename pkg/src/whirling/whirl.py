"""Whirling at an index, its inverse, closed-form rules and whirl orders.

``whirl_at`` is the definition itself: bump f(i) by one (mod k, values kept
in [1, k]) until the word is back in the family.  The closed forms in
``whirl_direct_at`` must agree with it on every input.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import IndexOutOfRange, InvalidOrder, NotMember, ParseError, ShapeMismatch, UnsupportedFamily
from .words import FamilySpec, FunctionWord, Kind, member_mask, member_values


def succ(v: int, k: int) -> int:
    return v % k + 1


def pred(v: int, k: int) -> int:
    return (v - 2) % k + 1


@dataclass(frozen=True)
class WhirlOrder:
    """Indices whirled in sequence: ``sequence[0]`` is applied first."""

    n: int
    sequence: tuple[int, ...]

    def __post_init__(self):
        seq = self.sequence
        if len(set(seq)) != len(seq) or any(not 1 <= i <= self.n for i in seq):
            raise InvalidOrder(f"bad whirl order {seq} for n={self.n}")
        if set(seq) not in (set(range(1, self.n + 1)), set(range(2, self.n + 1))):
            raise InvalidOrder(f"whirl order {seq} must cover [n] or {{2..n}}")

    @classmethod
    def identity(cls, n: int, start: int = 1) -> "WhirlOrder":
        return cls(n, tuple(range(start, n + 1)))

    @classmethod
    def reversal(cls, n: int, start: int = 1) -> "WhirlOrder":
        return cls(n, tuple(range(n, start - 1, -1)))

    @classmethod
    def random(cls, n: int, rng: random.Random, start: int = 1) -> "WhirlOrder":
        seq = list(range(start, n + 1))
        rng.shuffle(seq)
        return cls(n, tuple(seq))

    @property
    def indices(self) -> frozenset[int]:
        return frozenset(self.sequence)

    def check(self, family: FamilySpec) -> None:
        if self.n != family.n:
            raise InvalidOrder(f"order for n={self.n} used on {family}")
        if 1 not in self.sequence and not family.kind.is_rg:
            raise InvalidOrder(f"{family} needs every index 1..n whirled")

    def normalized(self, family: FamilySpec) -> "WhirlOrder":
        """Drop the trivial w_1 on RG families."""
        if family.kind.is_rg and 1 in self.sequence:
            return WhirlOrder(self.n, tuple(i for i in self.sequence if i != 1))
        return self

    def inverse_positions(self) -> dict[int, int]:
        """index -> position in the sequence (0-based)."""
        return {i: p for p, i in enumerate(self.sequence)}

    def __str__(self) -> str:
        return ",".join(str(i) for i in self.sequence)


def default_start(family: FamilySpec) -> int:
    return 2 if family.kind.is_rg and family.n >= 2 else 1


def parse_order(text: str, family: FamilySpec) -> WhirlOrder:
    """``"id"``, ``"rev"`` or an explicit sequence such as ``"3,5,2,4,6,1"``."""
    text = text.strip()
    start = default_start(family)
    if text in ("id", "identity"):
        order = WhirlOrder.identity(family.n, start)
    elif text in ("rev", "reversal"):
        order = WhirlOrder.reversal(family.n, start)
    else:
        try:
            seq = tuple(int(t) for t in text.replace(" ", "").split(",")) if "," in text or family.n > 9 \
                else tuple(int(c) for c in text)
        except ValueError:
            raise ParseError(f"bad order descriptor {text!r}") from None
        order = WhirlOrder(family.n, seq)
    order.check(family)
    return order


def sweep_orders(family: FamilySpec, seed: int, count: int = 10, reversal: bool = True) -> list[WhirlOrder]:
    """Identity, optionally reversal, then ``count`` seeded random orders; duplicates dropped."""
    start = default_start(family)
    n = family.n
    rng = random.Random(seed)
    orders = [WhirlOrder.identity(n, start)]
    if reversal:
        orders.append(WhirlOrder.reversal(n, start))
    orders += [WhirlOrder.random(n, rng, start) for _ in range(count)]
    seen, out = set(), []
    for o in orders:
        if o.sequence not in seen:
            seen.add(o.sequence)
            out.append(o)
    return out


# -- generic whirl ------------------------------------------------------

def _check(family: FamilySpec, f: FunctionWord, i: int) -> None:
    if not 1 <= i <= family.n:
        raise IndexOutOfRange(f"index {i} outside [1,{family.n}]")
    if f.n != family.n or f.k != family.k:
        raise ShapeMismatch(f"word of shape ({f.n},{f.k}) vs family {family}")
    if not member_values(family, f.values):
        raise NotMember(f"{f} is not in {family}")


def _cycle(family: FamilySpec, f: FunctionWord, i: int, forward: bool) -> FunctionWord:
    """Step f(i) by +1 (or -1) mod k until the word is back in the family."""
    _check(family, f, i)
    k = family.k
    vals = f.values
    v = vals[i - 1]
    kind = family.kind
    # f is a member, so changing f(i) only moves two value counts
    if kind is Kind.SUR:
        if k == 1 or vals.count(v) <= family.m:
            return f
        v = v % k + 1 if forward else (v - 2) % k + 1
        return FunctionWord.trusted(f.n, k, vals[:i - 1] + (v,) + vals[i:])
    if kind is Kind.INJ:
        m = family.m
        for _ in range(k - 1):
            v = v % k + 1 if forward else (v - 2) % k + 1
            if vals.count(v) < m:
                return FunctionWord.trusted(f.n, k, vals[:i - 1] + (v,) + vals[i:])
        return f
    vals = list(vals)
    for _ in range(k - 1):
        v = v % k + 1 if forward else (v - 2) % k + 1
        vals[i - 1] = v
        if member_values(family, vals):
            return FunctionWord.trusted(f.n, k, tuple(vals))
    # the k-th candidate is f itself
    return f


def whirl_at(family: FamilySpec, f: FunctionWord, i: int) -> FunctionWord:
    return _cycle(family, f, i, True)


def whirl_inverse_at(family: FamilySpec, f: FunctionWord, i: int) -> FunctionWord:
    return _cycle(family, f, i, False)


def apply_order(family: FamilySpec, f: FunctionWord, order: WhirlOrder) -> FunctionWord:
    order.check(family)
    for i in order.sequence:
        f = whirl_at(family, f, i)
    return f


def apply_order_inverse(family: FamilySpec, f: FunctionWord, order: WhirlOrder) -> FunctionWord:
    order.check(family)
    for i in reversed(order.sequence):
        f = whirl_inverse_at(family, f, i)
    return f


def partial_whirls(family: FamilySpec, f: FunctionWord, order: WhirlOrder) -> list[FunctionWord]:
    """f followed by each intermediate word of ``apply_order``."""
    out = [f]
    for i in order.sequence:
        out.append(whirl_at(family, out[-1], i))
    return out


# -- closed forms --------------------------------------------------------

def whirl_direct_at(family: FamilySpec, f: FunctionWord, i: int) -> FunctionWord:
    kind = family.kind
    if kind not in (Kind.PARK, Kind.OP, Kind.OPINJ, Kind.RG_NK, Kind.RG_N):
        raise UnsupportedFamily(f"no closed form for {kind.value}")
    _check(family, f, i)
    n, k = family.n, family.k
    vals = f.values
    j = vals[i - 1]
    if kind is Kind.PARK:
        below = sum(1 for v in vals if v <= j)
        new = j + 1 if below > j else 1
    elif kind is Kind.OPINJ:
        left = vals[i - 2] if i > 1 else 0
        right = vals[i] if i < n else k + 1
        new = j + 1 if j + 1 < right else left + 1
    elif kind is Kind.OP:
        left = vals[i - 2] if i > 1 else 1
        right = vals[i] if i < n else k
        new = j + 1 if j + 1 <= right else left
    else:
        earlier = j in vals[: i - 1]
        if kind is Kind.RG_NK and j == k:
            new = k if vals.count(k) == 1 else 1
        elif earlier:
            new = j + 1
        else:
            # i is the first occurrence of j
            if j + 1 in vals:
                cut = vals.index(j + 1)
                only = [p for p in range(cut) if vals[p] == j] == [i - 1]
            else:
                only = False
            new = j if only else 1
    return f.replace(i, new)


# -- bulk whirl -------------------------------------------------------------

def bulk_whirl_at(family: FamilySpec, arr: np.ndarray, i: int, inverse: bool = False) -> np.ndarray:
    """``whirl_at`` applied to every row of ``arr`` (rows must be members)."""
    k = family.k
    col = i - 1
    out = arr.copy()
    pending = np.arange(arr.shape[0])
    base = arr[:, col].astype(np.int64) - 1
    sign = -1 if inverse else 1
    for step in range(1, k):
        if pending.size == 0:
            break
        trial = out[pending]
        cand = ((base[pending] + sign * step) % k + 1).astype(arr.dtype)
        trial[:, col] = cand
        ok = member_mask(family, trial)
        hit = pending[ok]
        out[hit, col] = cand[ok]
        pending = pending[~ok]
    return out


def _count_whirl(family: FamilySpec, arr: np.ndarray, counts: np.ndarray, i: int, inverse: bool) -> None:
    """In-place whirl at i for Inj_m / Sur_m, driven by per-row value counts.

    Only the multiplicities of the values matter for these families, so the
    first admissible value can be read off the counts with f(i) removed.
    ``counts`` is the flattened (rows, k) count table.
    """
    k, m = family.k, family.m
    base = np.arange(arr.shape[0]) * k
    old = arr[:, i - 1].astype(np.int64) - 1
    counts[base + old] -= 1
    sign = -1 if inverse else 1
    new = old.copy()
    if family.kind is Kind.INJ:
        pending = np.arange(arr.shape[0])
        for step in range(1, k):
            if pending.size == 0:
                break
            cand = (old[pending] + sign * step) % k
            ok = counts[base[pending] + cand] < m
            new[pending[ok]] = cand[ok]
            pending = pending[~ok]
    elif k > 1:
        # leaving f(i) is allowed only if its value keeps m copies elsewhere
        new = np.where(counts[base + old] >= m, (old + sign) % k, old)
    counts[base + new] += 1
    arr[:, i - 1] = new + 1


def value_count_table(arr: np.ndarray, k: int) -> np.ndarray:
    """Flattened (rows, k) table of value multiplicities."""
    rows = arr.shape[0]
    idx = np.arange(rows)[:, None] * k + (arr.astype(np.int64) - 1)
    return np.bincount(idx.ravel(), minlength=rows * k).astype(np.int16)


def bulk_apply_order(family: FamilySpec, arr: np.ndarray, order: WhirlOrder, inverse: bool = False,
                     generic: bool = False) -> np.ndarray:
    """``apply_order`` on every row; ``generic=True`` forces the predicate loop."""
    order.check(family)
    seq: Sequence[int] = reversed(order.sequence) if inverse else order.sequence
    if family.kind in (Kind.INJ, Kind.SUR) and not generic:
        out = np.array(arr, copy=True)
        counts = value_count_table(out, family.k)
        for i in seq:
            _count_whirl(family, out, counts, i, inverse)
        return out
    for i in seq:
        arr = bulk_whirl_at(family, arr, i, inverse)
    return arr
