"""Function words [n] -> [k], the families they live in, and family enumeration.

Words are stored 1-based, exactly as written in one-line notation.  The
bulk helpers (``member_mask``, ``FamilyCensus.array``) work on integer
arrays of shape ``(N, n)`` holding the same 1-based values.
"""
from __future__ import annotations

import enum
import functools
import os
import re
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    InvalidFamily,
    LengthMismatch,
    OutOfRange,
    ParseError,
    ShapeMismatch,
    SizeLimit,
)

#: Ceiling on the number of candidate words k**n scanned by enumeration.
DEFAULT_CANDIDATE_LIMIT = 10**8

_CHUNK = 1 << 18


def candidate_limit() -> int:
    value = os.environ.get("WHIRL_SIZE_LIMIT")
    return int(value) if value else DEFAULT_CANDIDATE_LIMIT


@functools.total_ordering
@dataclass(frozen=True)
class FunctionWord:
    """A function f: [n] -> [k] given by its values f(1), ..., f(n)."""

    n: int
    k: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.n:
            raise LengthMismatch(f"expected {self.n} values, got {len(self.values)}")
        for v in self.values:
            if not 1 <= v <= self.k:
                raise OutOfRange(f"value {v} outside [1,{self.k}]")

    def __getitem__(self, i: int) -> int:
        """f(i) for 1 <= i <= n."""
        if not 1 <= i <= self.n:
            raise IndexError(i)
        return self.values[i - 1]

    def __iter__(self):
        return iter(self.values)

    def __len__(self):
        return self.n

    def __lt__(self, other: "FunctionWord") -> bool:
        return (self.n, self.k, self.values) < (other.n, other.k, other.values)

    @classmethod
    def trusted(cls, n: int, k: int, values: tuple[int, ...]) -> "FunctionWord":
        """Build a word whose values are already known to lie in [1,k]."""
        f = object.__new__(cls)
        object.__setattr__(f, "n", n)
        object.__setattr__(f, "k", k)
        object.__setattr__(f, "values", values)
        return f

    def replace(self, i: int, value: int) -> "FunctionWord":
        vals = list(self.values)
        vals[i - 1] = value
        return FunctionWord(self.n, self.k, tuple(vals))

    def __str__(self) -> str:
        return format_values(self.values, self.k)

    def __repr__(self) -> str:
        return f"FunctionWord({self}, n={self.n}, k={self.k})"


def format_values(values: Iterable[int], k: int) -> str:
    if k <= 9:
        return "".join(str(v) for v in values)
    return ",".join(str(v) for v in values)


def make_word(n: int, k: int, values: Sequence[int]) -> FunctionWord:
    if n < 1 or k < 1:
        raise OutOfRange("n and k must be positive")
    return FunctionWord(n, k, tuple(int(v) for v in values))


def parse_word(text: str, k: int, n: int | None = None) -> FunctionWord:
    """Parse one-line notation: ``"2753"`` or ``"4,6,11,10,5,6"``."""
    text = text.strip()
    if "," in text:
        parts = [p for p in text.split(",")]
    else:
        parts = list(text)
    try:
        values = [int(p) for p in parts]
    except ValueError:
        raise ParseError(f"not a word: {text!r}") from None
    if n is None:
        n = len(values)
    return make_word(n, k, values)


class Kind(enum.Enum):
    INJ = "inj"
    SUR = "sur"
    PARK = "park"
    OP = "op"
    OPINJ = "opinj"
    RG_NK = "rg"
    RG_N = "rgn"
    RGNC_NK = "rgnc"
    RGNC_N = "rgncn"

    @property
    def is_rg(self) -> bool:
        return self in (Kind.RG_NK, Kind.RG_N, Kind.RGNC_NK, Kind.RGNC_N)

    @property
    def is_noncrossing(self) -> bool:
        return self in (Kind.RGNC_NK, Kind.RGNC_N)


_FORCED_K = (Kind.PARK, Kind.RG_N, Kind.RGNC_N)


@dataclass(frozen=True)
class FamilySpec:
    kind: Kind
    n: int
    k: int
    m: int | None = None

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise InvalidFamily("n and k must be positive")
        if self.kind in (Kind.INJ, Kind.SUR):
            if self.m is None or self.m < 1:
                raise InvalidFamily(f"{self.kind.value} needs a positive m")
        elif self.m is not None:
            raise InvalidFamily(f"{self.kind.value} takes no m")
        if self.kind in _FORCED_K and self.k != self.n:
            raise InvalidFamily(f"{self.kind.value} forces k = n")
        if self.kind is Kind.OPINJ and self.n > self.k:
            raise InvalidFamily("opinj requires n <= k")
        if self.kind in (Kind.RG_NK, Kind.RGNC_NK) and self.k > self.n:
            raise InvalidFamily("rg(n,k) requires k <= n")

    # constructors -------------------------------------------------------
    @classmethod
    def inj(cls, m, n, k):
        return cls(Kind.INJ, n, k, m)

    @classmethod
    def sur(cls, m, n, k):
        return cls(Kind.SUR, n, k, m)

    @classmethod
    def park(cls, n):
        return cls(Kind.PARK, n, n)

    @classmethod
    def op(cls, n, k):
        return cls(Kind.OP, n, k)

    @classmethod
    def opinj(cls, n, k):
        return cls(Kind.OPINJ, n, k)

    @classmethod
    def rg(cls, n, k=None):
        return cls(Kind.RG_N, n, n) if k is None else cls(Kind.RG_NK, n, k)

    @classmethod
    def rgnc(cls, n, k=None):
        return cls(Kind.RGNC_N, n, n) if k is None else cls(Kind.RGNC_NK, n, k)

    def __str__(self) -> str:
        kind = self.kind
        if kind in (Kind.INJ, Kind.SUR):
            return f"{kind.value}:m={self.m},n={self.n},k={self.k}"
        if kind is Kind.PARK:
            return f"park:n={self.n}"
        if kind is Kind.RG_N:
            return f"rg:n={self.n}"
        if kind is Kind.RGNC_N:
            return f"rgnc:n={self.n}"
        return f"{kind.value}:n={self.n},k={self.k}"

    def word(self, values) -> FunctionWord:
        if isinstance(values, str):
            return parse_word(values, self.k, self.n)
        return make_word(self.n, self.k, values)


def parse_params(text: str, allowed: set[str]) -> dict[str, int]:
    params = {}
    if not text:
        return params
    for item in text.split(","):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in allowed:
            raise ParseError(f"unknown field {key!r}")
        if key in params:
            raise ParseError(f"duplicate field {key!r}")
        try:
            params[key] = int(value)
        except ValueError:
            raise ParseError(f"field {key!r} is not an integer") from None
    return params


def parse_family(text: str) -> FamilySpec:
    """Parse descriptors such as ``"inj:m=2,n=6,k=4"`` or ``"rg:n=5"``."""
    name, _, rest = text.strip().partition(":")
    name = name.lower()
    specs = {
        "inj": {"m", "n", "k"},
        "sur": {"m", "n", "k"},
        "park": {"n"},
        "op": {"n", "k"},
        "opinj": {"n", "k"},
        "rg": {"n", "k"},
        "rgnc": {"n", "k"},
    }
    if name not in specs:
        raise ParseError(f"unknown family {name!r}")
    p = parse_params(rest, specs[name])
    required = specs[name] - ({"k"} if name in ("rg", "rgnc") else set())
    missing = required - p.keys()
    if missing:
        raise ParseError(f"missing field(s) {sorted(missing)} for {name}")
    if name == "inj":
        return FamilySpec.inj(p["m"], p["n"], p["k"])
    if name == "sur":
        return FamilySpec.sur(p["m"], p["n"], p["k"])
    if name == "park":
        return FamilySpec.park(p["n"])
    if name == "op":
        return FamilySpec.op(p["n"], p["k"])
    if name == "opinj":
        return FamilySpec.opinj(p["n"], p["k"])
    if name == "rg":
        return FamilySpec.rg(p["n"], p.get("k"))
    return FamilySpec.rgnc(p["n"], p.get("k"))


# -- scalar membership (reference predicates) ----------------------------

def _counts(values, k):
    counts = [0] * (k + 1)
    for v in values:
        counts[v] += 1
    return counts


def _is_rg(values, k, surjective):
    first = {}
    for i, v in enumerate(values):
        first.setdefault(v, i)
    if surjective and len(first) != k:
        return False
    for j in range(1, k):
        if j + 1 in first:
            if j not in first or first[j] > first[j + 1]:
                return False
    return True


def is_noncrossing(values: Sequence[int], k: int) -> bool:
    """True iff no subsequence a, b, a, b with a != b occurs."""
    # state[a][b]: 0 none, 1 saw a, 2 saw a..b, 3 saw a..b..a
    state = [[0] * (k + 1) for _ in range(k + 1)]
    for x in values:
        for a in range(1, k + 1):
            if a == x:
                continue
            s = state[a][x]
            if s == 3:
                return False
            if s == 1:
                state[a][x] = 2
        row = state[x]
        for b in range(1, k + 1):
            if b == x:
                continue
            if row[b] == 0:
                row[b] = 1
            elif row[b] == 2:
                row[b] = 3
    return True


def is_member(family: FamilySpec, f: FunctionWord) -> bool:
    if f.n != family.n or f.k != family.k:
        raise ShapeMismatch(f"word of shape ({f.n},{f.k}) vs family {family}")
    return member_values(family, f.values)


def member_values(family: FamilySpec, vals: Sequence[int]) -> bool:
    kind, n, k = family.kind, family.n, family.k
    if kind is Kind.INJ:
        m = family.m
        return m >= n or max(map(vals.count, set(vals))) <= m
    if kind is Kind.SUR:
        m = family.m
        return min(map(vals.count, range(1, k + 1))) >= m
    if kind is Kind.PARK:
        counts = _counts(vals, k)
        below = 0
        for i in range(1, n + 1):
            below += counts[i]
            if below < i:
                return False
        return True
    if kind is Kind.OP:
        return all(a <= b for a, b in zip(vals, vals[1:]))
    if kind is Kind.OPINJ:
        return all(a < b for a, b in zip(vals, vals[1:]))
    surjective = kind in (Kind.RG_NK, Kind.RGNC_NK)
    if not _is_rg(vals, k, surjective):
        return False
    if kind.is_noncrossing:
        return is_noncrossing(vals, k)
    return True


# -- bulk membership ------------------------------------------------------

def value_counts(arr: np.ndarray, k: int) -> np.ndarray:
    """Array of shape (N, k) with column v-1 counting occurrences of v."""
    out = np.empty((arr.shape[0], k), dtype=np.int32)
    for v in range(1, k + 1):
        out[:, v - 1] = (arr == v).sum(axis=1)
    return out


def _crossing_mask(arr: np.ndarray) -> np.ndarray:
    n = arr.shape[1]
    bad = np.zeros(arr.shape[0], dtype=bool)
    for a, b, c, d in combinations(range(n), 4):
        bad |= (arr[:, a] == arr[:, c]) & (arr[:, b] == arr[:, d]) & (arr[:, a] != arr[:, b])
    return bad


def member_mask(family: FamilySpec, arr: np.ndarray) -> np.ndarray:
    """Vectorised membership over the rows of ``arr`` (shape (N, n))."""
    kind, n, k = family.kind, family.n, family.k
    if arr.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    if kind is Kind.INJ:
        return (value_counts(arr, k) <= family.m).all(axis=1)
    if kind is Kind.SUR:
        return (value_counts(arr, k) >= family.m).all(axis=1)
    if kind is Kind.PARK:
        return (np.sort(arr, axis=1) <= np.arange(1, n + 1)).all(axis=1)
    if kind is Kind.OP:
        return (np.diff(arr, axis=1) >= 0).all(axis=1)
    if kind is Kind.OPINJ:
        return (np.diff(arr, axis=1) > 0).all(axis=1)
    # restricted growth: f(1) = 1 and each entry at most one above the prefix max
    prefix = np.maximum.accumulate(arr, axis=1)
    ok = (arr[:, 0] == 1) & (arr[:, 1:] <= prefix[:, :-1] + 1).all(axis=1)
    if kind in (Kind.RG_NK, Kind.RGNC_NK):
        ok &= prefix[:, -1] == k
    if kind.is_noncrossing and n >= 4:
        idx = np.flatnonzero(ok)
        ok[idx[_crossing_mask(arr[idx])]] = False
    return ok


# -- enumeration ----------------------------------------------------------

def word_dtype(k: int):
    return np.int8 if k < 127 else (np.int16 if k < 32767 else np.int32)


def word_codes(arr: np.ndarray, k: int) -> np.ndarray:
    """Lexicographic rank of each row among all k**n words."""
    n = arr.shape[1]
    powers = k ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return (arr.astype(np.int64) - 1) @ powers


def decode_codes(codes: np.ndarray, n: int, k: int) -> np.ndarray:
    powers = k ** np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((codes[:, None] // powers) % k + 1).astype(word_dtype(k))


class FamilyCensus:
    """All members of a family in lexicographic order."""

    def __init__(self, family: FamilySpec, array: np.ndarray):
        self.family = family
        self.array = array
        self.array.flags.writeable = False
        self._codes = None

    @property
    def cardinality(self) -> int:
        return int(self.array.shape[0])

    def __len__(self):
        return self.cardinality

    @functools.cached_property
    def words(self) -> list[FunctionWord]:
        n, k = self.family.n, self.family.k
        # census rows are in range by construction
        trusted = FunctionWord.trusted
        return [trusted(n, k, tuple(row)) for row in self.array.tolist()]

    @property
    def codes(self) -> np.ndarray:
        if self._codes is None:
            self._codes = word_codes(self.array, self.family.k)
            self._codes.flags.writeable = False
        return self._codes

    def index_of(self, arr: np.ndarray) -> np.ndarray:
        """Census indices of the rows of ``arr``; every row must be a member."""
        codes = word_codes(arr, self.family.k)
        idx = np.searchsorted(self.codes, codes)
        if idx.size and (idx.max() >= self.cardinality or (self.codes[idx] != codes).any()):
            raise ValueError("row outside census")
        return idx

    def __repr__(self):
        return f"FamilyCensus({self.family}, cardinality={self.cardinality})"


def enumerate_family(family: FamilySpec, limit: int | None = None) -> FamilyCensus:
    if limit is None:
        limit = candidate_limit()
    total = family.k ** family.n
    if total > limit:
        raise SizeLimit(f"{family} has {total} candidate words (limit {limit})")
    return _enumerate(family)


@functools.lru_cache(maxsize=64)
def _enumerate(family: FamilySpec) -> FamilyCensus:
    n, k = family.n, family.k
    total = k**n
    kept = []
    for start in range(0, total, _CHUNK):
        codes = np.arange(start, min(start + _CHUNK, total), dtype=np.int64)
        arr = decode_codes(codes, n, k)
        kept.append(arr[member_mask(family, arr)])
    return FamilyCensus(family, np.concatenate(kept) if kept else np.zeros((0, n), word_dtype(k)))
