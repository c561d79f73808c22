"""Orbits, orbit boards, statistics and exact homomesy reports."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from .errors import NotMember, ParseError, ShapeMismatch, SizeLimit
from .whirl import WhirlOrder, apply_order, bulk_apply_order, sweep_orders, whirl_at
from .words import (
    FamilyCensus,
    FamilySpec,
    FunctionWord,
    enumerate_family,
    format_values,
    is_member,
    parse_params,
)

#: Largest census partitioned into orbits by default.
DEFAULT_PARTITION_LIMIT = 10**6


# -- orbits -------------------------------------------------------------------

@dataclass(frozen=True)
class Orbit:
    family: FamilySpec
    order: WhirlOrder
    words: tuple[FunctionWord, ...]

    @property
    def length(self) -> int:
        return len(self.words)

    @property
    def representative(self) -> FunctionWord:
        return self.words[0]

    def __len__(self):
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, f):
        return f in self.words

    def starting_at(self, f: FunctionWord) -> tuple[FunctionWord, ...]:
        t = self.words.index(f)
        return self.words[t:] + self.words[:t]


def _canonical(words: list[FunctionWord]) -> tuple[FunctionWord, ...]:
    t = min(range(len(words)), key=lambda i: words[i].values)
    return tuple(words[t:] + words[:t])


def orbit_of(family: FamilySpec, f: FunctionWord, order: WhirlOrder) -> Orbit:
    if not is_member(family, f):
        raise NotMember(f"{f} is not in {family}")
    order = order.normalized(family)
    words = [f]
    g = apply_order(family, f, order)
    while g != f:
        words.append(g)
        g = apply_order(family, g, order)
    return Orbit(family, order, _canonical(words))


class Position(NamedTuple):
    """Board cell: ``row`` counts from 0, ``col`` from 1."""

    row: int
    col: int


class OrbitBoard:
    """Cylindrical board whose row t is the t-th word of an orbit.

    Reading order is row-major; after the last cell of the bottom row comes
    the first cell of the top row.  Under a whirl order that uses every index,
    each row is read in the order its indices are whirled, so the board reads
    like the identity-order board of the rearranged words.
    """

    def __init__(self, rows: Sequence[Sequence[int]], n: int, k: int,
                 family: FamilySpec | None = None, order: WhirlOrder | None = None):
        self.rows = [tuple(r) for r in rows]
        self.n = n
        self.k = k
        self.family = family
        self.order = order
        if any(len(r) != n for r in self.rows):
            raise ShapeMismatch("board rows must have length n")
        full = order is not None and len(order.sequence) == n
        self.columns = tuple(order.sequence) if full else tuple(range(1, n + 1))
        self._slot = {c: s for s, c in enumerate(self.columns)}

    @classmethod
    def from_orbit(cls, orbit: Orbit, start: FunctionWord | None = None) -> "OrbitBoard":
        words = orbit.words if start is None else orbit.starting_at(start)
        fam = orbit.family
        return cls([w.values for w in words], fam.n, fam.k, fam, orbit.order)

    @property
    def length(self) -> int:
        return len(self.rows)

    @property
    def size(self) -> int:
        return len(self.rows) * self.n

    def flat(self, p: Position) -> int:
        return (p.row % self.length) * self.n + self._slot[p.col]

    def position(self, index: int) -> Position:
        index %= self.size
        return Position(index // self.n, self.columns[index % self.n])

    def value(self, p: Position) -> int:
        return self.rows[p.row % self.length][p.col - 1]

    def offset(self, p: Position, h: int) -> Position:
        """(P, h): the position h steps after P in reading order."""
        return self.position(self.flat(p) + h)

    def window(self, p: Position, a: int, b: int) -> list[Position]:
        """(P, [a, b]): positions from offset a to offset b inclusive."""
        return [self.offset(p, h) for h in range(a, b + 1)]

    def positions(self):
        """All positions in reading order from the origin."""
        return [self.position(i) for i in range(self.size)]

    def flat_values(self) -> list[int]:
        return [row[c - 1] for row in self.rows for c in self.columns]

    def words(self) -> list[FunctionWord]:
        return [FunctionWord(self.n, self.k, r) for r in self.rows]

    def partial_word(self, t: int, i: int) -> tuple[int, ...]:
        """First i entries of row t+1 followed by the last n-i entries of row t."""
        below = self.rows[(t + 1) % self.length]
        return below[:i] + self.rows[t % self.length][i:]

    def render(self) -> str:
        return "\n".join(format_values(r, self.k) for r in self.rows) + "\n"


def board_of(family: FamilySpec, f: FunctionWord, order: WhirlOrder) -> OrbitBoard:
    """Board of the orbit through f with f on the top row."""
    return OrbitBoard.from_orbit(orbit_of(family, f, order), start=f)


# -- statistics -----------------------------------------------------------------

_STAT_FIELDS = {
    "eta": ("j",),
    "ind": ("i", "v"),
    "sym": ("j",),
    "rgcombo": (),
    "vcd": ("r",),
    "card": (),
    "eta-diff": ("i", "j"),
    "ind-diff": ("i", "j"),
}


@dataclass(frozen=True)
class StatisticSpec:
    """A statistic on words.

    ``eta`` counts occurrences of value j; ``ind`` is 1 when f(i) = v;
    ``sym`` is f(j) + f(n+1-j); ``rgcombo`` is C(k,2) f(2) - f(n); ``vcd`` is
    #{f = r} - #{f = k+1-r}; ``card`` counts the 1s.  ``eta-diff`` and
    ``ind-diff`` are eta(i) - eta(j) and ind(i,1) - ind(j,1).
    """

    variant: str
    params: tuple[int, ...] = ()

    def __post_init__(self):
        fields = _STAT_FIELDS.get(self.variant)
        if fields is None:
            raise ParseError(f"unknown statistic {self.variant!r}")
        if len(self.params) != len(fields):
            raise ParseError(f"{self.variant} takes fields {fields}")

    @classmethod
    def eta(cls, j):
        return cls("eta", (j,))

    @classmethod
    def indicator(cls, i, v=1):
        return cls("ind", (i, v))

    @classmethod
    def symmetric_sum(cls, j):
        return cls("sym", (j,))

    @classmethod
    def rg_combo(cls):
        return cls("rgcombo")

    @classmethod
    def value_count_diff(cls, r):
        return cls("vcd", (r,))

    @classmethod
    def cardinality(cls):
        return cls("card")

    @classmethod
    def eta_diff(cls, i, j):
        return cls("eta-diff", (i, j))

    @classmethod
    def indicator_diff(cls, i, j):
        return cls("ind-diff", (i, j))

    def __str__(self):
        fields = _STAT_FIELDS[self.variant]
        if not fields:
            return self.variant
        return self.variant + ":" + ",".join(f"{f}={p}" for f, p in zip(fields, self.params))

    def check_shape(self, n: int, k: int) -> None:
        v, p = self.variant, self.params
        ok = True
        if v == "eta":
            ok = 1 <= p[0] <= k
        elif v == "ind":
            ok = 1 <= p[0] <= n
        elif v == "sym":
            ok = 1 <= p[0] <= n
        elif v == "vcd":
            ok = 1 <= p[0] <= k
        elif v == "rgcombo":
            ok = n >= 2
        elif v == "eta-diff":
            ok = 1 <= p[0] <= k and 1 <= p[1] <= k
        elif v == "ind-diff":
            ok = 1 <= p[0] <= n and 1 <= p[1] <= n
        if not ok:
            raise ShapeMismatch(f"statistic {self} incompatible with n={n}, k={k}")


def parse_statistic(text: str) -> StatisticSpec:
    name, _, rest = text.strip().partition(":")
    if name not in _STAT_FIELDS:
        raise ParseError(f"unknown statistic {name!r}")
    fields = _STAT_FIELDS[name]
    p = parse_params(rest, set(fields))
    if name == "ind" and "v" not in p:
        p["v"] = 1
    missing = set(fields) - p.keys()
    if missing:
        raise ParseError(f"missing field(s) {sorted(missing)} for {name}")
    return StatisticSpec(name, tuple(p[f] for f in fields))


def evaluate_statistic(stat: StatisticSpec, f: FunctionWord) -> int:
    n, k = f.n, f.k
    stat.check_shape(n, k)
    v, p, vals = stat.variant, stat.params, f.values
    if v == "eta":
        return vals.count(p[0])
    if v == "ind":
        return int(vals[p[0] - 1] == p[1])
    if v == "sym":
        return vals[p[0] - 1] + vals[n - p[0]]
    if v == "rgcombo":
        return math.comb(k, 2) * vals[1] - vals[n - 1]
    if v == "vcd":
        return vals.count(p[0]) - vals.count(k + 1 - p[0])
    if v == "card":
        return vals.count(1)
    if v == "eta-diff":
        return vals.count(p[0]) - vals.count(p[1])
    return int(vals[p[0] - 1] == 1) - int(vals[p[1] - 1] == 1)


def statistic_values(stat: StatisticSpec, arr: np.ndarray, k: int) -> np.ndarray:
    """Vectorised ``evaluate_statistic`` over the rows of ``arr``."""
    n = arr.shape[1]
    stat.check_shape(n, k)
    v, p = stat.variant, stat.params
    a = arr.astype(np.int64)
    if v == "eta":
        return (a == p[0]).sum(axis=1)
    if v == "ind":
        return (a[:, p[0] - 1] == p[1]).astype(np.int64)
    if v == "sym":
        return a[:, p[0] - 1] + a[:, n - p[0]]
    if v == "rgcombo":
        return math.comb(k, 2) * a[:, 1] - a[:, n - 1]
    if v == "vcd":
        return (a == p[0]).sum(axis=1) - (a == k + 1 - p[0]).sum(axis=1)
    if v == "card":
        return (a == 1).sum(axis=1)
    if v == "eta-diff":
        return (a == p[0]).sum(axis=1) - (a == p[1]).sum(axis=1)
    return (a[:, p[0] - 1] == 1).astype(np.int64) - (a[:, p[1] - 1] == 1).astype(np.int64)


def orbit_average(orbit: Orbit, stat: StatisticSpec) -> Fraction:
    return Fraction(sum(evaluate_statistic(stat, f) for f in orbit.words), orbit.length)


# -- bulk orbit structure ---------------------------------------------------------

def cycle_labels(successor: np.ndarray) -> np.ndarray:
    """For a permutation given as an index array, the least index on each cycle."""
    label = np.arange(successor.size)
    step = successor.copy()
    span = 1
    while span < successor.size:
        nxt = np.minimum(label, label[step])
        # a stable round means label[x] <= label[x + span] everywhere,
        # which already makes label[x] the minimum of its cycle
        if np.array_equal(nxt, label):
            break
        label = nxt
        step = step[step]
        span *= 2
    return label


class OrbitStructure:
    """All orbits of a whirl order on a census, computed in bulk."""

    def __init__(self, census: FamilyCensus, order: WhirlOrder):
        self.census = census
        self.family = census.family
        self.order = order
        arr = census.array
        image = bulk_apply_order(self.family, arr, order)
        self.successor = census.index_of(image)
        label = cycle_labels(self.successor)
        self.reps = np.unique(label)
        self.orbit_id = np.searchsorted(self.reps, label)
        self.lengths = np.bincount(self.orbit_id, minlength=self.reps.size)

    @property
    def count(self) -> int:
        return int(self.reps.size)

    def orbit_indices(self, r: int) -> list[int]:
        start = int(self.reps[r])
        out = [start]
        nxt = int(self.successor[start])
        while nxt != start:
            out.append(nxt)
            nxt = int(self.successor[nxt])
        return out

    def orbit_sums(self, values: np.ndarray) -> np.ndarray:
        sums = np.zeros(self.count, dtype=np.int64)
        np.add.at(sums, self.orbit_id, values)
        return sums

    def orbit(self, r: int) -> Orbit:
        words = self.census.words
        return Orbit(self.family, self.order, tuple(words[i] for i in self.orbit_indices(r)))


def orbit_structure(family: FamilySpec, order: WhirlOrder, limit: int | None = None) -> OrbitStructure:
    order.check(family)
    order = order.normalized(family)
    census = enumerate_family(family)
    if limit is None:
        limit = DEFAULT_PARTITION_LIMIT
    if census.cardinality > limit:
        raise SizeLimit(f"{family} has {census.cardinality} members (limit {limit})")
    return OrbitStructure(census, order)


def orbit_partition(family: FamilySpec, order: WhirlOrder, limit: int | None = None) -> list[Orbit]:
    s = orbit_structure(family, order, limit)
    return [s.orbit(r) for r in range(s.count)]


def map_order(family: FamilySpec, order: WhirlOrder, limit: int | None = None) -> int:
    s = orbit_structure(family, order, limit)
    return math.lcm(*(int(x) for x in s.lengths)) if s.count else 1


# -- homomesy reports ------------------------------------------------------------

@dataclass
class OrbitRow:
    rep: str
    length: int
    average: Fraction
    values: list[int] | None = None

    def to_dict(self):
        d = {"rep": self.rep, "length": self.length,
             "average": {"num": self.average.numerator, "den": self.average.denominator}}
        d["values"] = self.values if self.values is not None else []
        return d


@dataclass
class HomomesyReport:
    family: str
    order: str
    statistic: str
    rows: list[OrbitRow]
    constant: Fraction | None
    witnesses: tuple[OrbitRow, OrbitRow] | None = None
    header: dict = field(default_factory=dict)

    @property
    def homomesic(self) -> bool:
        """True when no two orbit averages differ (vacuously true on an empty family)."""
        return self.witnesses is None

    @property
    def verdict(self) -> str:
        if not self.rows:
            return "empty"
        if self.homomesic:
            return f"homomesic({_frac(self.constant)})"
        a, b = self.witnesses
        return f"not-homomesic({a.rep}:{_frac(a.average)} vs {b.rep}:{_frac(b.average)})"

    def to_dict(self):
        d = {"family": self.family, "order": self.order, "statistic": self.statistic,
             "orbits": [r.to_dict() for r in self.rows], "verdict": self.verdict}
        if self.header:
            d["header"] = self.header
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["rep", "length", "average_num", "average_den"])
        for r in self.rows:
            w.writerow([r.rep, r.length, r.average.numerator, r.average.denominator])
        return buf.getvalue()

    def to_text(self) -> str:
        lines = [f"family {self.family}", f"order {self.order}", f"statistic {self.statistic}"]
        for key, val in self.header.items():
            lines.append(f"{key} {val}")
        for r in self.rows:
            lines.append(f"{r.rep}\t{r.length}\t{_frac(r.average)}")
        lines.append(self.verdict)
        return "\n".join(lines) + "\n"


def _frac(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def build_report(labels: Sequence[str], lengths: Sequence[int], sums: Sequence[int],
                 family: str, order: str, statistic: str,
                 values: Sequence[list[int]] | None = None) -> HomomesyReport:
    rows = []
    for t, (rep, ln, s) in enumerate(zip(labels, lengths, sums)):
        rows.append(OrbitRow(rep, int(ln), Fraction(int(s), int(ln)), values[t] if values else None))
    constant, witnesses = None, None
    if rows:
        c = rows[0].average
        bad = next((r for r in rows if r.average != c), None)
        if bad is None:
            constant = c
        else:
            witnesses = (rows[0], bad)
    return HomomesyReport(family, order, statistic, rows, constant, witnesses)


def is_homomesic(structure: OrbitStructure, values: np.ndarray, constant: Fraction | None = None) -> bool:
    """Exact integer check that every orbit sum equals c times its length."""
    if structure.count == 0:
        return True
    sums = structure.orbit_sums(values)
    lengths = structure.lengths.astype(np.int64)
    if constant is None:
        constant = Fraction(int(sums[0]), int(lengths[0]))
    return bool((sums * constant.denominator == lengths * constant.numerator).all())


def report_from_structure(structure: OrbitStructure, stat: StatisticSpec,
                          include_values: bool = False) -> HomomesyReport:
    fam = structure.family
    vals = statistic_values(stat, structure.census.array, fam.k)
    sums = structure.orbit_sums(vals)
    rep_rows = structure.census.array[structure.reps].tolist()
    labels = [format_values(r, fam.k) for r in rep_rows]
    per_orbit = None
    if include_values:
        per_orbit = [[int(vals[i]) for i in structure.orbit_indices(r)] for r in range(structure.count)]
    return build_report(labels, structure.lengths, sums, str(fam), str(structure.order), str(stat), per_orbit)


def check_homomesy(family: FamilySpec, order: WhirlOrder, stat: StatisticSpec,
                   include_values: bool = False, limit: int | None = None) -> HomomesyReport:
    stat.check_shape(family.n, family.k)
    return report_from_structure(orbit_structure(family, order, limit), stat, include_values)


# -- conjecture sweeps -------------------------------------------------------------

CONJECTURES = ("sur", "rgnc", "divisibility", "eta")


@dataclass
class SweepInstance:
    family: str
    order: str
    statistic: str
    verdict: str
    orbits: int

    def to_dict(self):
        return {"family": self.family, "order": self.order, "statistic": self.statistic,
                "verdict": self.verdict, "orbits": self.orbits}


@dataclass
class Counterexample:
    family: str
    order: str
    rep: str
    statistic: str
    values: list[int]

    def to_dict(self):
        return {"family": self.family, "order": self.order, "rep": self.rep,
                "statistic": self.statistic, "values": self.values}

    def __str__(self):
        return f"{self.family}\t{self.order}\t{self.rep}\t{self.statistic}\t{','.join(map(str, self.values))}"


@dataclass
class SweepReport:
    conjecture: str
    max_n: int
    seed: int
    orders: str
    instances: list[SweepInstance] = field(default_factory=list)
    counterexamples: list[Counterexample] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self):
        return {"header": {"conjecture": self.conjecture, "max_n": self.max_n,
                           "seed": self.seed, "orders": self.orders},
                "instances": [x.to_dict() for x in self.instances],
                "counterexamples": [c.to_dict() for c in self.counterexamples],
                "notes": self.notes,
                "verdict": "no-counterexample" if self.ok else "counterexample"}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_text(self) -> str:
        lines = [f"conjecture {self.conjecture}", f"max_n {self.max_n}", f"seed {self.seed}",
                 f"orders {self.orders}", f"instances {len(self.instances)}",
                 f"counterexamples {len(self.counterexamples)}"]
        lines += [str(c) for c in self.counterexamples]
        lines += [f"note {x}" for x in self.notes]
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "order", "statistic", "verdict", "orbits"])
        for x in self.instances:
            w.writerow([x.family, x.order, x.statistic, x.verdict, x.orbits])
        return buf.getvalue()


def eta_sums(structure: OrbitStructure) -> np.ndarray:
    """(orbits, k) table: column j-1 holds the orbit sums of Eta(j)."""
    k = structure.family.k
    arr = structure.census.array
    idx = structure.orbit_id[:, None] * k + (arr.astype(np.int64) - 1)
    return np.bincount(idx.ravel(), minlength=structure.count * k).reshape(structure.count, k)


def _counterexamples(structure: OrbitStructure, stat: StatisticSpec, expected: Fraction) -> list[Counterexample]:
    fam = structure.family
    vals = statistic_values(stat, structure.census.array, fam.k)
    sums = structure.orbit_sums(vals)
    lengths = structure.lengths.astype(np.int64)
    bad = np.nonzero(sums * expected.denominator != lengths * expected.numerator)[0]
    out = []
    for r in bad:
        idx = structure.orbit_indices(int(r))
        rep = format_values(structure.census.array[idx[0]].tolist(), fam.k)
        out.append(Counterexample(str(fam), str(structure.order), rep, str(stat), [int(vals[t]) for t in idx]))
    return out


def _length_counterexamples(structure: OrbitStructure, modulus: int) -> list[Counterexample]:
    fam = structure.family
    bad = np.nonzero(structure.lengths % modulus)[0]
    out = []
    for r in bad:
        rep = format_values(structure.census.array[structure.reps[r]].tolist(), fam.k)
        out.append(Counterexample(str(fam), str(structure.order), rep, f"length%{modulus}",
                                  [int(structure.lengths[r])]))
    return out


def _eta_check(report: SweepReport, s: OrbitStructure) -> None:
    fam = s.family
    n, k = fam.n, fam.k
    expected = Fraction(n, k)
    sums = eta_sums(s)
    good = sums * k == s.lengths[:, None].astype(np.int64) * n
    for j in range(1, k + 1):
        stat = StatisticSpec.eta(j)
        if good[:, j - 1].all():
            verdict = f"homomesic({_frac(expected)})"
        else:
            verdict = "not-homomesic"
            report.counterexamples += _counterexamples(s, stat, expected)
        report.instances.append(SweepInstance(str(fam), str(s.order), str(stat), verdict, s.count))


def _divisibility_check(report: SweepReport, s: OrbitStructure) -> None:
    fam = s.family
    modulus = fam.k // math.gcd(fam.n, fam.k)
    bad = _length_counterexamples(s, modulus)
    report.counterexamples += bad
    verdict = "divisible" if not bad else "not-divisible"
    report.instances.append(SweepInstance(str(fam), str(s.order), f"length%{modulus}", verdict, s.count))


def rg_chain_note() -> str:
    """Compare the identity-order chains of 123442 in RG(6) and RG_nc(6)."""
    order = WhirlOrder.identity(6)
    chains = {}
    for fam in (FamilySpec.rg(6), FamilySpec.rgnc(6)):
        f = fam.word([1, 2, 3, 4, 4, 2])
        steps = [f]
        for i in order.sequence:
            steps.append(whirl_at(fam, steps[-1], i))
        chains[str(fam)] = "->".join(str(g) for g in steps[1:])
    return (f"123442 under w_1..w_6: RG(6) gives {chains['rg:n=6']}; "
            f"RG_nc(6) gives {chains['rgnc:n=6']}, so the chain ending in 123224 "
            f"belongs to RG_nc(6), not RG(6)")


def _power_families(max_n: int, max_k: int, limit: int):
    """(n, k) pairs with n <= max_n, k <= max_k and k^n <= limit."""
    for n in range(1, max_n + 1):
        for k in range(1, max_k + 1):
            if k ** n <= limit:
                yield n, k


def conjecture_sweep(conjecture: str, max_n: int, seed: int = 0, n_random: int | None = None,
                     max_k: int = 10, limit: int | None = None, reversal: bool | None = None) -> SweepReport:
    """Run one sweep and collect every counterexample found.

    ``sur``: Eta(j) on Sur_m(n,k), mk <= n <= max_n, expected n/k.
    ``rgnc``: ind-diff(2, n) on RG_nc(n,k) and RG_nc(n), 2 <= n <= max_n, expected 0.
    ``divisibility``: orbit lengths of Inj_m(n,k) and Sur_1(n,k) are multiples of k/gcd(n,k).
    ``eta``: the Eta(j) and divisibility checks together on Inj_m(n,k) and Sur_1(n,k).

    For ``divisibility`` and ``eta`` the pairs satisfy n <= max_n, k <= max_k and
    k^n <= limit (default 10^6).
    """
    if conjecture not in CONJECTURES:
        raise ParseError(f"unknown conjecture {conjecture!r}; expected one of {CONJECTURES}")
    defaults = {"sur": (0, False), "rgnc": (10, False), "divisibility": (0, False), "eta": (10, True)}
    if n_random is None:
        n_random = defaults[conjecture][0]
    if reversal is None:
        reversal = defaults[conjecture][1]
    orders_desc = "identity" + (", reversal" if reversal else "") + (f", {n_random} random" if n_random else "")
    report = SweepReport(conjecture, max_n, seed, orders_desc)
    part_limit = limit if limit is not None else DEFAULT_PARTITION_LIMIT

    def structures(fam):
        if enumerate_family(fam).cardinality == 0:
            return
        for order in sweep_orders(fam, seed, n_random, reversal):
            yield orbit_structure(fam, order, part_limit)

    if conjecture == "sur":
        for n in range(1, max_n + 1):
            for m in range(1, n + 1):
                for k in range(1, n // m + 1):
                    for s in structures(FamilySpec.sur(m, n, k)):
                        _eta_check(report, s)
    elif conjecture == "rgnc":
        if max_n >= 6:
            report.notes.append(rg_chain_note())
        for n in range(2, max_n + 1):
            stat = StatisticSpec.indicator_diff(2, n)
            for fam in [FamilySpec.rgnc(n, k) for k in range(1, n + 1)] + [FamilySpec.rgnc(n)]:
                for s in structures(fam):
                    vals = statistic_values(stat, s.census.array, fam.k)
                    if is_homomesic(s, vals, Fraction(0)):
                        verdict = "homomesic(0)"
                    else:
                        verdict = "not-homomesic"
                        report.counterexamples += _counterexamples(s, stat, Fraction(0))
                    report.instances.append(SweepInstance(str(fam), str(s.order), str(stat), verdict, s.count))
    else:
        cap = 10**6 if limit is None else limit
        for n, k in _power_families(max_n, max_k, cap):
            fams = [FamilySpec.inj(m, n, k) for m in range(1, n + 1)] + [FamilySpec.sur(1, n, k)]
            for fam in fams:
                for s in structures(fam):
                    if conjecture == "eta":
                        _eta_check(report, s)
                    _divisibility_check(report, s)
    return report
