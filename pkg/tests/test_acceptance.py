"""Acceptance criteria 1-11, each timed against its runtime budget.

Every test records one PASS/FAIL line; the lines are printed together in
the terminal summary (see conftest.py).  Run alone with

    pytest tests/test_acceptance.py -v
"""
import contextlib
import math
import random
import time
from fractions import Fraction

from conftest import fixture_lines, park_word, word
from oracles import bell, brute_family, stirling2
from whirling.certificates import (
    build_chunk_partition,
    build_red_light_cycles,
    build_snake_decomposition,
    reconstruct_orbit_from_snake,
    verify_chunk_partition,
    verify_red_light_cycles,
    verify_snake_decomposition,
)
from whirling.orbits import (
    OrbitBoard,
    StatisticSpec,
    conjecture_sweep,
    is_homomesic,
    orbit_average,
    orbit_of,
    orbit_partition,
    orbit_structure,
    rg_chain_note,
    statistic_values,
)
from whirling.parking import factorization_to_park, park_to_factorization
from whirling.toggles import apply_toggles, check_toggle_homomesy, subset_of_word, toggle_at
from whirling.whirl import (
    WhirlOrder,
    apply_order,
    sweep_orders,
    whirl_at,
    whirl_direct_at,
    whirl_inverse_at,
)
from whirling.words import FamilySpec, Kind, enumerate_family, is_member

RESULTS: list[str] = []

# the k^n scales are read with k <= 10; n = 1 and n = 2 would otherwise allow unbounded k
MAX_K = 10
# k = 1 satisfies every k^n bound, so n needs its own cap
MAX_N = 29


@contextlib.contextmanager
def criterion(number: int, title: str, budget: float):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        elapsed = time.perf_counter() - start
        RESULTS.append(f"FAIL criterion {number} {title} ({elapsed:.1f}s): {type(exc).__name__}: {exc}"[:300])
        raise
    elapsed = time.perf_counter() - start
    ok = elapsed < budget
    RESULTS.append(f"{'PASS' if ok else 'FAIL'} criterion {number} {title} ({elapsed:.1f}s, budget {budget:.0f}s)")
    assert ok, f"criterion {number} took {elapsed:.1f}s, budget {budget}s"


def _power_pairs(limit, min_k=1):
    for n in range(1, MAX_N + 1):
        for k in range(min_k, MAX_K + 1):
            if k ** n <= limit:
                yield n, k


def _values_homomesic(s, stat, constant):
    return is_homomesic(s, statistic_values(stat, s.census.array, s.family.k), Fraction(constant))


def _boards(s):
    for r in range(s.count):
        yield OrbitBoard.from_orbit(s.orbit(r))


def test_criterion_01_first_board():
    with criterion(1, "Inj_1(3,6) orbit of 621", 1):
        fam = FamilySpec.inj(1, 3, 6)
        f = word(fam, "621")
        orbit = orbit_of(fam, f, WhirlOrder.identity(3))
        assert orbit.length == 10
        assert [str(w) for w in orbit.starting_at(f)] == fixture_lines("fig01_inj1_3_6_orbit_621.txt")
        for j in range(1, 7):
            assert orbit_average(orbit, StatisticSpec.eta(j)) == Fraction(1, 2)


def test_criterion_02_eta_sweep():
    with criterion(2, "eta homomesy and orbit divisibility sweep, k^n <= 10^6", 600):
        rep = conjecture_sweep("eta", max_n=MAX_N, seed=0, n_random=10, max_k=MAX_K, reversal=True)
        assert rep.ok, rep.counterexamples[:3]
        pairs = list(_power_pairs(10**6))
        fams = {x.family for x in rep.instances}
        nonempty = sum(1 for n, k in pairs for m in range(1, n + 1) if m * k >= n) + \
            sum(1 for n, k in pairs if k <= n)
        assert len(fams) == nonempty
        assert rep.orders == "identity, reversal, 10 random"
        etas = [x for x in rep.instances if x.statistic.startswith("eta")]
        assert all(x.verdict.startswith("homomesic(") for x in etas)


def test_criterion_03_sur_sweep():
    with criterion(3, "Sur_m sweep, mk <= n <= 8", 600):
        rep = conjecture_sweep("sur", max_n=8)
        assert rep.ok, rep.counterexamples[:3]
        expected = sum(1 for n in range(1, 9) for m in range(1, n + 1) for k in range(1, n // m + 1))
        assert len({x.family for x in rep.instances}) == expected


def test_criterion_04_parking():
    with criterion(4, "parking orbits and factorizations", 300):
        parts = orbit_partition(FamilySpec.park(3), WhirlOrder.identity(3))
        want = {frozenset(line.split("\t")[2].split()) for line in fixture_lines("fig06_park3_partition.txt")}
        assert {frozenset(str(w) for w in o.words) for o in parts} == want
        rng = random.Random(0)
        # Park(1) = {1} is a fixed point, so the orbit facts start at n = 2
        for n in range(2, 7):
            fam = FamilySpec.park(n)
            orders = [WhirlOrder.identity(n), WhirlOrder.reversal(n)] + [WhirlOrder.random(n, rng) for _ in range(3)]
            for order in orders:
                s = orbit_structure(fam, order)
                assert (s.lengths == n + 1).all()
                assert s.count * (n + 1) ** 2 == (n + 1) ** n
                for i in range(1, n + 1):
                    ones = s.orbit_sums(statistic_values(StatisticSpec.indicator(i, 1), s.census.array, n))
                    assert (ones == 2).all()
        assert str(park_to_factorization(park_word("1332"))) == "(15)(34)(35)(23)"
        assert str(park_to_factorization(park_word("431416"))) == "(45)(37)(12)(47)(13)(67)"
        for n in range(1, 7):
            for f in enumerate_family(FamilySpec.park(n)).words:
                t = park_to_factorization(f)
                assert t.is_long_cycle()
                assert factorization_to_park(t) == f


def test_criterion_05_opinj():
    with criterion(5, "OPInj orbits, homomesies and snakes", 300):
        fam = FamilySpec.opinj(6, 9)
        order = WhirlOrder(6, (1, 6, 4, 2, 5, 3))
        f = word(fam, "134578")
        assert orbit_of(fam, f, order).length == 9
        for n in range(1, 6):
            for k in range(n, 9):
                fam = FamilySpec.opinj(n, k)
                for order in sweep_orders(fam, seed=0, count=10):
                    s = orbit_structure(fam, order)
                    assert (k % s.lengths == 0).all()
                    for j in range(1, n + 1):
                        assert _values_homomesic(s, StatisticSpec.symmetric_sum(j), k + 1)
                    for j in range(1, k + 1):
                        assert _values_homomesic(s, StatisticSpec.eta(j), Fraction(n, k))
                    if math.gcd(n, k) == 1:
                        assert (s.lengths == k).all()
        board = OrbitBoard.from_orbit(orbit_of(FamilySpec.opinj(6, 9), f, WhirlOrder(6, (1, 6, 4, 2, 5, 3))), start=f)
        dec = build_snake_decomposition(board)
        assert verify_snake_decomposition(dec)
        assert ["".join(map(str, c)) for c in dec.compositions] == [
            "231111", "311112", "111123", "111231", "112311", "123111"]
        fam = FamilySpec.opinj(6, 9)
        g = word(fam, "134589")
        board = OrbitBoard.from_orbit(orbit_of(fam, g, WhirlOrder.identity(6)), start=g)
        dec = build_snake_decomposition(board)
        assert board.length == 3 and len(dec.snakes) == 2
        assert dec.compositions[0] == (2, 1, 2, 1, 2, 1)
        rebuilt = reconstruct_orbit_from_snake((2, 1, 3, 3), WhirlOrder(4, (4, 1, 2, 3)), 4, 9)
        assert ["".join(map(str, r)) for r in rebuilt.rows] == [
            "1569", "2347", "1258", "1369", "2457", "3468", "1579", "2678", "3489"]


def test_criterion_06_op():
    with criterion(6, "OP orbits, homomesies and bridge", 120):
        fam = FamilySpec.op(4, 6)
        orbit = orbit_of(fam, word(fam, "1444"), WhirlOrder.identity(4))
        assert orbit.length == 9
        assert [orbit_average(orbit, StatisticSpec.symmetric_sum(j)) for j in (1, 2)] == [7, 7]
        for n in range(1, 6):
            for k in range(1, 7):
                fam = FamilySpec.op(n, k)
                period = k + n - 1
                for order in sweep_orders(fam, seed=0, count=10):
                    s = orbit_structure(fam, order)
                    assert (period % s.lengths == 0).all()
                    for j in range(1, n + 1):
                        assert _values_homomesic(s, StatisticSpec.symmetric_sum(j), k + 1)
                    for r in range(1, k + 1):
                        assert _values_homomesic(s, StatisticSpec.value_count_diff(r), 0)
                    if math.gcd(n, period) == 1:
                        assert (s.lengths == period).all()
                opinj = FamilySpec.opinj(n, period)

                def bar(g):
                    h = opinj.word([g[i] + i - 1 for i in range(1, n + 1)])
                    assert is_member(opinj, h)
                    return h

                for order in sweep_orders(fam, seed=0, count=10):
                    for f in enumerate_family(fam).words:
                        assert apply_order(opinj, bar(f), order) == bar(apply_order(fam, f, order))


def test_criterion_07_rg():
    with criterion(7, "RG orbits, indicator and RGCombo homomesy, census counts", 600):
        s = orbit_structure(FamilySpec.rg(5, 3), WhirlOrder.identity(5, 2))
        assert sorted(int(x) for x in s.lengths) == [9, 16]
        for n in range(2, 8):
            fams = [FamilySpec.rg(n, k) for k in range(1, n + 1)] + [FamilySpec.rg(n)]
            for fam in fams:
                for order in sweep_orders(fam, seed=0, count=10, reversal=False):
                    s = orbit_structure(fam, order)
                    arr = s.census.array
                    base = statistic_values(StatisticSpec.indicator(2, 1), arr, fam.k)
                    for i in range(3, n + 1):
                        diff = statistic_values(StatisticSpec.indicator(i, 1), arr, fam.k) - base
                        assert is_homomesic(s, diff, Fraction(0)), (fam, order, i)
                    if fam.kind is Kind.RG_NK:
                        assert _values_homomesic(s, StatisticSpec.rg_combo(), fam.k * (fam.k - 2))
        for n in range(1, 9):
            assert enumerate_family(FamilySpec.rg(n)).cardinality == bell(n)
            for k in range(1, n + 1):
                assert enumerate_family(FamilySpec.rg(n, k)).cardinality == stirling2(n, k)
                if n <= 6:
                    assert len(brute_family("rg", n, k, None)) == stirling2(n, k)


def test_criterion_08_rgnc_sweep():
    with criterion(8, "RG_nc sweep, n <= 8", 600):
        rep = conjecture_sweep("rgnc", max_n=8, seed=0, n_random=10)
        assert rep.ok, rep.counterexamples[:3]
        assert rg_chain_note() in rep.notes
        fam = FamilySpec.rgnc(6, 4)
        f = word(fam, "123442")
        for i in range(1, 7):
            f = whirl_at(fam, f, i)
        assert str(f) == "123244"
        assert "123224" in rg_chain_note() and "RG(6) gives" in rg_chain_note()


def test_criterion_09_certificates():
    with criterion(9, "chunk, red-light and snake certificates", 600):
        boards = 0
        for n, k in _power_pairs(10**5):
            for m in range(1, n + 1):
                if m * k < n:
                    continue
                s = orbit_structure(FamilySpec.inj(m, n, k), WhirlOrder.identity(n))
                for board in _boards(s):
                    check = verify_chunk_partition(build_chunk_partition(board))
                    assert check, (board.family, board.rows[0], check.message)
                    boards += 1
            if k <= n:
                s = orbit_structure(FamilySpec.sur(1, n, k), WhirlOrder.identity(n))
                for board in _boards(s):
                    check = verify_red_light_cycles(build_red_light_cycles(board))
                    assert check, (board.family, board.rows[0], check.message)
                    boards += 1
        fam = FamilySpec.sur(1, 8, 4)
        f = word(fam, "31114424")
        rc = build_red_light_cycles(OrbitBoard.from_orbit(orbit_of(fam, f, WhirlOrder.identity(8)), start=f))
        assert len(rc.cycles) == 2
        for n in range(1, 5):
            for k in range(n, 8):
                fam = FamilySpec.opinj(n, k)
                for order in (WhirlOrder.identity(n), WhirlOrder.reversal(n)):
                    for board in _boards(orbit_structure(fam, order)):
                        check = verify_snake_decomposition(build_snake_decomposition(board))
                        assert check, (n, k, order, board.rows[0], check.message)
                        boards += 1
        assert boards > 0


def test_criterion_10_toggles():
    with criterion(10, "toggle cardinality homomesy and bridge", 120):
        rng = random.Random(0)
        for n in range(1, 11):
            for r in range(0, n // 2 + 1):
                orders = [WhirlOrder.identity(n)] + [WhirlOrder.random(n, rng) for _ in range(5)]
                for order in orders:
                    assert check_toggle_homomesy(n, r, order).constant == Fraction(n, 2)
                fam = FamilySpec.inj(n - r, n, 2)
                for f in enumerate_family(fam).words:
                    x = subset_of_word(f)
                    for i in range(1, n + 1):
                        assert toggle_at(n, r, x, i) == subset_of_word(whirl_at(fam, f, i))


def _all_families(n, k):
    for m in range(1, n + 1):
        yield FamilySpec.inj(m, n, k)
        if m * k <= n:
            yield FamilySpec.sur(m, n, k)
    yield FamilySpec.op(n, k)
    if k >= n:
        yield FamilySpec.opinj(n, k)
    if k == n:
        yield FamilySpec.park(n)
        if n >= 2:
            yield FamilySpec.rg(n)
            yield FamilySpec.rgnc(n)
    if 2 <= n and k <= n:
        yield FamilySpec.rg(n, k)
        yield FamilySpec.rgnc(n, k)


def test_criterion_11_oracles():
    with criterion(11, "closed forms match the generic whirl, inverses round-trip", 300):
        closed = ("park", "op", "opinj", "rg", "rgn")
        for n, k in _power_pairs(10**5):
            for fam in _all_families(n, k):
                rg = fam.kind.is_rg
                indices = range(2 if rg else 1, n + 1)
                has_direct = fam.kind.value in closed
                bad = []
                for f in enumerate_family(fam).words:
                    for i in indices:
                        g = whirl_at(fam, f, i)
                        if whirl_inverse_at(fam, g, i) != f or (has_direct and whirl_direct_at(fam, f, i) != g):
                            bad.append((str(f), i))
                assert not bad, (str(fam), bad[:5])
