"""Executable homomesy certificates on orbit boards.

Three kinds of witness are built here and can be re-checked independently:

* chunk partitions of Inj_m boards (every value 1..k once per chunk),
* red-light cycles of Sur_1 boards,
* snake decompositions of OPInj boards.
"""
from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass, field

from .errors import BadComposition, BrokenChain, NonUniqueStep, NoPartition, WrongFamily
from .orbits import OrbitBoard, Position, orbit_of
from .whirl import WhirlOrder, apply_order, succ
from .words import FamilySpec, Kind, is_member


@dataclass
class Verification:
    """Outcome of a verifier; falsy on failure with the first problem in ``message``."""

    ok: bool
    message: str = ""

    def __bool__(self):
        return self.ok


def _fail(msg: str) -> Verification:
    return Verification(False, msg)


def _require(board: OrbitBoard, kind: Kind, m: int | None = None) -> None:
    fam = board.family
    if fam is None or fam.kind is not kind or (m is not None and fam.m != m):
        raise WrongFamily(f"board family {fam} is not suitable here")


def _gap(board: OrbitBoard, a: int, b: int) -> int:
    """Least positive number of reading steps from flat index a to b."""
    d = (b - a) % board.size
    return d if d else board.size


def _assignment(board: OrbitBoard, groups) -> list[list[int]]:
    grid = [[-1] * board.n for _ in range(board.length)]
    for gid, group in enumerate(groups):
        for p in group:
            grid[p.row][p.col - 1] = gid
    return grid


def _render(board: OrbitBoard, grid) -> str:
    lines = []
    for r, row in enumerate(board.rows):
        cells = [f"{v}" if grid[r][c] < 0 else f"{v}:{grid[r][c]}" for c, v in enumerate(row)]
        lines.append(" ".join(cells))
    return "\n".join(lines) + "\n"


# -- chunk partitions ------------------------------------------------------------

@dataclass
class ChunkPartition:
    board: OrbitBoard
    relabel_shift: int
    chunks: list[tuple[Position, ...]]

    def relabeled(self, v: int) -> int:
        return (v - 1 - self.relabel_shift) % self.board.k + 1

    def chunk_of(self) -> dict[Position, int]:
        return {p: c for c, chunk in enumerate(self.chunks) for p in chunk}

    def assignment(self) -> list[list[int]]:
        return _assignment(self.board, self.chunks)

    def to_dict(self):
        return {"board": [list(r) for r in self.board.rows], "kind": "chunks",
                "assignment": self.assignment(), "extras": {"relabel_shift": self.relabel_shift}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict()) + "\n"

    def render(self) -> str:
        return _render(self.board, self.assignment())


def _relabel_shift(board: OrbitBoard) -> int:
    counts = [0] * (board.k + 1)
    for v in board.flat_values():
        counts[v] += 1
    best = max(range(1, board.k + 1), key=lambda v: (counts[v], -v))
    return best - 1


def _layer_matching(board: OrbitBoard, left: list[int], right: list[int]) -> list[int]:
    """Perfect matching left -> right with gaps in [1, n], by augmenting paths.

    Vertices are tried in reading order.  Returns the matched right index
    for each left index.
    """
    n, size, nr = board.n, board.size, len(right)
    adj = []
    for p in left:
        # right is sorted, so the window p+1..p+n (mod size) is one or two runs
        if size <= n:
            adj.append(list(range(nr)))
            continue
        lo = bisect_right(right, p)
        hi = p + n
        if hi < size:
            adj.append(list(range(lo, bisect_right(right, hi))))
        else:
            adj.append(list(range(bisect_right(right, hi - size))) + list(range(lo, nr)))
    match_left = [-1] * len(left)
    match_right = [-1] * len(right)
    for a in range(len(left)):
        # the search below would stop at a free first neighbour anyway
        if adj[a] and match_right[adj[a][0]] < 0:
            match_left[a], match_right[adj[a][0]] = adj[a][0], a
            continue
        # iterative depth-first search for an augmenting path from a
        seen = [False] * len(right)
        parent = {}
        stack = [(a, 0)]
        found = -1
        while stack and found < 0:
            u, t = stack.pop()
            if t == len(adj[u]):
                continue
            stack.append((u, t + 1))
            b = adj[u][t]
            if seen[b]:
                continue
            seen[b] = True
            parent[b] = u
            if match_right[b] < 0:
                found = b
            else:
                stack.append((match_right[b], 0))
        if found < 0:
            raise NoPartition(f"no perfect matching between consecutive values on a board of {board.family}")
        b = found
        while b >= 0:
            u = parent[b]
            prev = match_left[u]
            match_left[u], match_right[b] = b, u
            b = prev
    return match_left


def _occurrences(board: OrbitBoard, shift: int) -> list[list[int]]:
    k = board.k
    occ = [[] for _ in range(k + 1)]
    for idx, v in enumerate(board.flat_values()):
        occ[(v - 1 - shift) % k + 1].append(idx)
    return occ


def build_chunk_partition(board: OrbitBoard, method: str = "matching") -> ChunkPartition:
    """Partition an Inj_m board into [k]-chunks.

    ``method="matching"`` matches consecutive values layer by layer;
    ``method="greedy"`` follows the chunk-growing procedure with reassignment.
    """
    _require(board, Kind.INJ)
    shift = _relabel_shift(board)
    occ = _occurrences(board, shift)
    k = board.k
    if any(len(occ[j]) != len(occ[1]) for j in range(1, k + 1)):
        raise NoPartition("values do not occur equally often on the board")
    if method == "matching":
        paths = [[p] for p in occ[1]]
        pos_in_layer = {p: a for a, p in enumerate(occ[1])}
        for j in range(1, k):
            match = _layer_matching(board, occ[j], occ[j + 1])
            for path in paths:
                a = pos_in_layer[path[-1]]
                path.append(occ[j + 1][match[a]])
            pos_in_layer = {p: a for a, p in enumerate(occ[j + 1])}
    elif method == "greedy":
        paths = _greedy_chunks(board, occ)
    else:
        raise ValueError(f"unknown method {method!r}")
    chunks = [tuple(board.position(i) for i in path) for path in paths]
    return ChunkPartition(board, shift, chunks)


def _greedy_chunks(board: OrbitBoard, occ: list[list[int]]) -> list[list[int]]:
    n, k = board.n, board.k
    holders = [set(x) for x in occ]
    owner: dict[int, int] = {}
    chunks: list[list[int]] = []
    budget = 10 * board.size * k * (n + 1) + 100
    for start in occ[1]:
        chunks.append([start])
        owner[start] = len(chunks) - 1
        todo = [len(chunks) - 1]
        while todo:
            c = todo.pop()
            while len(chunks[c]) < k:
                budget -= 1
                if budget < 0:
                    raise NoPartition("greedy chunk reassignment did not terminate")
                p = chunks[c][-1]
                want = len(chunks[c]) + 1
                window = [(p + h) % board.size for h in range(1, n + 1)]
                cands = [q for q in window if q in holders[want]]
                free = [q for q in cands if q not in owner]
                if free:
                    q = free[0]
                    owner[q] = c
                    chunks[c].append(q)
                    continue
                # steal the tail of a chunk whose i sits in (P,[1,n-1])
                inner = set(window[:-1])
                steal = next((q for q in cands if chunks[owner[q]][want - 2] in inner), None)
                if steal is None:
                    raise NoPartition("greedy chunk construction got stuck")
                other = owner[steal]
                tail = chunks[other][want - 1:]
                chunks[other] = chunks[other][:want - 1]
                chunks[c].extend(tail)
                for q in tail:
                    owner[q] = c
                todo.append(other)
    return chunks


def verify_chunk_partition(partition: ChunkPartition) -> Verification:
    board = partition.board
    k, n, length, size = board.k, board.n, board.length, board.size
    rows, shift = board.rows, partition.relabel_shift
    seen: set[Position] = set()
    for c, chunk in enumerate(partition.chunks):
        if len(chunk) != k:
            return _fail(f"chunk {c} has {len(chunk)} positions, expected {k}")
        prev = None
        for j, p in enumerate(chunk, start=1):
            if not (0 <= p.row < length and 1 <= p.col <= n):
                return _fail(f"chunk {c} position {p} is off the board")
            if p in seen:
                return _fail(f"position {p} lies in two chunks")
            seen.add(p)
            if (rows[p.row][p.col - 1] - 1 - shift) % k + 1 != j:
                return _fail(f"chunk {c} position {p} does not hold relabeled value {j}")
            here = board.flat(p)
            if prev is not None and ((here - prev) % size or size) > n:
                return _fail(f"chunk {c}: value {j} more than {n} steps after value {j - 1}")
            prev = here
    if len(seen) != size:
        return _fail(f"{board.size - len(seen)} positions are in no chunk")
    return Verification(True)


# -- red lights -------------------------------------------------------------------

@dataclass
class RedLightCycles:
    board: OrbitBoard
    red_lights: list[Position]
    cycles: list[list[Position]]

    def assignment(self) -> list[list[int]]:
        return _assignment(self.board, self.cycles)

    def to_dict(self):
        cycles = [[[p.row, p.col] for p in cyc] for cyc in self.cycles]
        return {"board": [list(r) for r in self.board.rows], "kind": "redlights",
                "assignment": self.assignment(), "extras": {"cycles": cycles}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict()) + "\n"

    def render(self) -> str:
        return _render(self.board, self.assignment())


def is_red_light(board: OrbitBoard, p: Position) -> bool:
    return board.value(p) == board.value(board.offset(p, board.n))


def red_light_successor(board: OrbitBoard, p: Position) -> Position | None:
    """Last position holding f(P)+1 (mod k) in (P,[1,n-1])."""
    want = succ(board.value(p), board.k)
    # n = 1 forces the one-cell board of Sur_1(1,1); its red light is its own successor
    for h in range(max(board.n - 1, 1), 0, -1):
        q = board.offset(p, h)
        if board.value(q) == want:
            return q
    return None


def build_red_light_cycles(board: OrbitBoard) -> RedLightCycles:
    _require(board, Kind.SUR, m=1)
    reds = [p for p in board.positions() if is_red_light(board, p)]
    red_set = set(reds)
    circled: set[Position] = set()
    cycles = []
    for start in reds:
        if start in circled:
            continue
        cycle = [start]
        circled.add(start)
        p = start
        while True:
            q = red_light_successor(board, p)
            if q is None or q not in red_set:
                raise BrokenChain(f"successor of red light {p} is {q}, not a red light")
            if q == start:
                break
            if q in circled:
                raise BrokenChain(f"red light chains merge at {q}")
            cycle.append(q)
            circled.add(q)
            p = q
        cycles.append(cycle)
    return RedLightCycles(board, reds, cycles)


def verify_red_light_cycles(rc: RedLightCycles) -> Verification:
    board = rc.board
    k, n = board.k, board.n
    reds = {p for p in board.positions() if is_red_light(board, p)}
    if set(rc.red_lights) != reds or len(rc.red_lights) != len(reds):
        return _fail("red light set is wrong")
    seen: set[Position] = set()
    for c, cyc in enumerate(rc.cycles):
        for t, p in enumerate(cyc):
            if p not in reds:
                return _fail(f"cycle {c} contains {p}, which is not a red light")
            if p in seen:
                return _fail(f"red light {p} is in two cycles")
            seen.add(p)
            if red_light_successor(board, p) != cyc[(t + 1) % len(cyc)]:
                return _fail(f"cycle {c}: wrong successor after {p}")
        counts = [0] * (k + 1)
        for p in cyc:
            counts[board.value(p)] += 1
        if len(set(counts[1:])) != 1:
            return _fail(f"cycle {c} does not hold every value equally often")
    if seen != reds:
        return _fail("some red lights are in no cycle")
    for p in board.positions():
        if p not in reds and board.value(board.offset(p, n)) != succ(board.value(p), k):
            return _fail(f"column entry below {p} does not step by +1")
    return Verification(True)


# -- snakes -------------------------------------------------------------------------

@dataclass
class SnakeDecomposition:
    board: OrbitBoard
    order: WhirlOrder
    snakes: list[list[Position]]
    compositions: list[tuple[int, ...]] = field(default_factory=list)

    def assignment(self) -> list[list[int]]:
        return _assignment(self.board, self.snakes)

    def to_dict(self):
        return {"board": [list(r) for r in self.board.rows], "kind": "snakes",
                "assignment": self.assignment(),
                "extras": {"order": list(self.order.sequence),
                           "compositions": ["".join(map(str, c)) if max(c) < 10 else ",".join(map(str, c))
                                            for c in self.compositions]}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict()) + "\n"

    def render(self) -> str:
        return _render(self.board, self.assignment())


def _right_allowed(order: WhirlOrder, j: int) -> bool:
    """True when index j is whirled before j+1, so a snake moves right out of column j."""
    pos = order.inverse_positions()
    return pos[j] < pos[j + 1]


def _cell(board: OrbitBoard, row: int, col: int) -> Position:
    return Position(row % board.length, col)


def _next_cell(board: OrbitBoard, order: WhirlOrder, p: Position) -> Position:
    r = board.value(p)
    down = _cell(board, p.row + 1, p.col)
    if p.col == board.n:
        options = [down]
    elif _right_allowed(order, p.col):
        options = [down, _cell(board, p.row, p.col + 1)]
    else:
        options = [down, _cell(board, p.row + 1, p.col + 1)]
    hits = [q for q in options if board.value(q) == r + 1]
    if len(hits) != 1:
        raise NonUniqueStep(f"{len(hits)} candidate successors for value {r} at {p}")
    return hits[0]


def _prev_cell(board: OrbitBoard, order: WhirlOrder, p: Position) -> Position:
    r = board.value(p)
    up = _cell(board, p.row - 1, p.col)
    if p.col == 1:
        options = [up]
    elif _right_allowed(order, p.col - 1):
        options = [up, _cell(board, p.row, p.col - 1)]
    else:
        options = [up, _cell(board, p.row - 1, p.col - 1)]
    hits = [q for q in options if board.value(q) == r - 1]
    if len(hits) != 1:
        raise NonUniqueStep(f"{len(hits)} candidate predecessors for value {r} at {p}")
    return hits[0]


def _composition(snake: list[Position], n: int) -> tuple[int, ...]:
    c = [0] * n
    for p in snake:
        c[p.col - 1] += 1
    return tuple(c)


def build_snake_decomposition(board: OrbitBoard, order: WhirlOrder | None = None,
                              scan: str = "forward") -> SnakeDecomposition:
    """Follow the forced snake moves.

    ``scan="forward"`` grows snakes from the 1s of column 1, ``scan="backward"``
    from the k's of column n; both give the same decomposition.
    """
    _require(board, Kind.OPINJ)
    order = order or board.order
    if order is None:
        raise WrongFamily("snake decomposition needs the whirl order of the board")
    k, n = board.k, board.n
    snakes = []
    if scan == "forward":
        for t in range(board.length):
            p = Position(t, 1)
            if board.value(p) != 1:
                continue
            snake = [p]
            while board.value(snake[-1]) < k:
                snake.append(_next_cell(board, order, snake[-1]))
            snakes.append(snake)
    elif scan == "backward":
        for t in range(board.length):
            p = Position(t, n)
            if board.value(p) != k:
                continue
            snake = [p]
            while board.value(snake[-1]) > 1:
                snake.append(_prev_cell(board, order, snake[-1]))
            snakes.append(snake[::-1])
        snakes.sort(key=lambda s: s[0].row)
    else:
        raise ValueError(f"unknown scan {scan!r}")
    return SnakeDecomposition(board, order, snakes, [_composition(s, n) for s in snakes])


def left_shift(c: tuple[int, ...]) -> tuple[int, ...]:
    return c[1:] + c[:1]


def verify_snake_decomposition(dec: SnakeDecomposition) -> Verification:
    board, order = dec.board, dec.order
    k, n = board.k, board.n
    seen: set[Position] = set()
    starts = {}
    if len(dec.compositions) != len(dec.snakes):
        return _fail("one composition per snake is required")
    for s, snake in enumerate(dec.snakes):
        if [board.value(p) for p in snake] != list(range(1, k + 1)):
            return _fail(f"snake {s} does not run through 1..k")
        if snake[0].col != 1 or snake[-1].col != n:
            return _fail(f"snake {s} does not run from column 1 to column {n}")
        for p in snake:
            if p in seen:
                return _fail(f"position {p} lies in two snakes")
            seen.add(p)
        one = 1 % board.length
        for p, q in zip(snake, snake[1:]):
            dr = (q.row - p.row) % board.length
            if q.col == p.col:
                ok = dr == one
            elif q.col == p.col + 1 and _right_allowed(order, p.col):
                ok = dr == 0
            elif q.col == p.col + 1:
                ok = dr == one
            else:
                ok = False
            if not ok:
                return _fail(f"snake {s}: illegal move {p} -> {q}")
        c = dec.compositions[s]
        if c != _composition(snake, n) or sum(c) != k or min(c) < 1:
            return _fail(f"snake {s}: bad composition {c}")
        starts[snake[0].row] = c
    if len(seen) != board.size:
        return _fail(f"{board.size - len(seen)} positions are in no snake")
    for t, c in starts.items():
        nxt = (t + c[0]) % board.length
        if starts.get(nxt) != left_shift(c):
            return _fail(f"snake starting on row {nxt} is not the left shift of the one on row {t}")
    return Verification(True)


def snake_positions(composition, order: WhirlOrder, start_row: int = 0) -> list[Position]:
    """The snake with the given composition whose 1 sits in column 1 of ``start_row``.

    Rows are not reduced modulo any orbit length.
    """
    n = len(composition)
    row, out = start_row, []
    for j, c in enumerate(composition, start=1):
        if j > 1 and not _right_allowed(order, j - 1):
            row += 1
        for step in range(c):
            out.append(Position(row + step, j))
        row += c - 1
    return out


def reconstruct_orbit_from_snake(composition, order: WhirlOrder, n: int, k: int) -> OrbitBoard:
    """Lay the snakes of successive left shifts of ``composition`` into an OPInj board."""
    c = tuple(int(x) for x in composition)
    if len(c) != n or any(x < 1 for x in c) or sum(c) != k:
        raise BadComposition(f"{composition} is not a composition of {k} into {n} parts")
    family = FamilySpec.opinj(n, k)
    order.check(family)
    period = next(p for p in range(1, n + 1) if n % p == 0 and c[p:] + c[:p] == c)
    length = sum(c[:period])
    grid = [[0] * n for _ in range(length)]
    row, cur = 0, c
    for _ in range(period):
        for v, p in enumerate(snake_positions(cur, order, row), start=1):
            r = p.row % length
            if grid[r][p.col - 1]:
                raise BadComposition(f"snakes of {composition} collide at row {r}, column {p.col}")
            grid[r][p.col - 1] = v
        row += cur[0]
        cur = left_shift(cur)
    words = [family.word(r) for r in grid]
    for t, f in enumerate(words):
        if not is_member(family, f) or apply_order(family, f, order) != words[(t + 1) % length]:
            raise BadComposition(f"{composition} does not produce a whirl orbit")
    return OrbitBoard(grid, n, k, family, order)


def board_for(family: FamilySpec, f, order: WhirlOrder) -> OrbitBoard:
    """Orbit board of f with f on the top row."""
    return OrbitBoard.from_orbit(orbit_of(family, f, order), start=f)
