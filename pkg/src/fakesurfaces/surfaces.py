"""Disk systems over a skeleton and the gluing search that generates them.

A fake surface over a skeleton is a list of disk boundary words.  A word is a
cyclic sequence of signed edge labels: +e traverses edge e tail to head, -e
the other way.  Validity is local:

  type 1: every edge is traversed exactly three times in total, so three
          half-planes meet along each open edge;
  type 2: at every vertex the disk boundaries pass through each of the six
          sectors spanned by pairs of germs exactly once, realizing the cone
          on the tetrahedron 1-skeleton.

Instead of searching words directly, the enumeration searches gluings: along
each edge the three sheets can be matched between the two ends in 3! ways,
and the vertex model is rigid, so a choice of one 3-permutation per edge
determines the whole boundary curve system.  Both singularity conditions
hold for every gluing by construction; the fake surfaces we keep are the
gluings with exactly t+1 boundary curves (Euler characteristic 1).

A sheet slot at an edge end is named by the germ it faces: the sheet of edge
a lying in the sector {a, x} at a vertex is the slot x.  A strand arriving
at a vertex on edge a in slot x crosses the sector {a, x} and leaves on the
edge of germ x in slot a.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .skeleta import Skeleton

# the six permutations of three sheet slots, in the fixed mixed-radix order
# used to index gluing configurations
S3 = (
    (0, 1, 2),
    (0, 2, 1),
    (1, 0, 2),
    (1, 2, 0),
    (2, 0, 1),
    (2, 1, 0),
)
S3_INDEX = {p: i for i, p in enumerate(S3)}
S3_INVERSE = tuple(
    S3_INDEX[tuple(p.index(k) for k in range(3))] for p in S3
)

Word = tuple[int, ...]
GluingConfig = tuple[int, ...]


class MalformedWordError(ValueError):
    """A letter pair whose arrival and departure vertices disagree."""


@dataclass(frozen=True)
class Valid:
    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class Violation:
    kind: str  # "syntax" | "type-1" | "type-2" | "disk-count"
    detail: str

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class Surface:
    """A skeleton together with its disk boundary words."""

    skeleton: Skeleton
    disks: tuple[Word, ...]

    @property
    def complexity(self) -> int:
        return self.skeleton.complexity

    def total_length(self) -> int:
        return sum(len(w) for w in self.disks)


def arrival_germ(s: Skeleton, letter: int) -> int:
    """Germ at which a traversal of `letter` ends."""
    e = abs(letter) - 1
    return s.edge_head_germ[e] if letter > 0 else s.edge_tail_germ[e]


def departure_germ(s: Skeleton, letter: int) -> int:
    """Germ at which a traversal of `letter` starts."""
    e = abs(letter) - 1
    return s.edge_tail_germ[e] if letter > 0 else s.edge_head_germ[e]


def _check_letters(s: Skeleton, words) -> None:
    for w in words:
        if len(w) == 0:
            raise MalformedWordError("empty disk word")
        for x in w:
            if x == 0 or abs(x) > s.n_edges:
                raise MalformedWordError(f"letter {x} is not an edge of the skeleton")


def corners_of(words, s: Skeleton) -> dict[int, list[tuple[int, int]]]:
    """Corners (sorted germ pairs) per vertex, one per cyclically adjacent
    letter pair.  A single-letter word pairs its letter with itself.

    Raises MalformedWordError when consecutive letters do not meet at a
    common vertex.
    """
    _check_letters(s, words)
    out: dict[int, list[tuple[int, int]]] = {v: [] for v in range(s.complexity)}
    for wi, w in enumerate(words):
        n = len(w)
        for i in range(n):
            x, y = w[i], w[(i + 1) % n]
            a = arrival_germ(s, x)
            d = departure_germ(s, y)
            if a // 4 != d // 4:
                raise MalformedWordError(
                    f"disk {wi}: letters {x},{y} meet at different vertices"
                )
            out[a // 4].append((a, d) if a <= d else (d, a))
    return out


def validate_words(s: Skeleton, words) -> Valid | Violation:
    """Check the two singularity conditions and the disk count.

    Returns a Violation naming the first failed constraint; never raises for
    semantically bad input.
    """
    words = tuple(tuple(w) for w in words)
    try:
        corners = corners_of(words, s)
    except MalformedWordError as exc:
        return Violation("syntax", str(exc))

    counts = [0] * s.n_edges
    for w in words:
        for x in w:
            counts[abs(x) - 1] += 1
    for e, c in enumerate(counts):
        if c != 3:
            return Violation("type-1", f"edge {e + 1} occurs {c} times, not 3")

    for v, pairs in corners.items():
        germs = range(4 * v, 4 * v + 4)
        expected = {(a, b) for a, b in itertools.combinations(germs, 2)}
        got = sorted(pairs)
        if sorted(expected) != got:
            missing = expected.difference(got)
            return Violation(
                "type-2",
                f"vertex {v}: corner multiset {got} does not cover the six "
                f"sectors once each (missing or repeated: {sorted(missing)})",
            )

    if len(words) != s.complexity + 1:
        return Violation(
            "disk-count",
            f"{len(words)} disks, expected {s.complexity + 1}",
        )
    return Valid()


# ---------------------------------------------------------------------------
# gluing configurations and boundary tracing


@lru_cache(maxsize=None)
def _step_tables(s: Skeleton):
    """step[e][p][dir*3+slot] = packed directed position after traversing
    edge e under sheet permutation p and crossing the far vertex.

    A packed position e*6 + dir*3 + slot means: about to traverse edge e in
    direction dir (0 = tail to head), entering at slot index `slot` of the
    entry end.
    """
    tables = []
    for e in range(s.n_edges):
        t_slots, h_slots = s.end_slots[e]
        per_perm = []
        for p in S3:
            pinv = S3[S3_INVERSE[S3_INDEX[p]]]
            row = [0] * 6
            for dirn in range(2):
                for slot in range(3):
                    if dirn == 0:
                        exit_slot = p[slot]
                        x = h_slots[exit_slot]
                        alpha = s.edge_head_germ[e]
                    else:
                        exit_slot = pinv[slot]
                        x = t_slots[exit_slot]
                        alpha = s.edge_tail_germ[e]
                    e2 = s.germ_edge[x]
                    if x == s.edge_tail_germ[e2]:
                        dir2 = 0
                        slot2 = s.end_slots[e2][0].index(alpha)
                    else:
                        dir2 = 1
                        slot2 = s.end_slots[e2][1].index(alpha)
                    row[dirn * 3 + slot] = e2 * 6 + dir2 * 3 + slot2
            per_perm.append(tuple(row))
        tables.append(tuple(per_perm))
    return tuple(tables)


def all_gluing_configs(s: Skeleton):
    """Every assignment of one sheet permutation per edge, 6^(2t) in all,
    in mixed-radix order (last edge varies fastest)."""
    return itertools.product(range(6), repeat=s.n_edges)


def trace_gluing(s: Skeleton, config: GluingConfig) -> tuple[Word, ...]:
    """Boundary curves of the gluing, each reported once.

    Deterministic: each curve starts at its smallest packed position and is
    walked forward from there.
    """
    step = _step_tables(s)
    n_pos = s.n_edges * 6
    visited = bytearray(n_pos)
    words = []
    for start in range(n_pos):
        if visited[start]:
            continue
        word = []
        pos = start
        while True:
            e, r = divmod(pos, 6)
            dirn, slot = divmod(r, 3)
            visited[pos] = 1
            # mark the reverse traversal of the same sheet
            p = S3[config[e]]
            if dirn == 0:
                visited[e * 6 + 3 + p[slot]] = 1
            else:
                visited[e * 6 + S3[S3_INVERSE[config[e]]][slot]] = 1
            word.append(e + 1 if dirn == 0 else -(e + 1))
            pos = step[e][config[e]][r]
            if pos == start:
                break
        words.append(tuple(word))
    return tuple(words)


def reconstruct_config(s: Skeleton, words) -> GluingConfig:
    """Recover the per-edge sheet permutations from a valid word system.

    Each traversal of an edge pins one sheet: the arrival germ of the
    previous letter is the slot at the entry end, the departure germ of the
    next letter the slot at the exit end.  Three traversals determine the
    permutation.  Raises ValueError if the words are not a valid gluing.
    """
    words = tuple(tuple(w) for w in words)
    _check_letters(s, words)
    pairs: list[dict[int, int]] = [dict() for _ in range(s.n_edges)]
    for w in words:
        n = len(w)
        for i in range(n):
            x = w[i]
            e = abs(x) - 1
            p = arrival_germ(s, w[i - 1])
            q = departure_germ(s, w[(i + 1) % n])
            tail_slot_germ, head_slot_germ = (p, q) if x > 0 else (q, p)
            if pairs[e].setdefault(tail_slot_germ, head_slot_germ) != head_slot_germ:
                raise ValueError(f"edge {e + 1}: sheets do not form a matching")
    config = []
    for e in range(s.n_edges):
        t_slots, h_slots = s.end_slots[e]
        if sorted(pairs[e]) != sorted(t_slots):
            raise ValueError(f"edge {e + 1}: traversals do not cover all sheets")
        perm = tuple(h_slots.index(pairs[e][g]) for g in t_slots)
        config.append(S3_INDEX[perm])
    return tuple(config)


# ---------------------------------------------------------------------------
# exhaustive enumeration with pruning


@lru_cache(maxsize=None)
def _vertex_matching(s: Skeleton) -> tuple[int, ...]:
    """Fixed pairing of sheet-slot nodes across each vertex.

    A node e*6 + end*3 + slot is the slot at one end of an edge; the node
    facing germ x from germ g is paired with the node facing g from x.
    Boundary curves are the cycles of this matching united with the per-edge
    sheet matchings, so partial gluings can be tracked as growing paths.
    """
    n_nodes = s.n_edges * 6
    V = [0] * n_nodes
    for e in range(s.n_edges):
        for end in range(2):
            g = s.edge_end_germ(e, head=bool(end))
            slots = s.end_slots[e][end]
            for slot, x in enumerate(slots):
                e2 = s.germ_edge[x]
                end2 = 1 if s.germ_is_head[x] else 0
                slot2 = s.end_slots[e2][end2].index(g)
                V[e * 6 + end * 3 + slot] = e2 * 6 + end2 * 3 + slot2
    return tuple(V)


def enumerate_surfaces(
    s: Skeleton,
    min_disk_len: int = 1,
    prefix: GluingConfig = (),
):
    """Yield (config, words) for every gluing with exactly t+1 boundary
    curves, every curve of length at least min_disk_len.

    The search walks edge by edge in label order, maintaining the partial
    boundary paths; a branch dies as soon as it closes a short curve or
    exceeds the curve budget.  With `prefix` the permutations of the first
    len(prefix) edges are pinned, which shards the search space into
    disjoint, deterministic ranges.

    Duplicates modulo the relabeling moves are not removed here.
    """
    n_edges = s.n_edges
    target = s.complexity + 1
    V = _vertex_matching(s)
    n_nodes = n_edges * 6

    end_of = list(V)
    length = [0] * n_nodes  # meaningful at path endpoints: sheet pairs used
    config = list(prefix) + [0] * (n_edges - len(prefix))
    if len(prefix) > n_edges:
        raise ValueError("prefix longer than the edge list")

    # iterative DFS over edges; each frame tries the six sheet permutations
    def descend(e: int, closed: int):
        if e == n_edges:
            if closed == target:
                cfg = tuple(config)
                yield cfg, trace_gluing(s, cfg)
            return
        base = e * 6
        choices = (config[e],) if e < len(prefix) else range(6)
        for pi in choices:
            p = S3[pi]
            config[e] = pi
            trail = []
            ok = True
            now_closed = closed
            for i in range(3):
                a = base + i
                b = base + 3 + p[i]
                if end_of[a] == b:
                    cycle_len = length[a] + 1
                    if cycle_len < min_disk_len:
                        ok = False
                        break
                    now_closed += 1
                    if now_closed > target or (
                        now_closed == target and (e, i) != (n_edges - 1, 2)
                    ):
                        ok = False
                        break
                else:
                    ea, eb = end_of[a], end_of[b]
                    new_len = length[a] + length[b] + 1
                    trail.append((ea, end_of[ea], length[ea]))
                    trail.append((eb, end_of[eb], length[eb]))
                    end_of[ea] = eb
                    end_of[eb] = ea
                    length[ea] = new_len
                    length[eb] = new_len
            if ok:
                yield from descend(e + 1, now_closed)
            for node, old_end, old_len in reversed(trail):
                end_of[node] = old_end
                length[node] = old_len
        if e >= len(prefix):
            config[e] = 0

    yield from descend(0, 0)
