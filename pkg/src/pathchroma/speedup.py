"""Round speed-up for one-sided algorithms and its colour relations.

Given a t-round c-colouring rule, the speed-up builds a (t-1)-round rule
whose output at a node is the set of colours the original rule could still
assign to the node's successor; that set is always a non-empty proper
subset of the old palette, so it encodes into at most 2^c - 2 new colours.
Iterating yields a tower of ever-faster algorithms over nested colour
families, whose empirical successor/output relations drive the
successor-graph lower-bound machinery.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable, Hashable, Mapping

from .errors import BudgetExceeded
from .model import (
    DEFAULT_BUDGET,
    ONE_SIDED,
    Palette,
    ReductionAlgorithm,
    ColourWindow,
    canonical_label,
    count_proper_sequences,
    proper_sequences,
)

Colour = Hashable  # int at level 0, frozenset of previous-level colours above


def decode_family(rank: int, c: int) -> frozenset[int]:
    """The non-empty proper subset of [c] with colexicographic rank ``rank``.

    Subsets ordered by largest element first coincide with bitmask order,
    so the rank of a family is simply its bitmask value.
    """
    if not 1 <= rank <= (1 << c) - 2:
        raise ValueError(f"rank {rank} outside [1, 2^{c}-2]")
    return frozenset(i + 1 for i in range(c) if rank >> i & 1)


def encode_family(members, c: int) -> int:
    """Inverse of :func:`decode_family`."""
    ms = frozenset(members)
    if not ms or any(not 1 <= x <= c for x in ms):
        raise ValueError(f"expected a non-empty subset of [{c}]")
    if len(ms) == c:
        raise ValueError("the full colour set is not a valid family")
    return sum(1 << (x - 1) for x in ms)


@dataclass(frozen=True)
class ColourFamily:
    """A set of previous-level colours together with its integer encoding."""

    members: frozenset[int]
    palette_size: int

    @property
    def rank(self) -> int:
        return encode_family(self.members, self.palette_size)

    @classmethod
    def from_rank(cls, rank: int, palette_size: int) -> "ColourFamily":
        return cls(decode_family(rank, palette_size), palette_size)


@dataclass(frozen=True)
class SpeedUpResult:
    algorithm: ReductionAlgorithm
    decode: Callable[[int], frozenset[int]]


def speed_up(alg: ReductionAlgorithm) -> SpeedUpResult:
    """One round faster, with outputs over non-empty proper subsets of [c].

    The new rule enumerates every colour the source rule could give the
    node's successor and returns the colex rank of that set.  Also returns
    the decoder from ranks back to member sets.
    """
    if alg.sidedness != ONE_SIDED:
        raise ValueError("the speed-up applies to one-sided algorithms only")
    if alg.rounds < 1:
        raise ValueError("cannot speed up a 0-round algorithm")
    n = alg.in_palette.size
    if not isinstance(n, int):
        raise ValueError("the speed-up needs a concrete input palette")
    c = alg.out_palette.size
    rule = alg.rule
    full = (1 << c) - 1
    cache: dict[ColourWindow, int] = {}

    def fast_rule(window: ColourWindow) -> int:
        bits = cache.get(window)
        if bits is None:
            last = window[-1]
            bits = 0
            for y in range(1, n + 1):
                if y != last:
                    bits |= 1 << (rule(window + (y,)) - 1)
            if bits == 0 or bits == full:
                raise ValueError(
                    "source algorithm violates its properness contract "
                    f"(window {window} realises {'no' if bits == 0 else 'every'} colour)"
                )
            cache[window] = bits
        return bits

    faster = ReductionAlgorithm(
        ONE_SIDED,
        alg.rounds - 1,
        alg.in_palette,
        Palette((1 << c) - 2),
        fast_rule,
        name=f"speedup({alg.name})",
    )
    return SpeedUpResult(faster, lambda rank: decode_family(rank, c))


@dataclass(frozen=True)
class SpeedUpLevel:
    """One algorithm of the tower plus its realized colours.

    ``semantic`` decodes each realized encoded colour into the nested family
    of base colours it stands for (plain ints at level 0).
    """

    algorithm: ReductionAlgorithm
    realized: frozenset[int]
    semantic: Mapping[int, Colour]

    def colours(self) -> frozenset[Colour]:
        return frozenset(self.semantic[r] for r in self.realized)


@dataclass(frozen=True)
class ColourRelation:
    """A set of ordered pairs between colour levels (successor or output kind)."""

    kind: str
    pairs: frozenset[tuple[Colour, Colour]]

    def image(self, x: Colour) -> frozenset[Colour]:
        return frozenset(b for a, b in self.pairs if a == x)

    def is_irreflexive(self) -> bool:
        return all(a != b for a, b in self.pairs)

    def to_text(self) -> str:
        lines = sorted(
            f"{canonical_label(a)} -> {canonical_label(b)}" for a, b in self.pairs
        )
        return "\n".join(lines) + "\n"


def _as_lookup(semantic) -> Callable[[int], Colour]:
    if semantic is None:
        return lambda x: x
    if isinstance(semantic, Mapping):
        return semantic.__getitem__
    return semantic


def successor_relation(
    alg: ReductionAlgorithm, *, semantic=None, budget: int | None = None
) -> ColourRelation:
    """All (own output, successor output) pairs over adjacent-distinct inputs."""
    budget = DEFAULT_BUDGET if budget is None else budget
    n = alg.in_palette.size
    wl = alg.window_length
    cost = count_proper_sequences(n, wl + 1)
    if cost > budget:
        raise BudgetExceeded(f"{cost} sequences exceed budget {budget}")
    sem = _as_lookup(semantic)
    rule = alg.rule
    pairs = set()
    for seq in proper_sequences(n, wl + 1):
        pairs.add((sem(rule(seq[:wl])), sem(rule(seq[1:]))))
    return ColourRelation("successor", frozenset(pairs))


def output_relation(
    alg: ReductionAlgorithm,
    faster: ReductionAlgorithm,
    *,
    semantic=None,
    semantic_faster=None,
    budget: int | None = None,
) -> ColourRelation:
    """All (own colour under ``alg``, own colour under ``faster``) pairs.

    ``faster`` must be the speed-up of ``alg``; its window at a node is the
    suffix of the node's full window, so both colours come from one
    enumeration of full windows.
    """
    if faster.rounds != alg.rounds - 1:
        raise ValueError("expected the one-round speed-up of the source algorithm")
    budget = DEFAULT_BUDGET if budget is None else budget
    n = alg.in_palette.size
    wl = alg.window_length
    cost = count_proper_sequences(n, wl)
    if cost > budget:
        raise BudgetExceeded(f"{cost} sequences exceed budget {budget}")
    sem_a = _as_lookup(semantic)
    sem_b = _as_lookup(semantic_faster)
    pairs = set()
    for window in proper_sequences(n, wl):
        pairs.add((sem_a(alg.rule(window)), sem_b(faster.rule(window[1:]))))
    return ColourRelation("output", frozenset(pairs))


def lemma7_pairs(output_rel: ColourRelation) -> frozenset[tuple[Colour, Colour]]:
    """Successor pairs licensed by an output relation.

    (X, Y) is included when some (y, Y) lies in the relation with y a member
    of X and X itself appears as an output.  Every empirical successor pair
    of the faster algorithm is of this form; the reverse inclusion holds for
    the worst-case (fully saturated) relations but can fail for realized
    ones, because the two witnesses need not come from one instance.
    """
    outputs = {X for _, X in output_rel.pairs}
    licensed = set()
    for y, Y in output_rel.pairs:
        for X in outputs:
            if y in X:
                licensed.add((X, Y))
    return frozenset(licensed)


@dataclass(frozen=True)
class SpeedUpTower:
    """Algorithms A_0 .. A_k from iterating the speed-up, with their colours."""

    levels: tuple[SpeedUpLevel, ...]
    budget: int

    def algorithm(self, k: int) -> ReductionAlgorithm:
        return self.levels[k].algorithm

    def colours(self, k: int) -> frozenset[Colour]:
        return self.levels[k].colours()

    def successor_relation(self, k: int) -> ColourRelation:
        level = self.levels[k]
        return successor_relation(
            level.algorithm, semantic=level.semantic, budget=self.budget
        )

    def output_relation(self, k: int) -> ColourRelation:
        if k + 1 >= len(self.levels):
            raise ValueError(f"tower has no level {k + 1}")
        return output_relation(
            self.levels[k].algorithm,
            self.levels[k + 1].algorithm,
            semantic=self.levels[k].semantic,
            semantic_faster=self.levels[k + 1].semantic,
            budget=self.budget,
        )

    def compose_colouring(self, colouring: Mapping, k: int) -> ReductionAlgorithm:
        level = self.levels[k]
        return compose_colouring(colouring, level.algorithm, semantic=level.semantic)


def iterate_speed_up(
    alg: ReductionAlgorithm, k: int, *, budget: int | None = None
) -> SpeedUpTower:
    """Apply the speed-up k times, recording realized colours at every level."""
    if k < 0 or k > alg.rounds:
        raise ValueError("can iterate between 0 and rounds(alg) times")
    budget = DEFAULT_BUDGET if budget is None else budget
    n = alg.in_palette.size
    if not isinstance(n, int):
        raise ValueError("iteration needs a concrete input palette")

    levels: list[SpeedUpLevel] = []
    spent = 0
    current = alg
    decode: Callable[[int], frozenset[int]] | None = None
    for _ in range(k + 1):
        wl = current.window_length
        cost = count_proper_sequences(n, wl)
        spent += cost
        if spent > budget:
            raise BudgetExceeded(f"{spent} window evaluations exceed budget {budget}")
        realized = frozenset(current.rule(w) for w in proper_sequences(n, wl))
        if decode is None:
            semantic: dict[int, Colour] = {r: r for r in realized}
        else:
            prev = levels[-1].semantic
            semantic = {
                r: frozenset(prev[x] for x in decode(r)) for r in realized
            }
        levels.append(SpeedUpLevel(current, realized, semantic))
        if len(levels) <= k:
            result = speed_up(current)
            current = result.algorithm
            decode = result.decode
    return SpeedUpTower(tuple(levels), budget)


def compose_colouring(
    colouring: Mapping | Callable[[Colour], int],
    alg: ReductionAlgorithm,
    *,
    semantic=None,
    colours: int | None = None,
) -> ReductionAlgorithm:
    """Relabel an algorithm's outputs through a graph colouring of its colour space.

    When the colouring is proper on the algorithm's successor graph, the
    composite is again a proper reduction, now onto the colouring's palette.
    Raises if a realized colour has no entry.
    """
    if colours is None:
        if not isinstance(colouring, Mapping):
            raise ValueError("pass colours= when the colouring is not a mapping")
        colours = max(colouring.values())
    sem = _as_lookup(semantic)
    lookup = colouring.__getitem__ if isinstance(colouring, Mapping) else colouring
    rule = alg.rule

    def composed(window: ColourWindow) -> int:
        value = sem(rule(window))
        try:
            return lookup(value)
        except KeyError:
            raise ValueError(
                f"colouring has no class for realized colour {canonical_label(value)}"
            ) from None

    return ReductionAlgorithm(
        ONE_SIDED,
        alg.rounds,
        alg.in_palette,
        Palette(colours),
        composed,
        name=f"recolour({alg.name})",
    )


def search_one_round_map(n: int, c: int, *, budget: int | None = None) -> tuple[bool, int]:
    """Scan every map from ordered distinct pairs over [n] to [c].

    Returns (a proper one-round rule exists, candidates examined).  The scan
    stops at the first proper candidate; refutations examine all c^(n(n-1)).
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    pairs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v]
    index = {p: i for i, p in enumerate(pairs)}
    conflicts = tuple(
        (index[(u, v)], index[(v, w)])
        for (u, v) in pairs
        for w in range(1, n + 1)
        if w != v
    )
    total = c ** len(pairs)
    if total > budget:
        raise BudgetExceeded(f"{total} candidate maps exceed budget {budget}")
    examined = 0
    for candidate in itertools.product(range(c), repeat=len(pairs)):
        examined += 1
        for i, j in conflicts:
            if candidate[i] == candidate[j]:
                break
        else:
            return True, examined
    return False, examined


def exhaustive_one_round_lower_bound(n: int, c: int, *, budget: int | None = None) -> bool:
    """True iff no one-round rule on [n] windows yields a proper c-colouring."""
    exists, _ = search_one_round_map(n, c, budget=budget)
    return not exists


def random_proper_table(
    n: int,
    t: int,
    c: int,
    seed: int,
    *,
    max_backtracks: int = 1000,
    restarts: int = 2000,
) -> ReductionAlgorithm:
    """Seeded random proper table algorithm: n colours in, c out, t rounds.

    Samples by randomised backtracking over the window-overlap constraint
    graph (uniform rejection sampling is hopeless here: random tables are
    essentially never proper).  Short backtrack allowances with many
    restarts sidestep the heavy-tailed search times.  Deterministic for a
    fixed seed.  Raises RuntimeError when every restart exhausts its
    allowance, e.g. for parameters where no proper table exists.
    """
    windows = list(proper_sequences(n, t + 1))
    index = {w: i for i, w in enumerate(windows)}
    neighbours: list[set[int]] = [set() for _ in windows]
    for i, w in enumerate(windows):
        stem = w[1:]
        for y in range(1, n + 1):
            if y != w[-1]:
                j = index[stem + (y,)]
                if j != i:
                    neighbours[i].add(j)
                    neighbours[j].add(i)
    adjacency = [tuple(sorted(s)) for s in neighbours]
    degree = [len(a) for a in adjacency]

    rng = random.Random(seed)
    for _ in range(restarts):
        assignment = _random_dsatur(adjacency, degree, c, rng, max_backtracks=max_backtracks)
        if assignment is not None:
            table = {w: assignment[i] for i, w in enumerate(windows)}
            return ReductionAlgorithm(
                ONE_SIDED,
                t,
                Palette(n),
                Palette(c),
                table.__getitem__,
                name=f"table(n={n},t={t},c={c},seed={seed})",
            )
    raise RuntimeError(
        f"no proper table found for n={n}, t={t}, c={c} within the search allowance"
    )


def _random_dsatur(adjacency, degree, c, rng, *, max_backtracks):
    # Backtracking colour search that always extends the vertex seeing the
    # most distinct neighbour colours (random tie-break, random colour
    # order): the fail-first ordering keeps dead ends shallow.
    size = len(adjacency)
    colour = [0] * size
    forbidden = [0] * size
    uncoloured = set(range(size))
    frames: list[tuple[int, list[int], int, list[int]]] = []
    backtracks = 0
    full = (1 << c) - 1

    while uncoloured:
        best = (-1, -1)
        candidates: list[int] = []
        for v in uncoloured:
            key = (forbidden[v].bit_count(), degree[v])
            if key > best:
                best = key
                candidates = [v]
            elif key == best:
                candidates.append(v)
        v = rng.choice(candidates)
        options = [col for col in range(1, c + 1) if not forbidden[v] >> (col - 1) & 1]
        rng.shuffle(options)
        while True:
            if options:
                col = options.pop()
                bit = 1 << (col - 1)
                colour[v] = col
                uncoloured.discard(v)
                changed = []
                for u in adjacency[v]:
                    if colour[u] == 0 and not forbidden[u] & bit:
                        forbidden[u] |= bit
                        changed.append(u)
                frames.append((v, options, col, changed))
                break
            backtracks += 1
            if backtracks > max_backtracks or not frames:
                return None
            v, options, col, changed = frames.pop()
            bit = 1 << (col - 1)
            for u in changed:
                forbidden[u] ^= bit
            colour[v] = 0
            uncoloured.add(v)
    return colour
