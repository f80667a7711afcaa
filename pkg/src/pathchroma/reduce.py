"""Concrete colour-reduction algorithms and the greedy reduction scheduler.

The fast one-round reduction interprets colours as k-subsets of [2k] via a
colexicographic code and outputs ``min f(u) \\ f(v)``; the bit-pairing
reduction gets one round from 2^k to 2k colours; the shift reducer removes
one colour in two rounds.  ``ns_schedule`` chains these into an n-to-3
pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .model import (
    ONE_SIDED,
    Palette,
    ReductionAlgorithm,
    TowerValue,
    ColourWindow,
    format_count,
    identity_algorithm,
)


def colex_rank(members: Iterable[int], m: int | None = None) -> int:
    """1-based colexicographic rank of a k-subset of [m] (largest elements first)."""
    ms = sorted(members)
    if not ms or ms[0] < 1 or len(set(ms)) != len(ms):
        raise ValueError("members must be a non-empty set of distinct positive integers")
    if m is not None and ms[-1] > m:
        raise ValueError(f"member {ms[-1]} outside universe [{m}]")
    return 1 + sum(comb(a - 1, i) for i, a in enumerate(ms, start=1))


def colex_unrank(rank: int, k: int, m: int) -> frozenset[int]:
    """The k-subset of [m] with the given colexicographic rank; inverse of colex_rank."""
    if not 1 <= k <= m:
        raise ValueError("need 1 <= k <= m")
    if not 1 <= rank <= comb(m, k):
        raise ValueError(f"rank {rank} outside [1, C({m},{k})]")
    r = rank - 1
    members = []
    hi = m
    for i in range(k, 0, -1):
        # largest a <= hi with C(a-1, i) <= r
        a = hi
        while comb(a - 1, i) > r:
            a -= 1
        r -= comb(a - 1, i)
        members.append(a)
        hi = a - 1
    return frozenset(members)


def _colex_unrank_mask(rank: int, k: int, m: int) -> int:
    # Bitmask variant used on the hot path; bit i-1 stands for element i.
    r = rank - 1
    mask = 0
    hi = m
    for i in range(k, 0, -1):
        a = hi
        while comb(a - 1, i) > r:
            a -= 1
        r -= comb(a - 1, i)
        mask |= 1 << (a - 1)
        hi = a - 1
    return mask


@dataclass(frozen=True)
class SubsetCode:
    """A colour interpreted as a k-subset of [2k] under the colex code."""

    k: int
    rank: int
    members: frozenset[int]

    @property
    def universe(self) -> int:
        return 2 * self.k

    @classmethod
    def from_rank(cls, rank: int, k: int) -> "SubsetCode":
        return cls(k, rank, colex_unrank(rank, k, 2 * k))

    @classmethod
    def from_members(cls, members: Iterable[int], k: int) -> "SubsetCode":
        ms = frozenset(members)
        if len(ms) != k:
            raise ValueError(f"expected a {k}-subset")
        return cls(k, colex_rank(ms, 2 * k), ms)


def _fits_subset_code(n: int | TowerValue, k: int) -> bool:
    """Decide n <= C(2k, k), exactly when n is an integer.

    For symbolic n the decision uses the central-binomial lower bound
    C(2k,k) >= 4^k / sqrt(4k), i.e. it may say "no" for a k that barely
    fits; every "yes" is certainly correct.
    """
    if isinstance(n, int):
        return n <= comb(2 * k, k)
    # 16^k >= 4k * n^2 implies C(2k,k) >= 4^k/sqrt(4k) >= n
    bits = _ceil_log2(n)
    return 4 * k >= 2 * bits + (4 * k).bit_length() + 1


def _ceil_log2(n: int | TowerValue) -> int:
    if isinstance(n, int):
        return (n - 1).bit_length()
    if n.height - 1 > 5:
        raise ValueError(f"cannot schedule above tower(6): {n}")
    prev = [1, 2, 4, 16, 65536, 2**65536][n.height - 1]
    return prev if n.offset == 0 else prev + 1


def least_ns_k(c: int | TowerValue) -> int:
    """Least k >= 2 whose subset code covers c colours (bound-based for symbolic c)."""
    if isinstance(c, int):
        # C(2k,k) < 4^k, so every feasible k has 2k > log2(c); start just
        # below that and walk upward, updating the binomial incrementally
        # (one exact comb instead of a dozen at bignum sizes).
        k = 2 if c <= 70 else max(2, (c.bit_length() - 1) // 2)
        value = comb(2 * k, k)
        while value < c:
            k += 1
            value = value * 2 * (2 * k - 1) // k
        return k
    k = max(2, (2 * _ceil_log2(c)) // 4)
    while not _fits_subset_code(c, k):
        k += 1
    return k


def ns_algorithm(n: int | TowerValue, k: int) -> ReductionAlgorithm:
    """One-round reduction from n <= C(2k,k) colours to 2k colours.

    Colours are read as k-subsets of [2k] through the colex code; a node
    with colour v receiving u from its predecessor outputs min f(u) \\ f(v).
    Evaluated in closed form, caching subset masks per colour seen.
    """
    if k < 2:
        raise ValueError("subset-code reduction needs k >= 2")
    if not _fits_subset_code(n, k):
        raise ValueError(f"n={n} exceeds C({2 * k},{k}) colour codes")
    masks: dict[int, int] = {}

    def mask(colour: int) -> int:
        m = masks.get(colour)
        if m is None:
            m = _colex_unrank_mask(colour, k, 2 * k)
            masks[colour] = m
        return m

    def rule(window: ColourWindow) -> int:
        u, v = window
        d = mask(u) & ~mask(v)
        return (d & -d).bit_length()

    return ReductionAlgorithm(
        ONE_SIDED, 1, Palette(n), Palette(2 * k), rule, name=f"ns k={format_count(k)}"
    )


def cv_algorithm(k: int) -> ReductionAlgorithm:
    """One-round bit-pairing reduction from 2^k to 2k colours (k >= 3).

    A node with colour v receiving u outputs 2i + b + 1 where i is the
    lowest bit position at which u-1 and v-1 differ and b is that bit of
    v-1; overlapping windows disagree because the successor's bit flips.
    """
    if k < 3:
        raise ValueError("bit-pairing reduction needs k >= 3")

    def rule(window: ColourWindow) -> int:
        u, v = window
        x = (u - 1) ^ (v - 1)
        i = (x & -x).bit_length() - 1
        b = (v - 1) >> i & 1
        return 2 * i + b + 1

    return ReductionAlgorithm(
        ONE_SIDED, 1, Palette(2**k), Palette(2 * k), rule, name=f"cv k={k}"
    )


def four_to_three() -> ReductionAlgorithm:
    """Two-round reduction from 4 to 3 colours: drop colour 4, else keep the middle."""

    def rule(window: ColourWindow) -> int:
        u, v, w = window
        return min({1, 2, 3} - {u, w}) if v == 4 else v

    return ReductionAlgorithm(ONE_SIDED, 2, Palette(4), Palette(3), rule, name="4to3")


def shift_reduce(k: int) -> ReductionAlgorithm:
    """Two-round reduction from k+1 to k colours (k >= 3); generalises four_to_three."""
    if k < 3:
        raise ValueError("shift reducer needs k >= 3")
    if k == 3:
        return four_to_three()
    universe = frozenset(range(1, k + 1))

    def rule(window: ColourWindow) -> int:
        u, v, w = window
        return min(universe - {u, w}) if v == k + 1 else v

    return ReductionAlgorithm(
        ONE_SIDED, 2, Palette(k + 1), Palette(k), rule, name=f"shift k={k}"
    )


@dataclass(frozen=True)
class Pipeline:
    """An ordered chain of one-sided reduction stages with matching palettes."""

    stages: tuple[ReductionAlgorithm, ...]

    def __post_init__(self) -> None:
        if not self.stages:
            raise ValueError("a pipeline needs at least one stage")
        for stage in self.stages:
            if stage.sidedness != ONE_SIDED:
                raise ValueError("pipelines are built from one-sided stages")
        for a, b in zip(self.stages, self.stages[1:]):
            if a.out_palette.size != b.in_palette.size:
                raise ValueError(
                    f"palette mismatch between stages: {a.describe()} -> {b.describe()}"
                )

    @property
    def rounds(self) -> int:
        return sum(stage.rounds for stage in self.stages)

    @property
    def in_palette(self) -> Palette:
        return self.stages[0].in_palette

    @property
    def out_palette(self) -> Palette:
        return self.stages[-1].out_palette

    def describe(self) -> str:
        lines = [stage.describe() for stage in self.stages]
        lines.append(f"rounds={self.rounds}")
        return "\n".join(lines) + "\n"


def compose(pipeline: Pipeline | Sequence[ReductionAlgorithm]) -> ReductionAlgorithm:
    """Collapse a pipeline into a single one-sided algorithm.

    The rule slides every stage across the window of original colours, so
    its value at a node equals the value of running the stages in sequence.
    """
    if not isinstance(pipeline, Pipeline):
        pipeline = Pipeline(tuple(pipeline))
    stages = pipeline.stages
    if len(stages) == 1:
        return stages[0]

    def rule(window: ColourWindow) -> int:
        seq = window
        for stage in stages:
            wl = stage.window_length
            srule = stage.rule
            seq = tuple(srule(seq[i : i + wl]) for i in range(len(seq) - wl + 1))
        return seq[0]

    return ReductionAlgorithm(
        ONE_SIDED,
        pipeline.rounds,
        pipeline.in_palette,
        pipeline.out_palette,
        rule,
        name="+".join(stage.name for stage in stages),
        stages=stages,
    )


def ns_schedule(n: int | TowerValue) -> Pipeline:
    """Greedy n-to-3 reduction schedule.

    While more than 6 colours remain, apply the subset-code reduction with
    the least k that covers the current palette; step through 4 colours via
    k = 2 when 4 < c <= 6; finish with the two-round 4-to-3 reducer.  Uses
    exact binomials for integer palettes and the central-binomial bound for
    symbolic ones.
    """
    if n < 3:
        raise ValueError("schedules are defined for n >= 3")
    if isinstance(n, TowerValue) and n.height <= 5:
        n = n.exact()  # fits in a bignum, so use exact binomial comparisons
    if n == 3:
        return Pipeline((identity_algorithm(3),))
    stages: list[ReductionAlgorithm] = []
    c: int | TowerValue = n
    while c > 6:
        k = least_ns_k(c)
        stages.append(ns_algorithm(c, k))
        c = 2 * k
    if c > 4:
        stages.append(ns_algorithm(c, 2))
    stages.append(four_to_three())
    return Pipeline(tuple(stages))
