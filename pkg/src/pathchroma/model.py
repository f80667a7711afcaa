"""Core model for colour reduction on directed paths and cycles.

Palettes, path instances and reduction algorithms; the simulator with its
deterministic virtual-extension convention at path endpoints; properness
checks; conversions between one-sided and two-sided algorithms; and
log*/tetration arithmetic for round-complexity bounds.

Conventions: colours are integers 1..n.  A one-sided rule with t rounds
sees a window of t+1 colours with the node's own colour last; a two-sided
rule with t rounds sees 2t+1 colours with the node's own colour in the
centre.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from math import log2
from typing import Callable, Iterator

from .errors import BudgetExceeded

ONE_SIDED = "one-sided"
TWO_SIDED = "two-sided"
PATH = "path"
CYCLE = "cycle"

DEFAULT_BUDGET = 10**8

# A window of colours as one node sees them: own colour last for
# one-sided rules, centred for two-sided ones; adjacent entries differ.
ColourWindow = tuple[int, ...]

# tower(h) for h = 0..5; tower(5) is a 65537-bit integer, tower(6) does not
# fit in memory, so any representable integer is strictly below tower(6).
_EXACT_TOWER_HEIGHT = 5
_TOWERS = [1, 2, 4, 16, 65536, 2**65536]


@dataclass(frozen=True, eq=False)
class TowerValue:
    """A number of the form tower(height) + offset.

    Lets bound arithmetic operate on palette sizes past the point where the
    exact integer can be materialised (height >= 6).  For height <= 4 the
    offset must not reach the next tower level; for height >= 5 any
    representable offset is automatically safe.
    """

    height: int
    offset: int = 0

    def __post_init__(self) -> None:
        if self.height < 0 or self.offset < 0:
            raise ValueError("tower height and offset must be non-negative")
        if self.height < _EXACT_TOWER_HEIGHT:
            if _TOWERS[self.height] + self.offset >= _TOWERS[self.height + 1]:
                raise ValueError("offset reaches the next tower level; use a larger height")

    def exact(self) -> int:
        if self.height > _EXACT_TOWER_HEIGHT:
            raise OverflowError(f"tower({self.height}) does not fit in memory")
        return _TOWERS[self.height] + self.offset

    def _cmp(self, other: int | TowerValue) -> int:
        if isinstance(other, int):
            if self.height <= _EXACT_TOWER_HEIGHT:
                mine = self.exact()
                return (mine > other) - (mine < other)
            return 1  # tower(>=6) exceeds any representable integer
        if isinstance(other, TowerValue):
            if self.height != other.height:
                return 1 if self.height > other.height else -1
            return (self.offset > other.offset) - (self.offset < other.offset)
        return NotImplemented  # type: ignore[return-value]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, TowerValue)):
            c = self._cmp(other)
            return c == 0 if c is not NotImplemented else NotImplemented
        return NotImplemented

    def __hash__(self) -> int:
        return hash((TowerValue, self.height, self.offset))

    def __lt__(self, other):
        c = self._cmp(other)
        return c < 0 if c is not NotImplemented else NotImplemented

    def __le__(self, other):
        c = self._cmp(other)
        return c <= 0 if c is not NotImplemented else NotImplemented

    def __gt__(self, other):
        c = self._cmp(other)
        return c > 0 if c is not NotImplemented else NotImplemented

    def __ge__(self, other):
        c = self._cmp(other)
        return c >= 0 if c is not NotImplemented else NotImplemented

    def __str__(self) -> str:
        return f"pt:{self.height}+{self.offset}" if self.offset else f"pt:{self.height}"


def tower(height: int, *, exact_limit: int = _EXACT_TOWER_HEIGHT) -> int | TowerValue:
    """Tetration with base 2: tower(0) = 1, tower(h+1) = 2**tower(h).

    Returns a plain integer up to ``exact_limit`` and a symbolic
    :class:`TowerValue` above it (heights past 5 cannot be materialised).
    """
    if height < 0:
        raise ValueError("tower height must be non-negative")
    if exact_limit > _EXACT_TOWER_HEIGHT:
        raise ValueError(f"exact towers are only available up to height {_EXACT_TOWER_HEIGHT}")
    if height <= exact_limit:
        return _TOWERS[height]
    return TowerValue(height)


def _label_key(obj):
    if isinstance(obj, (frozenset, set)):
        return (1, tuple(sorted(_label_key(x) for x in obj)))
    if isinstance(obj, tuple):
        return (2, tuple(_label_key(x) for x in obj))
    return (0, obj)


def canonical_label(obj) -> str:
    """Stable text form for colours: ints, windows, and nested colour families."""
    if isinstance(obj, (frozenset, set)):
        parts = sorted(obj, key=_label_key)
        return "{" + ",".join(canonical_label(x) for x in parts) + "}"
    if isinstance(obj, tuple):
        return "(" + ",".join(canonical_label(x) for x in obj) + ")"
    return str(obj)


def format_count(x: int | TowerValue) -> str:
    """Decimal rendering, falling back to ~2^e for integers too large to print."""
    if isinstance(x, TowerValue):
        return str(x)
    if x.bit_length() <= 133:  # about 40 decimal digits
        return str(x)
    return f"~2^{x.bit_length() - 1}"


def log_star(x: int | float | TowerValue) -> int:
    """Least i such that the i-fold binary logarithm of x is <= 1."""
    if isinstance(x, TowerValue):
        return x.height + (1 if x.offset else 0)
    if isinstance(x, float):
        if x < 1:
            raise ValueError("log_star requires x >= 1")
        i = 0
        while x > 1:
            x = log2(x)
            i += 1
        return i
    if x < 1:
        raise ValueError("log_star requires x >= 1")
    for h, value in enumerate(_TOWERS):
        if x <= value:
            return h
    return _EXACT_TOWER_HEIGHT + 1  # tower(5) < x < tower(6) for any representable int


@dataclass(frozen=True)
class Palette:
    """The set of colours {1, ..., size}."""

    size: int | TowerValue

    def __post_init__(self) -> None:
        if isinstance(self.size, int) and self.size < 1:
            raise ValueError("palette size must be at least 1")

    def __contains__(self, colour: int) -> bool:
        return isinstance(colour, int) and 1 <= colour and colour <= self.size

    def __str__(self) -> str:
        return format_count(self.size)


@dataclass(frozen=True)
class PathInstance:
    """A directed path or cycle whose nodes carry colour labels."""

    topology: str
    labels: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.topology not in (PATH, CYCLE):
            raise ValueError(f"unknown topology {self.topology!r}")
        if len(self.labels) < 2:
            raise ValueError("an instance needs at least 2 nodes")
        if any(not isinstance(x, int) or x < 1 for x in self.labels):
            raise ValueError("labels must be positive integers")

    def __len__(self) -> int:
        return len(self.labels)


def is_proper(instance: PathInstance) -> bool:
    """True iff all adjacent labels differ, including the wrap-around pair on cycles."""
    labels = instance.labels
    if any(a == b for a, b in zip(labels, labels[1:])):
        return False
    if instance.topology == CYCLE and labels[-1] == labels[0]:
        return False
    return True


@dataclass(frozen=True, eq=False)
class ReductionAlgorithm:
    """A colour-reduction rule together with its round count and palettes.

    ``rule`` maps a valid window (adjacent entries distinct, correct length)
    to an output colour.  The properness contract -- overlapping windows get
    distinct outputs -- is checkable with :func:`exhaustive_properness_check`.
    ``stages`` is set for composed pipelines so the simulator can evaluate
    stage by stage instead of re-running the full composition per node.
    """

    sidedness: str
    rounds: int
    in_palette: Palette
    out_palette: Palette
    rule: Callable[[ColourWindow], int]
    name: str = "custom"
    stages: tuple["ReductionAlgorithm", ...] | None = None

    def __post_init__(self) -> None:
        if self.sidedness not in (ONE_SIDED, TWO_SIDED):
            raise ValueError(f"unknown sidedness {self.sidedness!r}")
        if self.rounds < 0:
            raise ValueError("round count must be non-negative")

    @property
    def window_length(self) -> int:
        return self.rounds + 1 if self.sidedness == ONE_SIDED else 2 * self.rounds + 1

    def describe(self) -> str:
        return f"{self.name} in={self.in_palette} out={self.out_palette}"


def identity_algorithm(n: int) -> ReductionAlgorithm:
    """The 0-round rule that outputs the node's own colour."""
    return ReductionAlgorithm(
        ONE_SIDED, 0, Palette(n), Palette(n), lambda w: w[0], name="identity"
    )


def _virtual_prev(x: int) -> int:
    # Deterministic extension colour: differs from x, computable by all nodes.
    return 1 if x != 1 else 2


def _virtual_prefix(first: int, count: int) -> list[int]:
    out: list[int] = []
    x = first
    for _ in range(count):
        x = _virtual_prev(x)
        out.append(x)
    out.reverse()
    return out


def _virtual_suffix(last: int, count: int) -> list[int]:
    out: list[int] = []
    x = last
    for _ in range(count):
        x = _virtual_prev(x)
        out.append(x)
    return out


def run_algorithm(alg: ReductionAlgorithm, instance: PathInstance) -> PathInstance:
    """Relabel an instance by applying the algorithm's rule at every node.

    Windows wrap on cycles.  On paths, entries beyond the endpoints are
    simulated by the virtual-extension rule (prev(x) = 1 unless x = 1, then
    2), applied backwards from the head and mirrored past the tail.
    """
    if any(x not in alg.in_palette for x in instance.labels):
        raise ValueError("instance labels do not lie in the algorithm's input palette")
    if not is_proper(instance):
        raise ValueError("input instance is not properly coloured")

    t = alg.rounds
    before = t
    after = t if alg.sidedness == TWO_SIDED else 0
    labels = instance.labels
    length = len(labels)
    if instance.topology == CYCLE:
        seq = [labels[(i - before) % length] for i in range(length + before + after)]
    else:
        seq = _virtual_prefix(labels[0], before) + list(labels) + _virtual_suffix(labels[-1], after)

    for stage in alg.stages or (alg,):
        wl = stage.window_length
        seq = list(map(stage.rule, zip(*(seq[i:] for i in range(wl)))))
    assert len(seq) == length
    return PathInstance(instance.topology, tuple(seq))


def proper_sequences(n: int, length: int) -> Iterator[ColourWindow]:
    """All sequences over [n] of the given length with adjacent entries distinct."""
    if length == 0:
        yield ()
        return
    if n == 1:
        if length == 1:
            yield (1,)
        return
    for first in range(1, n + 1):
        for offsets in itertools.product(range(1, n), repeat=length - 1):
            seq = [first]
            prev = first
            for off in offsets:
                prev = off if off < prev else off + 1
                seq.append(prev)
            yield tuple(seq)


def count_proper_sequences(n: int, length: int) -> int:
    if length == 0:
        return 1
    return n * (n - 1) ** (length - 1)


def exhaustive_properness_check(alg: ReductionAlgorithm, *, budget: int | None = None) -> bool:
    """Check the properness contract on every pair of overlapping valid windows.

    Streams through all adjacent-distinct sequences one entry longer than the
    window; also verifies outputs stay inside the output palette.  Raises
    :class:`BudgetExceeded` (rather than returning a verdict) when the
    enumeration would run past the budget.
    """
    budget = DEFAULT_BUDGET if budget is None else budget
    n = alg.in_palette.size
    if not isinstance(n, int):
        raise BudgetExceeded("input palette is symbolic; exhaustive enumeration impossible")
    wl = alg.window_length
    cost = 2 * count_proper_sequences(n, wl + 1)
    if cost > budget:
        raise BudgetExceeded(f"{cost} window evaluations exceed budget {budget}")
    c = alg.out_palette.size
    rule = alg.rule
    for seq in proper_sequences(n, wl + 1):
        a = rule(seq[:wl])
        b = rule(seq[1:])
        if a == b or not (1 <= a <= c) or not (1 <= b <= c):
            return False
    return True


def sampled_properness_check(
    alg: ReductionAlgorithm, *, samples: int = 10**6, seed: int = 0
) -> bool:
    """Properness spot-check on random window pairs, for palettes beyond the budget."""
    n = alg.in_palette.size
    if not isinstance(n, int):
        raise ValueError("cannot sample windows from a symbolic palette")
    wl = alg.window_length
    c = alg.out_palette.size
    rule = alg.rule
    rng = random.Random(seed)
    for _ in range(samples):
        seq = [rng.randint(1, n)]
        for _ in range(wl):
            x = rng.randint(1, n - 1)
            seq.append(x if x < seq[-1] else x + 1)
        window = tuple(seq)
        a = rule(window[:wl])
        b = rule(window[1:])
        if a == b or not (1 <= a <= c) or not (1 <= b <= c):
            return False
    return True


def one_sided_from_two_sided(alg: ReductionAlgorithm) -> ReductionAlgorithm:
    """Simulate a t-round two-sided algorithm one-sidedly in 2t rounds.

    The 2t+1 window of predecessors-plus-self carries exactly the radius-t
    neighbourhood of the node t hops back, so the rule itself is unchanged;
    on cycles the output is the two-sided output rotated by t positions.
    """
    if alg.sidedness != TWO_SIDED:
        raise ValueError("expected a two-sided algorithm")
    return ReductionAlgorithm(
        ONE_SIDED,
        2 * alg.rounds,
        alg.in_palette,
        alg.out_palette,
        alg.rule,
        name=f"one-sided({alg.name})",
    )


def two_sided_from_one_sided(alg: ReductionAlgorithm) -> ReductionAlgorithm:
    """Run a t-round one-sided algorithm two-sidedly in ceil(t/2) rounds.

    The radius-ceil(t/2) window contains t+1 consecutive colours; the rule is
    evaluated on its leftmost t+1 entries.
    """
    if alg.sidedness != ONE_SIDED:
        raise ValueError("expected a one-sided algorithm")
    t = alg.rounds
    wl = t + 1
    rule = alg.rule

    def two_sided_rule(window: ColourWindow) -> int:
        return rule(window[:wl])

    return ReductionAlgorithm(
        TWO_SIDED,
        (t + 1) // 2,
        alg.in_palette,
        alg.out_palette,
        two_sided_rule,
        name=f"two-sided({alg.name})",
    )


def _ceil_half(x: int) -> int:
    return -(-x // 2)


@dataclass(frozen=True)
class BoundsReport:
    """Lower/upper bounds on the one- and two-sided round complexity of 3-colouring."""

    n: int | TowerValue
    log_star: int
    lower_t: int
    upper_t: int
    lower_c: int
    upper_c: int

    @property
    def exact(self) -> bool:
        return self.lower_c == self.upper_c

    def to_text(self) -> str:
        lines = [
            f"n={format_count(self.n)}",
            f"logStar={self.log_star}",
            f"lowerT={self.lower_t}",
            f"upperT={self.upper_t}",
            f"lowerC={self.lower_c}",
            f"upperC={self.upper_c}",
            f"exact={'true' if self.exact else 'false'}",
        ]
        return "\n".join(lines) + "\n"


def _largest_tower_le(n: int | TowerValue) -> int:
    if isinstance(n, TowerValue):
        return n.height
    for h in range(len(_TOWERS) - 1, -1, -1):
        if _TOWERS[h] <= n:
            return h
    raise ValueError("n below tower(0)")


def _smallest_tower_plus_one_ge(n: int | TowerValue) -> int:
    if isinstance(n, TowerValue):
        return n.height if n.offset <= 1 else n.height + 1
    for h, value in enumerate(_TOWERS):
        if n <= value + 1:
            return h
    return _EXACT_TOWER_HEIGHT + 1


def bounds_report(n: int | TowerValue) -> BoundsReport:
    """Round-complexity bounds for colour reduction from n to 3 colours.

    lowerT is the largest h with tower(h) <= n; upperT comes from the
    schedule arithmetic (smallest h with n <= tower(h)+1, plus one round),
    except at n = 4 where the two-round reducer is known optimal.  The
    two-sided bounds combine the log*-based window with the transfer
    C = ceil(T/2), whichever is tighter on each side.
    """
    if n < 4:
        raise ValueError("bounds are defined for n >= 4")
    s = log_star(n)
    lower_t = max(2, _largest_tower_le(n))
    if n == 4:
        upper_t = 2
    else:
        upper_t = max(2, _smallest_tower_plus_one_ge(n)) + 1
    lower_c = max(_ceil_half(s - 1), _ceil_half(lower_t))
    upper_c = min(_ceil_half(s + 1), _ceil_half(upper_t))
    report = BoundsReport(n, s, lower_t, upper_t, lower_c, upper_c)
    assert report.lower_t <= report.upper_t <= report.lower_t + 2
    assert report.lower_c <= report.upper_c <= report.lower_c + 1
    return report


def random_proper_instance(
    n: int, length: int, seed: int, topology: str = CYCLE
) -> PathInstance:
    """Seeded random properly-coloured instance with labels in [n]."""
    if n < 2:
        raise ValueError("need at least 2 colours")
    if length < 2:
        raise ValueError("need at least 2 nodes")
    if topology == CYCLE and n == 2 and length % 2 == 1:
        raise ValueError("odd cycles admit no proper 2-colouring")
    rng = random.Random(seed)
    labels = [rng.randint(1, n)]
    for _ in range(length - 1):
        x = rng.randint(1, n - 1)
        labels.append(x if x < labels[-1] else x + 1)
    if topology == CYCLE:
        while labels[-1] == labels[0] or labels[-1] == labels[-2]:
            labels[-1] = rng.randint(1, n)
    return PathInstance(topology, tuple(labels))


def format_instance(instance: PathInstance) -> str:
    return f"{instance.topology}\n{' '.join(map(str, instance.labels))}\n"


def parse_instance(text: str) -> PathInstance:
    """Parse the two-line text format: topology, then space-separated labels."""
    lines = [line.strip() for line in text.strip().splitlines() if line.strip()]
    if len(lines) != 2:
        raise ValueError("expected two lines: topology and labels")
    try:
        labels = tuple(int(tok) for tok in lines[1].split())
    except ValueError:
        raise ValueError("labels must be integers") from None
    return PathInstance(lines[0], labels)
