import math

import pytest
from hypothesis import given, strategies as st

from pathchroma.errors import BudgetExceeded
from pathchroma.model import (
    CYCLE,
    ONE_SIDED,
    PATH,
    TWO_SIDED,
    BoundsReport,
    Palette,
    PathInstance,
    ReductionAlgorithm,
    TowerValue,
    bounds_report,
    count_proper_sequences,
    exhaustive_properness_check,
    format_instance,
    identity_algorithm,
    is_proper,
    log_star,
    one_sided_from_two_sided,
    parse_instance,
    proper_sequences,
    random_proper_instance,
    run_algorithm,
    sampled_properness_check,
    tower,
    two_sided_from_one_sided,
)


def test_log_star_small_values():
    assert log_star(1) == 0
    assert log_star(2) == 1
    assert log_star(16) == 3
    assert log_star(65536) == 4
    assert log_star(65537) == 5
    assert log_star(2**65536) == 5
    assert log_star(2**65536 + 1) == 6


def test_log_star_floats():
    assert log_star(1.0) == 0
    assert log_star(1.5) == 1
    assert log_star(16.0) == 3


def test_log_star_rejects_below_one():
    with pytest.raises(ValueError):
        log_star(0)
    with pytest.raises(ValueError):
        log_star(0.5)


@given(st.integers(min_value=2, max_value=20000))
def test_log_star_recurrence(x):
    # log*(2^x) = log*(x) + 1 for x > 1
    assert log_star(2**x) == log_star(x) + 1


def test_tower_values():
    assert tower(0) == 1
    assert tower(1) == 2
    assert tower(4) == 65536
    for h in range(5):
        assert tower(h + 1) == 2 ** tower(h)
    sym = tower(6)
    assert isinstance(sym, TowerValue)
    assert str(sym) == "pt:6"


def test_tower_symbolic_limit_configurable():
    sym5 = tower(5, exact_limit=4)
    assert isinstance(sym5, TowerValue)
    assert sym5.exact() == 2**65536
    with pytest.raises(ValueError):
        tower(-1)


def test_tower_value_comparisons():
    assert TowerValue(4) == 65536
    assert TowerValue(4, 1) > 65536
    assert TowerValue(5) > 10**10000
    assert TowerValue(6) > 2**65536
    assert TowerValue(5, 1) < TowerValue(6)
    assert TowerValue(6, 2) > TowerValue(6, 1)
    assert log_star(TowerValue(5)) == 5
    assert log_star(TowerValue(5, 1)) == 6


def test_tower_value_rejects_overflowing_offset():
    with pytest.raises(ValueError):
        TowerValue(2, 12)  # 4 + 12 = 16 = tower(3)
    TowerValue(2, 11)  # fine


def test_is_proper():
    assert is_proper(PathInstance(PATH, (1, 2, 1, 3)))
    assert not is_proper(PathInstance(CYCLE, (1, 2, 1)))
    assert not is_proper(PathInstance(PATH, (1, 1)))
    assert is_proper(PathInstance(CYCLE, (1, 2)))


def test_instance_validation():
    with pytest.raises(ValueError):
        PathInstance("ring", (1, 2))
    with pytest.raises(ValueError):
        PathInstance(PATH, (1,))
    with pytest.raises(ValueError):
        PathInstance(PATH, (1, 0))


def test_identity_run_returns_same_instance():
    inst = PathInstance(CYCLE, (1, 3, 2, 4))
    out = run_algorithm(identity_algorithm(4), inst)
    assert out.labels == inst.labels


def test_run_rejects_improper_and_out_of_palette():
    alg = identity_algorithm(3)
    with pytest.raises(ValueError):
        run_algorithm(alg, PathInstance(PATH, (1, 1, 2)))
    with pytest.raises(ValueError):
        run_algorithm(alg, PathInstance(PATH, (1, 4)))


def _predecessor_echo(n):
    # 1-round rule that outputs its predecessor's colour; proper because
    # overlapping windows see distinct predecessors.
    return ReductionAlgorithm(
        ONE_SIDED, 1, Palette(n), Palette(n), lambda w: w[0], name="pred-echo"
    )


def test_virtual_extension_on_paths():
    # Node 0 of a path sees the virtual predecessor prev(first) = 1 (or 2 if first == 1).
    alg = _predecessor_echo(3)
    out = run_algorithm(alg, PathInstance(PATH, (3, 2, 3)))
    assert out.labels == (1, 3, 2)
    out = run_algorithm(alg, PathInstance(PATH, (1, 2, 3)))
    assert out.labels == (2, 1, 2)


def test_proper_sequences_enumeration():
    seqs = list(proper_sequences(3, 3))
    assert len(seqs) == count_proper_sequences(3, 3) == 3 * 2 * 2
    assert len(set(seqs)) == len(seqs)
    assert all(a != b for s in seqs for a, b in zip(s, s[1:]))
    assert list(proper_sequences(4, 1)) == [(1,), (2,), (3,), (4,)]


@given(st.integers(min_value=2, max_value=5), st.integers(min_value=1, max_value=4))
def test_proper_sequences_count(n, length):
    assert sum(1 for _ in proper_sequences(n, length)) == count_proper_sequences(n, length)


def test_exhaustive_check_passes_identity_rejects_constant():
    assert exhaustive_properness_check(identity_algorithm(4))
    constant = ReductionAlgorithm(
        ONE_SIDED, 1, Palette(4), Palette(4), lambda w: 1, name="constant"
    )
    assert not exhaustive_properness_check(constant)


def test_exhaustive_check_budget():
    alg = identity_algorithm(100)
    with pytest.raises(BudgetExceeded):
        exhaustive_properness_check(alg, budget=10)


def test_sampled_check():
    assert sampled_properness_check(_predecessor_echo(50), samples=2000, seed=1)
    bad = ReductionAlgorithm(
        ONE_SIDED, 1, Palette(50), Palette(50), lambda w: 7, name="constant"
    )
    assert not sampled_properness_check(bad, samples=2000, seed=1)


def test_conversion_round_counts():
    one = _predecessor_echo(5)
    two = two_sided_from_one_sided(one)
    assert two.sidedness == TWO_SIDED and two.rounds == 1  # ceil(1/2)
    back = one_sided_from_two_sided(two)
    assert back.sidedness == ONE_SIDED and back.rounds == 2
    with pytest.raises(ValueError):
        two_sided_from_one_sided(two)
    with pytest.raises(ValueError):
        one_sided_from_two_sided(one)


def test_conversion_zero_rounds_is_identity():
    ident = identity_algorithm(4)
    two = two_sided_from_one_sided(ident)
    assert two.rounds == 0
    inst = random_proper_instance(4, 20, seed=3)
    assert run_algorithm(two, inst).labels == inst.labels


def _rotate(seq, k):
    k %= len(seq)
    return seq[k:] + seq[:k]


def test_two_sided_conversion_output_is_rotation_on_cycles():
    one = _predecessor_echo(6)
    two = two_sided_from_one_sided(one)
    inst = random_proper_instance(6, 31, seed=9)
    out_one = run_algorithm(one, inst).labels
    out_two = run_algorithm(two, inst).labels
    # two-sided node i evaluates the one-sided window of node i + floor(t/2)
    shift = one.rounds - two.rounds
    assert out_two == _rotate(out_one, shift)


def test_one_sided_conversion_output_is_rotation_on_cycles():
    two = two_sided_from_one_sided(_predecessor_echo(6))
    one = one_sided_from_two_sided(two)
    inst = random_proper_instance(6, 17, seed=11)
    out_two = run_algorithm(two, inst).labels
    out_one = run_algorithm(one, inst).labels
    # one-sided node i evaluates the two-sided window of node i - t
    assert out_one == _rotate(out_two, -two.rounds)


def test_bounds_report_examples():
    r = bounds_report(65536)
    assert (r.lower_t, r.upper_t) == (4, 5)
    r = bounds_report(4)
    assert (r.lower_t, r.upper_t) == (2, 2)
    assert r.exact and (r.lower_c, r.upper_c) == (1, 1)
    r = bounds_report(TowerValue(5, 1))
    assert r.lower_c == r.upper_c == 3 == r.log_star // 2
    assert r.exact


def test_bounds_report_rejects_small_n():
    with pytest.raises(ValueError):
        bounds_report(3)


def test_bounds_report_text_format():
    text = bounds_report(65536).to_text()
    assert "lowerT=4" in text and "upperT=5" in text
    assert text.endswith("exact=false\n") or "exact=" in text


@given(st.integers(min_value=4, max_value=10**9))
def test_bounds_c_window_at_most_one(n):
    r = bounds_report(n)
    assert 0 <= r.upper_c - r.lower_c <= 1
    assert r.lower_t <= r.upper_t <= r.lower_t + 2


def test_bounds_large_sample():
    import random as _random

    rng = _random.Random(0)
    for _ in range(200):
        n = rng.randint(4, 2**64)
        r = bounds_report(n)
        assert r.upper_c - r.lower_c <= 1


def test_random_proper_instance():
    inst = random_proper_instance(4, 100, seed=7)
    assert is_proper(inst) and len(inst) == 100
    assert all(1 <= x <= 4 for x in inst.labels)
    assert inst.labels == random_proper_instance(4, 100, seed=7).labels
    with pytest.raises(ValueError):
        random_proper_instance(2, 5, seed=0, topology=CYCLE)
    assert is_proper(random_proper_instance(2, 6, seed=0, topology=CYCLE))


def test_instance_text_round_trip():
    inst = PathInstance(CYCLE, (1, 4, 2, 3))
    assert parse_instance(format_instance(inst)) == inst
    with pytest.raises(ValueError):
        parse_instance("cycle\n1 two 3\n")
    with pytest.raises(ValueError):
        parse_instance("just one line")


def test_palette_membership():
    p = Palette(4)
    assert 1 in p and 4 in p and 5 not in p and 0 not in p
    big = Palette(TowerValue(6))
    assert 10**100 in big
