"""Acceptance suite: the headline claims, each at its stated tolerance.

Every criterion prints one PASS/FAIL line (run with -s to see them all);
assertions carry the exact tolerances, so a failure here means the claim
itself did not hold on this machine.
"""

import time
from contextlib import contextmanager

import pytest

from pathchroma.model import (
    TowerValue,
    exhaustive_properness_check,
    is_proper,
    one_sided_from_two_sided,
    random_proper_instance,
    run_algorithm,
    bounds_report,
    proper_sequences,
    tower,
    two_sided_from_one_sided,
)
from pathchroma.reduce import compose, four_to_three, ns_algorithm, ns_schedule
from pathchroma.speedup import (
    iterate_speed_up,
    lemma7_pairs,
    random_proper_table,
    search_one_round_map,
    speed_up,
)
from pathchroma.graphs import (
    explicit_sixteen_classes,
    successor_graph_of,
    neighbourhood_graph,
    verify_partition,
    worst_case_successor_graph,
)
from pathchroma.chroma import is_proper_colouring, k_colourable


@contextmanager
def criterion(name: str, limit_seconds: float):
    start = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {name}: FAIL ({time.perf_counter() - start:.1f}s)")
        raise
    elapsed = time.perf_counter() - start
    print(f"ACCEPTANCE {name}: PASS ({elapsed:.1f}s)")
    assert elapsed < limit_seconds, f"{name} took {elapsed:.1f}s, limit {limit_seconds}s"


def test_criterion_1_no_one_round_four_to_three():
    with criterion("1 one-round 4-to-3 impossibility", 10):
        exists, examined = search_one_round_map(4, 3)
        assert exists is False
        assert examined == 3**12 == 531441


def test_criterion_2_seven_colour_windows_not_three_colourable():
    with criterion("2 N(7,1) needs 4 colours", 60):
        graph = neighbourhood_graph(7, 1)
        assert graph.vertex_count == 210
        assert graph.edge_count == 1050
        certificate = k_colourable(graph, 3)
        assert certificate.satisfiable is False


def test_criterion_3_worst_case_graph_and_sixteen_classes():
    with criterion("3 worst-case graph, partition, 16-colouring", 10):
        star = worst_case_successor_graph()
        assert star.vertex_count == 55
        assert all(i != j for i, j in star.edges)
        partition = explicit_sixteen_classes()
        assert len(partition.classes) == 16
        assert sorted(partition.sizes()) == [1] * 7 + [4] * 6 + [8] * 3
        assert verify_partition(star, partition)
        certificate = k_colourable(star, 16)
        assert certificate.satisfiable
        assert is_proper_colouring(star, certificate.assignment)


def test_criterion_4_schedule_round_counts_and_simulation():
    with criterion("4 reduction schedules and large simulations", 60):
        expectations = {98304: 5, 65537: 5, 5: 3, 17: 4}
        for n, rounds in expectations.items():
            pipeline = ns_schedule(n)
            assert pipeline.rounds == rounds, f"n={n}"
            assert pipeline.out_palette.size == 3
            algorithm = compose(pipeline)
            for seed in range(10):
                instance = random_proper_instance(n, 100_000, seed=seed)
                output = run_algorithm(algorithm, instance)
                assert is_proper(output)
                assert all(1 <= x <= 3 for x in output.labels)


def _table_parameter_sweep():
    # feasible (n, t, c) combinations with n <= 8, t <= 3, c <= 4
    combos = [
        (3, 1, 3), (3, 2, 3), (3, 3, 3),
        (4, 2, 3), (4, 3, 3),
        (4, 1, 4), (5, 1, 4), (6, 1, 4),
        (5, 2, 4), (6, 2, 4), (7, 2, 4), (8, 2, 4),
        (5, 3, 4), (6, 3, 4), (7, 3, 4), (8, 3, 4),
    ]
    for i in range(100):
        n, t, c = combos[i % len(combos)]
        yield n, t, c, i


def test_criterion_5_speed_up_on_hundred_random_tables():
    with criterion("5 speed-up over random proper tables", 60):
        sources = [four_to_three()]
        sources.extend(
            random_proper_table(n, t, c, seed=seed) for n, t, c, seed in _table_parameter_sweep()
        )
        for algorithm in sources:
            faster = speed_up(algorithm).algorithm
            assert faster.rounds == algorithm.rounds - 1
            assert exhaustive_properness_check(faster)
            n = algorithm.in_palette.size
            c = algorithm.out_palette.size
            realized = {faster.rule(w) for w in proper_sequences(n, faster.rounds + 1)}
            assert len(realized) <= 2**c - 2


def test_criterion_6_sixteen_colour_transform():
    with criterion("6 two rounds faster with 16 colours", 30):
        source = compose(ns_schedule(7))
        assert source.rounds == 4 and source.in_palette.size == 7
        levels = iterate_speed_up(source, 2)
        partition = explicit_sixteen_classes()
        fast = levels.compose_colouring(partition.as_colouring(), 2)
        assert fast.rounds == 2
        assert fast.out_palette.size == 16
        assert exhaustive_properness_check(fast)
        star = worst_case_successor_graph()
        empirical = successor_graph_of(source, 2)
        assert empirical.is_subgraph_of(star)


def test_criterion_7_relation_equivalence():
    # Exact set equality between the empirical successor relation and the
    # pair set derived from the output relation, as specified.  The forward
    # inclusion is a theorem; the reverse direction requires gluing
    # independent witnesses and fails on realized relations (see
    # notes/decisions.md for the analysis), so this criterion is expected
    # to fail until the equivalence is restated for saturated relations.
    with criterion("7 successor/output relation equivalence", 60):
        levels = iterate_speed_up(compose(ns_schedule(7)), 2)
        for k in (0, 1):
            empirical = levels.successor_relation(k + 1).pairs
            derived = lemma7_pairs(levels.output_relation(k))
            assert empirical <= derived
            assert empirical == derived, (
                f"k={k}: realized successor pairs ({len(empirical)}) form a strict "
                f"subset of the derived pair set ({len(derived)}); the derivation "
                "glues witnesses from unrelated instances, which only saturated "
                "worst-case relations realise"
            )


def test_criterion_8_conversion_machinery():
    with criterion("8 one-/two-sided conversions", 60):
        for algorithm, n in ((four_to_three(), 4), (ns_algorithm(6, 2), 6)):
            t = algorithm.rounds
            halved = two_sided_from_one_sided(algorithm)
            assert halved.rounds == (t + 1) // 2
            doubled = one_sided_from_two_sided(halved)
            assert doubled.rounds == 2 * halved.rounds
            for seed in (1, 2, 3):
                instance = random_proper_instance(n, 997, seed=seed)
                base = run_algorithm(algorithm, instance)
                halved_out = run_algorithm(halved, instance)
                doubled_out = run_algorithm(doubled, instance)
                assert is_proper(halved_out) and is_proper(doubled_out)
                shift = t - halved.rounds  # two-sided node i sees the window of node i+shift
                assert halved_out.labels == base.labels[shift:] + base.labels[:shift]
                k2 = halved.rounds  # one-sided node i sees the window of node i-k2
                assert doubled_out.labels == halved_out.labels[-k2:] + halved_out.labels[:-k2]


def test_criterion_9_bound_arithmetic():
    with criterion("9 log*/tower bound arithmetic", 60):
        for h in (2, 3, 4):
            assert bounds_report(tower(h)).lower_t == h
        assert bounds_report(TowerValue(5)).lower_t == 5  # symbolic form
        import random as _random

        rng = _random.Random(2026)
        for _ in range(10_000):
            n = rng.randint(4, 2 ** rng.randint(2, 80))
            report = bounds_report(n)
            assert 0 <= report.upper_c - report.lower_c <= 1
        exact = bounds_report(TowerValue(5, 1))  # tower(2k+1) + 1 with k = 2
        assert exact.exact
        assert exact.lower_c == exact.upper_c == 3
