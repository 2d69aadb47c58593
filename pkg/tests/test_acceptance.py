"""Acceptance criteria, one test per criterion, all checks exact.

Every assertion uses zero tolerance: the package works over the rationals
end to end, so postconditions hold exactly or not at all.  Each test
prints a PASS line naming its criterion when it completes.
"""

import random
import time
from fractions import Fraction
from itertools import combinations

from graphchords import (
    CircleBoard,
    GameConfig,
    GraphBoard,
    GraphPoint,
    MetricGraph,
    compute_double_cover,
    connect_in_xr,
    construct_partition_1k,
    construct_partition_euler,
    discretized_zero_subset,
    euler_chord_solve,
    find_common_chord,
    find_common_chord_k,
    find_fixed_window,
    graph_chord_solve,
    integral_subset,
    metric_d,
    necklace_split,
    retraction_schedule,
    verify_double_cover,
    verify_partition,
    winner_guarantee_check,
)
from graphchords.enumeration import connected_multigraphs
from graphchords.interval_chords import telescoping_sum
from graphchords.metric_graph import segments_intersection, segments_measure
from graphchords.randgen import (
    random_connected_multigraph,
    random_connected_subset,
    random_euler_graph,
    random_step_function,
    random_subset_any,
    random_unit_integral_line,
    random_zero_mean_function,
)

F = Fraction


def _corpus_theorem1(count=1000, seed=101):
    rng = random.Random(seed)
    return [(random_unit_integral_line(rng), random_unit_integral_line(rng)) for _ in range(count)]


def test_theorem1_suite():
    """1000 random (f, g) with unit integrals, six r values, exact chords."""
    start = time.time()
    values = [F(0), F(1, 5), F(1, 3), F(1, 2), F(3, 4), F(1)]
    for f, g in _corpus_theorem1():
        for r in values:
            interval, achieved = find_common_chord(f, g, r)
            assert achieved in (r, 1 - r)
            assert f.integral_between(interval.lo, interval.hi) == achieved
            assert g.integral_between(interval.lo, interval.hi) == achieved
    elapsed = time.time() - start
    assert elapsed < 30, f"theorem 1 suite took {elapsed:.1f}s"
    print(f"PASS: Theorem 1 suite (6000 exact chords, {elapsed:.1f}s)")


def test_corollary2_sliding_window():
    """1/k chords and fixed windows for k in 1..8 on the same corpus."""
    start = time.time()
    for f, g in _corpus_theorem1():
        for k in range(1, 9):
            interval = find_common_chord_k(f, g, k)
            assert f.integral_between(interval.lo, interval.hi) == F(1, k)
            assert g.integral_between(interval.lo, interval.hi) == F(1, k)
            window = find_fixed_window(f, k)
            assert window.length == F(1, k)
            assert f.integral_between(window.lo, window.hi) == F(1, k)
            assert telescoping_sum(f, k) == 1
    elapsed = time.time() - start
    print(f"PASS: Corollary 2 sliding windows (16000 exact solves, {elapsed:.1f}s)")


def test_necklace_exhaustive():
    """All 4N-pearl arrangements for N <= 4 split with at most two cuts."""
    start = time.time()
    cases = 0
    for n in range(1, 5):
        total = 4 * n
        for blacks in combinations(range(total), 2 * n):
            beads = ["W"] * total
            for i in blacks:
                beads[i] = "B"
            split = necklace_split(beads, n)
            lo, hi = split.window
            window = beads[lo - 1 : hi]
            assert len(window) == 2 * n and window.count("B") == n
            assert len(split.cuts) <= 2
            counts = [sum(1 for b in beads[i : i + 2 * n] if b == "B") for i in range(2 * n + 1)]
            assert all(abs(x - y) <= 1 for x, y in zip(counts, counts[1:]))
            cases += 1
    elapsed = time.time() - start
    assert elapsed < 10, f"necklace suite took {elapsed:.1f}s"
    print(f"PASS: Necklace exhaustive ({cases} arrangements, {elapsed:.1f}s)")


def test_lemma_cwr_exhaustive():
    """Every connected min-degree-2 multigraph with <= 6 edges double-covers."""
    start = time.time()
    count = 0
    for graph in connected_multigraphs(max_edges=6, min_degree=2):
        cover = compute_double_cover(graph)
        assert verify_double_cover(graph, cover)
        count += 1
    elapsed = time.time() - start
    print(f"PASS: Lemma cwr exhaustive ({count} multigraphs, {elapsed:.1f}s)")


def _contains(big, small) -> bool:
    inter = segments_intersection(big.graph, big.segments, small.segments)
    if segments_measure(inter) != small.measure():
        return False
    return all(
        any(l <= lo and hi <= h for l, h in big.segments.get(e, ()))
        for e, ivs in small.segments.items()
        for lo, hi in ivs
        if lo != hi
    )


def test_pac_machinery():
    """500 homotopies: exact measure, connectivity, 2-Lipschitz, exact arrival;
    500 retractions: nested, unit measure rate."""
    rng = random.Random(102)
    start = time.time()
    cases = 0
    while cases < 500:
        graph = random_connected_multigraph(rng, max_edges=5)
        den = rng.choice([1, 2, 3, 4])
        top = graph.num_edges * den
        if top < 2:
            continue
        r = F(rng.randint(1, top - 1), den)
        a = random_connected_subset(rng, graph, r, den)
        b = random_connected_subset(rng, graph, r, den)
        if a is None or b is None:
            continue
        cases += 1
        schedule = connect_in_xr(a, b, r)
        total = schedule.total_duration
        times = sorted({total * F(i, 64) for i in range(65)})
        states = schedule.apply_prefixes(times)
        for state in states:
            assert state.measure() == r  # connectivity is enforced on construction
        for (t0, s0), (t1, s1) in zip(zip(times, states), zip(times[1:], states[1:])):
            assert metric_d(s0, s1) <= 2 * (t1 - t0)
        assert states[0] == a and states[-1] == b

        x = GraphPoint(a.segments and next(iter(a.segments)), next(iter(a.segments.values()))[0][0])
        retraction = retraction_schedule(a, x)
        assert retraction.total_duration == a.measure()
        rtimes = sorted({a.measure() * F(i, 64) for i in range(65)})
        rstates = retraction.apply_prefixes(rtimes)
        for t, state in zip(rtimes, rstates):
            assert state.measure() == a.measure() - t
            assert state.contains_point(x)
        for earlier, later in zip(rstates, rstates[1:]):
            assert _contains(earlier, later)
    elapsed = time.time() - start
    print(f"PASS: Theorem pac machinery (500 homotopies + retractions, {elapsed:.1f}s)")


def test_theorem_double():
    """200 random min-degree-2 instances: measure exactly r, integral exactly 0."""
    rng = random.Random(103)
    start = time.time()
    values = [F(0), F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(1)]
    for _ in range(200):
        graph = random_connected_multigraph(rng, max_edges=6, min_degree=2)
        f = random_zero_mean_function(rng, graph)
        r = rng.choice(values)
        result = graph_chord_solve(graph, f, r)
        assert result.subset.measure() == r
        assert integral_subset(f, result.subset) == 0
    # cross-check against the discretized brute-force oracle on small graphs
    small = [g for g in connected_multigraphs(3, 2)]
    checked = 0
    attempts = 0
    while checked < 20:
        attempts += 1
        assert attempts < 500, "oracle cross-check starved"
        graph = rng.choice(small)
        f = random_zero_mean_function(rng, graph, max_pieces=2, max_den=4)
        r = rng.choice([F(1, 4), F(1, 3), F(1, 2), F(2, 3), F(3, 4), F(1)])
        solved = graph_chord_solve(graph, f, r)
        assert solved.subset.measure() == r and integral_subset(f, solved.subset) == 0
        grid = discretized_zero_subset(graph, f, r, parts=24)
        if grid is not None:
            assert grid.measure() == r and integral_subset(f, grid) == 0
            checked += 1
    elapsed = time.time() - start
    assert elapsed < 120, f"theorem double suite took {elapsed:.1f}s"
    print(f"PASS: Theorem double (200 instances + {checked} oracle cross-checks, {elapsed:.1f}s)")


def test_euler_every_chord():
    """200 random Euler graphs, r across [0, |E|] including both endpoints."""
    rng = random.Random(104)
    start = time.time()
    for i in range(200):
        graph = random_euler_graph(rng, max_edges=10)
        f = random_zero_mean_function(rng, graph)
        m = graph.num_edges
        if i % 3 == 0:
            r = F(0)
        elif i % 3 == 1:
            r = F(m)
        else:
            r = F(rng.randint(1, 4 * m - 1), 4)
        result = euler_chord_solve(graph, f, r)
        assert result.subset.measure() == r
        assert integral_subset(f, result.subset) == 0
        if r == m:
            assert result.subset.measure() == graph.total_measure()
    elapsed = time.time() - start
    print(f"PASS: Euler every-chord (200 instances, {elapsed:.1f}s)")


def test_inc_consistency():
    """Constructed certificates verify and their r admits chords for random f."""
    rng = random.Random(105)
    start = time.time()
    theta = MetricGraph({"u", "v"}, [("a", ("u", "v")), ("b", ("u", "v")), ("c", ("u", "v"))])
    triangle = MetricGraph({"u", "v", "w"}, [("a", ("u", "v")), ("b", ("v", "w")), ("c", ("w", "u"))])
    eight = MetricGraph({"u"}, [("a", ("u", "u")), ("b", ("u", "u"))])
    dumbbell = MetricGraph({"u", "v"}, [("e", ("u", "v")), ("lu", ("u", "u")), ("lv", ("v", "v"))])

    certificates = []
    for graph in (theta, triangle, eight, dumbbell):
        for k in (1, 2, 3):
            certificates.append((graph, construct_partition_1k(graph, k)))
    certificates.append((triangle, construct_partition_euler(triangle, 3)))
    certificates.append((triangle, construct_partition_euler(triangle, 6)))
    certificates.append((eight, construct_partition_euler(eight, 2)))
    certificates.append((eight, construct_partition_euler(eight, 4)))

    solves = 0
    for graph, cert in certificates:
        assert cert.r <= 1
        assert verify_partition(graph, cert)
        for _ in range(50):
            f = random_zero_mean_function(rng, graph)
            result = graph_chord_solve(graph, f, cert.r)
            assert result.subset.measure() == cert.r
            assert integral_subset(f, result.subset) == 0
            solves += 1
    elapsed = time.time() - start
    print(f"PASS: Theorem inc consistency ({len(certificates)} certificates, {solves} solves, {elapsed:.1f}s)")


def test_game_winner_guarantee():
    """All small circle colorings hold a witness; playouts always end with one."""
    start = time.time()
    for dots in (4, 6, 8):
        for n in (1, 2):
            if n > dots // 2:
                continue
            report = winner_guarantee_check(GameConfig(CircleBoard(dots), 1, n))
            assert report.mode == "exhaustive" and report.ok
    eight = MetricGraph({"u"}, [("a", ("u", "u")), ("b", ("u", "u"))])
    dots = tuple(GraphPoint(e, F(2 * i + 1, 8)) for e in ("a", "b") for i in range(4))
    config = GameConfig(GraphBoard(eight, dots), max_per_turn=1, window_half=1)
    report = winner_guarantee_check(config, playouts=10_000, seed=106)
    assert report.mode == "playouts" and report.ok
    elapsed = time.time() - start
    print(f"PASS: Game winner guarantee (exhaustive circles + 10000 playouts, {elapsed:.1f}s)")


def test_metric_axioms_and_lipschitz():
    """1000 random triples satisfy the metric axioms; 1000 pairs the bound."""
    rng = random.Random(107)
    start = time.time()
    for _ in range(1000):
        graph = random_connected_multigraph(rng, max_edges=4)
        a = random_subset_any(rng, graph, den=2)
        b = random_subset_any(rng, graph, den=2)
        c = random_subset_any(rng, graph, den=2)
        dab = metric_d(a, b)
        assert dab == metric_d(b, a) >= 0
        assert (dab == 0) == (a == b)
        assert metric_d(a, c) <= dab + metric_d(b, c)
    for _ in range(1000):
        graph = random_connected_multigraph(rng, max_edges=4)
        f = random_step_function(rng, graph)
        a = random_subset_any(rng, graph, den=2)
        b = random_subset_any(rng, graph, den=2)
        gap = abs(integral_subset(f, a) - integral_subset(f, b))
        assert gap <= f.max_abs_value() * metric_d(a, b)
    elapsed = time.time() - start
    print(f"PASS: Metric axioms + Lipschitz bound (2000 random checks, {elapsed:.1f}s)")
