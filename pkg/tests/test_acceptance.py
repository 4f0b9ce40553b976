"""Acceptance suite: the eleven release criteria, one test each.

Every test records a PASS/FAIL line in ``RESULTS``; ``conftest.py`` prints
them at the end of the run. Run just this file with
``pytest tests/test_acceptance.py -v``.

The n <= 6 corpus has 27476 labeled graphs but only a few dozen distinct
chromatic polynomials, so checks that depend on (P, Δ) alone are cached on
that pair.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from functools import lru_cache

import pytest
from mpmath import mp

from chromagraph.audit import audit_theorem_bound, inequality_e7_check, random_e7_samples
from chromagraph.chromatic import (
    ChromPoly,
    broken_cycle_coeffs,
    chromatic_polynomial,
    count_colorings,
    subset_expansion,
    whitney_from_poly,
)
from chromagraph.graph import (
    EdgeOrdering,
    enumerate_labeled_connected,
    enumerate_trees,
    generate_family,
    random_connected_corpus,
)
from chromagraph.logderiv import (
    eval_sign_exact,
    lemma2_identity_check,
    log_deriv_rational,
    theorem_boundary,
    verify_theorem_region,
)
from chromagraph.powersums import check_c1_c2, mean_size_epsilon, series_agrees
from chromagraph.report import le_crosscheck
from chromagraph.roots import check_root_bound, find_roots

import oracles

pytestmark = pytest.mark.acceptance

K = Fraction(17, 4)
RESULTS: dict[int, str] = {}


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[number] = line
    print(line)


@pytest.fixture(scope="module")
def corpus():
    """All labeled connected graphs on 1..6 vertices with their polynomials."""
    out = []
    for n in range(1, 7):
        out += [(g, chromatic_polynomial(g)) for g in enumerate_labeled_connected(n)]
    return out


def sample(items, count, seed):
    return random.Random(seed).sample(items, count)


def test_criterion_01_oracle_triple_equality(corpus):
    start = time.perf_counter()
    expected_counts = {n: oracles.connected_count(n) for n in range(1, 7)}
    counts = {n: 0 for n in range(1, 7)}
    mismatches = []
    for g, p in corpus:
        counts[g.n] += 1
        if subset_expansion(g) != p:
            mismatches.append(("subset", g.to_graph6()))
        for x in range(g.n + 1):
            if count_colorings(g, x) != p(x):
                mismatches.append(("colorings", g.to_graph6(), x))
    elapsed = time.perf_counter() - start
    ok = not mismatches and counts == expected_counts
    record(1, ok, f"{len(corpus)} graphs, counts {list(counts.values())}, {len(mismatches)} mismatches, {elapsed:.0f}s")
    assert counts == expected_counts
    assert not mismatches[:5]


def test_criterion_02_broken_cycles(corpus):
    rng = random.Random(2)
    bad = []
    for g, p in corpus:
        want = whitney_from_poly(p)
        results = [broken_cycle_coeffs(g, EdgeOrdering.random(g, rng)) for _ in range(3)]
        if any(r != want for r in results):
            bad.append(g.to_graph6())
    # the cycle-enumeration route on a slice, as a second NBC implementation
    for g, p in sample(corpus, 300, 22):
        if broken_cycle_coeffs(g, EdgeOrdering.random(g, rng), method="cycles") != whitney_from_poly(p):
            bad.append(g.to_graph6())
    record(2, not bad, f"{len(corpus)} graphs x 3 orderings + 300 via cycle enumeration, {len(bad)} mismatches")
    assert not bad


def test_criterion_03_c1_c2(corpus):
    graphs = [(g, p) for g, p in corpus]
    graphs += [(g, chromatic_polynomial(g)) for g in random_connected_corpus(200, 7, 10, seed=3)]
    bad = []
    for g, p in graphs:
        rep = check_c1_c2(g, p)
        edges = g.edge_list
        c1_expected = -len(edges)
        c2_expected = -oracles.triangles(g.n, edges) - Fraction(len(edges), 2)
        if not (rep.ok and rep.c1 == c1_expected and rep.c2 == c2_expected):
            bad.append(g.to_graph6())
    record(3, not bad, f"{len(graphs)} graphs, {len(bad)} violations")
    assert not bad


@lru_cache(maxsize=None)
def _region_signs(coeffs: tuple, delta: int, k: int) -> tuple:
    ld = log_deriv_rational(coeffs, k)
    x0 = theorem_boundary(delta, k)
    points = [x0, x0 - Fraction(1, 7), x0 - 1, 2 * x0, 10 * x0, 1000 * x0 - Fraction(1, 3)]
    return tuple(eval_sign_exact(ld, x).sign for x in points)


def test_criterion_04_theorem_region(corpus):
    graphs = [(g, p) for g, p in corpus]
    graphs += [(g, chromatic_polynomial(g)) for g in random_connected_corpus(100, 7, 9, seed=4)]
    violations = []
    evaluated = 0
    for g, p in graphs:
        for k in range(2, 7):
            signs = _region_signs(p.coeffs, g.max_degree(), k)
            evaluated += len(signs)
            if any(s != -1 for s in signs):
                violations.append((g.to_graph6(), k))
    # the public entry point must agree with the cached helper
    for g, p in sample(graphs, 50, 44):
        assert all(r.sign == -1 for r in verify_theorem_region(g, 3, poly=p))
    record(4, not violations, f"{len(graphs)} graphs x k=2..6 x 6 points ({evaluated} signs), {len(violations)} violations")
    assert not violations


def _log_spread_points(count: int = 50) -> list[Fraction]:
    # exponents strictly inside (-6, 6), so the points lie in the open interval
    out = []
    for j in range(count):
        e = -6 + 12 * (j + 0.5) / count
        out.append(-Fraction(10**e).limit_denominator(10**9))
    return out


def test_criterion_05_split_polynomials():
    points = _log_spread_points()
    assert all(-10**6 < x < Fraction(-1, 10**6) for x in points) and len(set(points)) == 50
    graphs = [t for n in range(1, 11) for t in enumerate_trees(n)]
    graphs += [generate_family("complete", n) for n in range(1, 9)]
    violations = []
    for g in graphs:
        p = chromatic_polynomial(g)
        for k in range(1, 9):
            ld = log_deriv_rational(p, k)
            violations += [(g.to_graph6(), k, x) for x in points if eval_sign_exact(ld, x).sign != -1]
    record(5, not violations, f"{len(graphs)} graphs (trees n<=10, K_n n<=8) x k=1..8 x 50 points, {len(violations)} violations")
    assert not violations


def _root_corpus():
    graphs = []
    for seed in range(520):
        rng = random.Random(seed)
        n = rng.randint(2, 8)
        graphs.append(generate_family("random_connected", n, seed=seed, p=rng.choice((0.2, 0.4, 0.6, 0.8))))
    graphs += [generate_family("complete", n) for n in range(2, 9)]
    return graphs


@lru_cache(maxsize=None)
def _roots(coeffs: tuple):
    return find_roots(ChromPoly(coeffs))


def test_criterion_06_root_bound():
    graphs = _root_corpus()
    target = mp.ldexp(1, -64)
    problems = []
    worst_ratio = 0.0
    for g in graphs:
        rs = _roots(chromatic_polynomial(g).coeffs)
        rep = check_root_bound(rs, g.max_degree(), K)
        worst_ratio = max(worst_ratio, float(rep.max_modulus) / g.max_degree())
        if not rep.satisfied:
            problems.append(("bound", g.to_graph6()))
        if rs.residual_bound > target or rs.degree != g.n:
            problems.append(("residual", g.to_graph6()))
        if rs.min_real_root() < -mp.mpf(10) ** -10:
            problems.append(("negative root", g.to_graph6()))
    record(6, not problems, f"{len(graphs)} graphs n<=8, worst |root|/Δ = {worst_ratio:.4f} <= 4.25, {len(problems)} problems")
    assert len(graphs) >= 500
    assert not problems


def test_criterion_07_lemma_le_crosscheck(corpus):
    graphs = sample([gp for gp in corpus if gp[0].n >= 2], 80, 7)
    graphs += [(g, chromatic_polynomial(g)) for g in random_connected_corpus(20, 7, 8, seed=7)]
    problems = []
    for g, p in graphs:
        problems += le_crosscheck(p, _roots(p.coeffs), g.max_degree(), K)
    record(7, not problems, f"{len(graphs)} graphs x (k=2, k=3) x 5 points, relative tol 1e-6, {len(problems)} problems")
    assert not problems


def test_criterion_08_series(corpus):
    graphs = sample([gp for gp in corpus if gp[0].n >= 2], 40, 8)
    graphs += [(g, chromatic_polynomial(g)) for g in random_connected_corpus(10, 7, 9, seed=8)]
    bad = []
    for g, p in graphs:
        delta = g.max_degree()
        ok, _ = series_agrees(p, -10 * K * delta, 30, delta, K)
        if not ok:
            bad.append(g.to_graph6())
    record(8, not bad, f"{len(graphs)} graphs at x = -42.5Δ, m = 30, {len(bad)} violations")
    assert not bad


def test_criterion_09_lemma2(corpus):
    rng = random.Random(9)
    triples = []
    for g, p in sample(corpus, 90, 9) + [(g, chromatic_polynomial(g)) for g in random_connected_corpus(10, 7, 9, seed=9)]:
        x = -Fraction(rng.randint(1, 5000), rng.randint(1, 97))
        triples.append((p, rng.randint(1, 5), x))
    bad = [(p.coeffs, k, x) for p, k, x in triples if not lemma2_identity_check(p, k, x).holds]
    # independent symbolic check of the left side on a slice
    for p, k, x in triples[:15]:
        if lemma2_identity_check(p, k, x).left != oracles.sympy_log_derivative(p.coeffs, k, x):
            bad.append((p.coeffs, k, x))
    record(9, not bad, f"{len(triples)} (graph, k, x) triples, 15 also checked symbolically, {len(bad)} mismatches")
    assert not bad


def test_criterion_10_bound_audit():
    start = time.perf_counter()
    rows = audit_theorem_bound(range(1, 21), range(2, 65))
    failed_rows = [(r.delta, r.k) for r in rows if not r.passed]
    samples = random_e7_samples(1000, seed=10)
    e7_bad = [(d, k, x) for d, k, x in samples if not inequality_e7_check(d, k, [x], strict=False).ok]
    elapsed = time.perf_counter() - start
    ok = not failed_rows and not e7_bad and elapsed < 60
    record(10, ok, f"{len(rows)} (Δ, k) rows, {len(samples)} e7 samples, {len(failed_rows) + len(e7_bad)} failures, {elapsed:.1f}s")
    assert len(rows) == 20 * 63
    assert not failed_rows and not e7_bad
    assert elapsed < 60


def test_criterion_11_epsilon_ordering(corpus):
    six = [(g, p) for g, p in corpus if g.n == 6]
    trees = [(g, p) for g, p in six if g.m == 5]
    tree_eps = {mean_size_epsilon(g, p).epsilon for g, p in trees}
    # unlabeled trees as well, so every isomorphism type is covered explicitly
    tree_eps |= {mean_size_epsilon(t).epsilon for t in enumerate_trees(6)}
    assert len(trees) == 6**4  # Cayley
    eps_tree = next(iter(tree_eps))
    eps_k6 = mean_size_epsilon(generate_family("complete", 6)).epsilon
    eps_cache: dict[tuple, Fraction] = {}
    middle = [(g, p) for g, p in six if 5 < g.m < 15]
    bad = []
    for g, p in middle:
        if p.coeffs not in eps_cache:
            eps_cache[p.coeffs] = mean_size_epsilon(g, p).epsilon
        if not (eps_tree < eps_cache[p.coeffs] < eps_k6):
            bad.append(g.to_graph6())
    ok = len(tree_eps) == 1 and not bad
    record(
        11,
        ok,
        f"{len(trees)} labeled trees share ε = {eps_tree}; {len(middle)} other graphs strictly between it and ε(K6) = {eps_k6}; {len(bad)} violations",
    )
    assert len(tree_eps) == 1
    assert not bad
