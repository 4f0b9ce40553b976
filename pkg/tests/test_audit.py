from fractions import Fraction

import pytest

from chromagraph.audit import (
    K_CATALOG,
    AuditFailure,
    BoundConstants,
    audit_row,
    audit_theorem_bound,
    bernoulli_step_holds,
    e7_sides,
    f1_eval,
    f1_poly,
    f_eval,
    f_poly,
    f_prime_eval,
    inequality_e7_check,
    monotonicity_samples,
    random_e7_samples,
    rows_to_csv,
)
from chromagraph import polyarith as pa


def test_f1_examples():
    assert f1_eval(1, 2, 0) == Fraction(891, 4)
    assert f1_eval(1, 2, -1) == Fraction(1043, 4)


@pytest.mark.parametrize("delta, k", [(1, 2), (3, 7), (20, 64)])
def test_f1_at_zero(delta, k):
    assert f1_eval(delta, k, 0) == k * (k + 1) * (1 + 2 * Fraction(17 * delta, 4) ** 2)


def test_f1_linear_coefficient_matches_printed_constant():
    assert f1_poly(2, 5)[1] == -15 * 2 * 5


def test_f_examples():
    assert f_eval(1, 2, Fraction(-333, 25)) == Fraction(-48508659, 125000)
    assert f_eval(1, 2, Fraction(-17, 2)) == Fraction(4913, 2)
    assert f_eval(3, 10, Fraction(-333, 50) * 30) < 0


def test_f_polynomial_agrees_with_direct_form():
    for x in (Fraction(-7, 3), Fraction(-100), Fraction(5, 2)):
        assert Fraction(pa.evaluate(f_poly(4, 9), x)) == f_eval(4, 9, x)


def test_f_prime_is_exact_derivative():
    h = Fraction(1, 10**12)
    x = Fraction(-60)
    secant = (f_eval(2, 3, x + h) - f_eval(2, 3, x - h)) / (2 * h)
    assert abs(secant - f_prime_eval(2, 3, x)) < Fraction(1, 10**6)


def test_preconditions():
    with pytest.raises(ValueError):
        f1_eval(0, 2, -1)
    with pytest.raises(ValueError):
        f_eval(1, 1, -1)


class TestAuditTable:
    def test_single_row(self):
        rows = audit_theorem_bound([1], [2])
        assert len(rows) == 1 and rows[0].passed
        assert rows[0].x == Fraction(-333, 25)

    def test_row_fields(self):
        row = audit_row(3, 4)
        assert row.f < 0 and row.monotone and row.derivative_positive and row.bernoulli and row.f1_positive

    def test_samples_are_in_open_interval(self):
        xs = monotonicity_samples(2, 5)
        assert len(xs) == 10 and xs == sorted(xs)
        assert all(-1000 < x < Fraction(-85, 2) for x in xs)

    def test_grid_slice(self):
        rows = audit_theorem_bound(range(1, 6), range(2, 12))
        assert len(rows) == 50 and all(r.passed for r in rows)

    def test_empty_range(self):
        with pytest.raises(ValueError):
            audit_theorem_bound([], [2])

    def test_strict_failure_names_cell(self):
        # a region constant of 1 puts the boundary inside the root disc, where f > 0
        with pytest.raises(AuditFailure) as info:
            audit_theorem_bound([2], [3], c=Fraction(1), strict=True)
        assert (info.value.delta, info.value.k) == (2, 3)
        assert "Δ=2" in str(info.value)

    def test_non_strict_reports_failure(self):
        assert not audit_theorem_bound([2], [3], c=Fraction(1))[0].passed

    def test_csv(self):
        lines = rows_to_csv(audit_theorem_bound([1], [2])).splitlines()
        assert lines == ["delta,k,x,f1,f,pass", "1,2,-333/25,%s,-48508659/125000,true" % f1_eval(1, 2, Fraction(-333, 25))]


def test_bernoulli():
    assert bernoulli_step_holds(1, 2, Fraction(-9))
    assert bernoulli_step_holds(5, 17, Fraction(-1000))


class TestE7:
    def test_examples(self):
        assert inequality_e7_check(1, 2, [Fraction(-14)]).ok
        assert inequality_e7_check(2, 3, [Fraction(-333 * 6, 50)]).ok

    def test_rejects_points_above_boundary(self):
        with pytest.raises(ValueError):
            inequality_e7_check(1, 2, [Fraction(-1)])

    def test_sides(self):
        left, right = e7_sides(1, 2, Fraction(-14))
        assert left == -((Fraction(-14) + Fraction(17, 4)) ** 2) * f1_eval(1, 2, Fraction(-14))
        assert right == -4 * Fraction(-14) ** 4

    def test_random_samples(self):
        samples = random_e7_samples(300, seed=11)
        assert samples == random_e7_samples(300, seed=11)
        for delta, k, x in samples:
            assert inequality_e7_check(delta, k, [x]).ok

    def test_strict_violation(self):
        # K = 14 makes the factor (x + KΔ) vanish at x = -14, so the left side is 0
        with pytest.raises(AuditFailure):
            inequality_e7_check(1, 2, [Fraction(-14)], K=Fraction(14))
        assert not inequality_e7_check(1, 2, [Fraction(-14)], K=Fraction(14), strict=False).ok


def test_constants():
    assert K_CATALOG[Fraction(17, 4)] == "Bencs-Regts"
    assert BoundConstants().K_active == Fraction(17, 4)
    with pytest.raises(ValueError):
        BoundConstants(K_active=0)
