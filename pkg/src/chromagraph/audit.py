"""Exact audit of the polynomial inequalities behind the x <= -6.66Δk region.

Everything is rational: 4.25 = 17/4 and 6.66 = 333/50. ``K`` and the region
constant are parameters so other root-bound constants can be tried by hand.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from chromagraph import polyarith as pa

K_CATALOG = {
    Fraction(797, 100): "Sokal",
    Fraction(691, 100): "Fernandez-Procacci",
    Fraction(594, 100): "Jenssen-Patel-Regts",
    Fraction(17, 4): "Bencs-Regts",
}
DEFAULT_K = Fraction(17, 4)
REGION_CONSTANT = Fraction(333, 50)


class AuditFailure(AssertionError):
    def __init__(self, message: str, delta: int, k: int, x: Fraction | None = None):
        where = f"Δ={delta}, k={k}" + (f", x={x}" if x is not None else "")
        super().__init__(f"{message} ({where})")
        self.delta, self.k, self.x = delta, k, x


@dataclass(frozen=True)
class BoundConstants:
    K_active: Fraction = DEFAULT_K
    catalog: dict = field(default_factory=lambda: dict(K_CATALOG))

    def __post_init__(self) -> None:
        object.__setattr__(self, "K_active", Fraction(self.K_active))
        if self.K_active <= 0:
            raise ValueError("K must be positive")


def f1_poly(delta: int, k: int, K: Fraction = DEFAULT_K) -> tuple[Fraction, ...]:
    """Coefficients of ``8x^2 + (2 - 4K)Δk x + k(k+1) + 2(KΔ)^2 k(k+1)``.

    With K = 17/4 the linear coefficient is -15Δk.
    """
    K = Fraction(K)
    kk = k * (k + 1)
    return (kk + 2 * (K * delta) ** 2 * kk, (2 - 4 * K) * delta * k, Fraction(8))


def f_poly(delta: int, k: int, K: Fraction = DEFAULT_K) -> tuple[Fraction, ...]:
    """``(x + KΔk) f1(x) - 4x^3``."""
    K = Fraction(K)
    return pa.sub(pa.mul((K * delta * k, 1), f1_poly(delta, k, K)), (0, 0, 0, 4))


def f1_eval(delta: int, k: int, x: Fraction, K: Fraction = DEFAULT_K) -> Fraction:
    _check_dk(delta, k)
    return Fraction(pa.evaluate(f1_poly(delta, k, K), Fraction(x)))


def f_eval(delta: int, k: int, x: Fraction, K: Fraction = DEFAULT_K) -> Fraction:
    _check_dk(delta, k)
    x = Fraction(x)
    return (x + Fraction(K) * delta * k) * f1_eval(delta, k, x, K) - 4 * x**3


def f_prime_eval(delta: int, k: int, x: Fraction, K: Fraction = DEFAULT_K) -> Fraction:
    return Fraction(pa.evaluate(pa.derivative(f_poly(delta, k, K)), Fraction(x)))


def _check_dk(delta: int, k: int) -> None:
    if delta < 1 or k < 2:
        raise ValueError(f"need Δ >= 1 and k >= 2, got Δ={delta}, k={k}")


def bernoulli_step_holds(delta: int, k: int, x: Fraction, K: Fraction = DEFAULT_K) -> bool:
    """``(1 + KΔ/x)^k >= 1 + KΔk/x`` exactly."""
    t = Fraction(K) * delta / Fraction(x)
    return (1 + t) ** k >= 1 + k * t


@dataclass
class AuditRow:
    delta: int
    k: int
    x: Fraction
    f1: Fraction
    f: Fraction
    monotone: bool
    derivative_positive: bool
    bernoulli: bool
    f1_positive: bool

    @property
    def passed(self) -> bool:
        return self.f < 0 and self.monotone and self.derivative_positive and self.bernoulli and self.f1_positive


def monotonicity_samples(delta: int, k: int, count: int = 10, K: Fraction = DEFAULT_K) -> list[Fraction]:
    """``count`` rationals spread over the open interval (-100Δk, -KΔk), ascending."""
    lo, hi = -100 * delta * k, -Fraction(K) * delta * k
    return [lo + (hi - lo) * Fraction(j + 1, count + 1) for j in range(count)]


def audit_row(
    delta: int,
    k: int,
    K: Fraction = DEFAULT_K,
    c: Fraction = REGION_CONSTANT,
    samples: int = 10,
) -> AuditRow:
    x = -Fraction(c) * delta * k
    xs = monotonicity_samples(delta, k, samples, K)
    fs = [f_eval(delta, k, s, K) for s in xs]
    return AuditRow(
        delta,
        k,
        x,
        f1_eval(delta, k, x, K),
        f_eval(delta, k, x, K),
        monotone=all(a < b for a, b in zip(fs, fs[1:])),
        derivative_positive=all(f_prime_eval(delta, k, s, K) > 0 for s in xs),
        bernoulli=all(bernoulli_step_holds(delta, k, s, K) for s in xs),
        f1_positive=all(f1_eval(delta, k, s, K) > 0 for s in [x, *xs]),
    )


def audit_theorem_bound(
    delta_range: Sequence[int],
    k_range: Sequence[int],
    K: Fraction = DEFAULT_K,
    c: Fraction = REGION_CONSTANT,
    strict: bool = False,
) -> list[AuditRow]:
    """One row per (Δ, k). With ``strict`` the first failing row raises."""
    delta_range, k_range = list(delta_range), list(k_range)
    if not delta_range or not k_range:
        raise ValueError("audit ranges must be nonempty")
    rows = []
    for delta in delta_range:
        for k in k_range:
            row = audit_row(delta, k, K, c)
            if strict and not row.passed:
                raise AuditFailure("bound audit failed", delta, k, row.x)
            rows.append(row)
    return rows


def rows_to_csv(rows: Iterable[AuditRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["delta", "k", "x", "f1", "f", "pass"])
    for r in rows:
        w.writerow([r.delta, r.k, str(r.x), str(r.f1), str(r.f), "true" if r.passed else "false"])
    return buf.getvalue()


# -- the combined inequality ------------------------------------------------


@dataclass
class E7Report:
    delta: int
    k: int
    points: list[Fraction]
    holds: list[bool]

    @property
    def ok(self) -> bool:
        return all(self.holds)


def e7_sides(delta: int, k: int, x: Fraction, K: Fraction = DEFAULT_K) -> tuple[Fraction, Fraction]:
    """``(-1)^(k-1) (x + KΔ)^k f1(x)`` and ``(-1)^(k-1) 4 x^(k+2)``."""
    x = Fraction(x)
    s = (-1) ** (k - 1)
    return s * (x + Fraction(K) * delta) ** k * f1_eval(delta, k, x, K), s * 4 * x ** (k + 2)


def inequality_e7_check(
    delta: int,
    k: int,
    points: Iterable[Fraction],
    K: Fraction = DEFAULT_K,
    c: Fraction = REGION_CONSTANT,
    strict: bool = True,
) -> E7Report:
    _check_dk(delta, k)
    boundary = -Fraction(c) * delta * k
    pts = [Fraction(x) for x in points]
    for x in pts:
        if x > boundary:
            raise ValueError(f"x={x} is above the region boundary {boundary}")
    holds = []
    for x in pts:
        left, right = e7_sides(delta, k, x, K)
        holds.append(left < right)
        if strict and not holds[-1]:
            raise AuditFailure("combined inequality violated", delta, k, x)
    return E7Report(delta, k, pts, holds)


def random_e7_samples(count: int, seed: int, delta_max: int = 20, k_max: int = 64) -> list[tuple[int, int, Fraction]]:
    """Random (Δ, k, x) with x at or below the region boundary."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        delta, k = rng.randint(1, delta_max), rng.randint(2, k_max)
        stretch = 1 + Fraction(rng.randint(0, 10**6), 10**5)
        out.append((delta, k, -REGION_CONSTANT * delta * k * stretch))
    return out
