"""High-precision roots of chromatic polynomials and root-based checks.

Roots come from Aberth's simultaneous iteration applied to each squarefree
factor of P / x**z (z = multiplicity of the root at 0), so every iteration
runs on simple roots and multiplicities are exact.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from mpmath import mp

from chromagraph import polyarith as pa
from chromagraph.chromatic import ChromPoly

DEFAULT_PRECISION = 212
MAX_PRECISION = 212 * 16
RESIDUAL_TARGET_BITS = 64
MAX_ITER = 500
SQRT3_PLUS_1_UPPER = Fraction(27321, 10000)


class RootFindingError(RuntimeError):
    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


def default_precision() -> int:
    env = os.environ.get("CHROMAGRAPH_PRECISION_BITS")
    return int(env) if env else DEFAULT_PRECISION


def _mpf(q) -> mp.mpf:
    q = Fraction(q)
    return mp.mpf(q.numerator) / q.denominator


@dataclass
class RootSet:
    """Roots split into real ones and conjugate pairs ``a ± ib`` (``b > 0``)."""

    real_roots: list[tuple[mp.mpf, int]]
    complex_pairs: list[tuple[mp.mpf, mp.mpf, int]]
    residual_bound: mp.mpf
    precision_bits: int
    borderline: list = field(default_factory=list)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.real_roots) + 2 * sum(m for *_, m in self.complex_pairs)

    def all_roots(self) -> list:
        """Every root repeated by multiplicity, as complex numbers."""
        out = []
        with mp.workprec(self.precision_bits):
            for r, m in self.real_roots:
                out += [mp.mpc(r, 0)] * m
            for a, b, m in self.complex_pairs:
                out += [mp.mpc(a, b), mp.mpc(a, -b)] * m
        return out

    def max_modulus(self) -> mp.mpf:
        with mp.workprec(self.precision_bits):
            mods = [abs(r) for r, _ in self.real_roots] + [mp.hypot(a, b) for a, b, _ in self.complex_pairs]
            return max(mods) if mods else mp.mpf(0)

    def min_real_root(self):
        return min((r for r, _ in self.real_roots), default=None)

    def to_json(self) -> dict:
        digits = int(self.precision_bits * 0.30103) + 1
        s = lambda v: mp.nstr(v, digits)  # noqa: E731
        return {
            "real_roots": [{"value": s(r), "multiplicity": m} for r, m in self.real_roots],
            "complex_pairs": [{"re": s(a), "im": s(b), "multiplicity": m} for a, b, m in self.complex_pairs],
            "residual_bound": mp.nstr(self.residual_bound, 6),
            "precision_bits": self.precision_bits,
            "borderline": [s(v) for v in self.borderline],
        }


def _horner(c: Sequence, z):
    p = dp = 0
    for a in reversed(c):
        dp = dp * z + p
        p = p * z + a
    return p, dp


def _aberth(monic_coeffs: Sequence[Fraction], bits: int) -> list:
    """All roots of a squarefree monic polynomial at ``bits`` precision."""
    d = len(monic_coeffs) - 1
    if d == 1:
        return [mp.mpc(-_mpf(monic_coeffs[0]))]
    c = [_mpf(a) for a in monic_coeffs]
    radius = max(abs(c[0]) ** (mp.mpf(1) / d), mp.mpf(1) / 2)
    z = [radius * mp.expj(2 * mp.pi * j / d + mp.mpf("0.4")) for j in range(d)]
    tol = mp.ldexp(1, -bits + 4)
    # Rounding noise in P(z) keeps corrections from dropping to ``tol`` for
    # ill-conditioned clusters; once they are below half the working
    # precision, a few rounds without improvement also count as converged.
    settled = mp.ldexp(1, -bits // 2)
    best = None
    stale = 0
    for _ in range(MAX_ITER):
        biggest = 0
        for i in range(d):
            p, dp = _horner(c, z[i])
            if p == 0:
                continue
            ratio = p / dp
            s = mp.fsum(1 / (z[i] - z[j]) for j in range(d) if j != i)
            w = ratio / (1 - ratio * s)
            z[i] -= w
            biggest = max(biggest, abs(w) / max(1, abs(z[i])))
        if biggest <= tol:
            return z
        if best is not None and biggest <= settled and biggest >= best / 2:
            stale += 1
            if stale >= 3:
                return z
        else:
            stale = 0
        best = biggest if best is None else min(best, biggest)
    raise RootFindingError(f"Aberth iteration did not converge in {MAX_ITER} steps", best)


def _relative_residual(coeffs: Sequence[int], r) -> mp.mpf:
    val = abs(pa.evaluate(coeffs, r))
    scale = mp.fsum(abs(c) * abs(r) ** i for i, c in enumerate(coeffs))
    return val / scale if scale else mp.mpf(0)


def _solve(coeffs: tuple[int, ...], bits: int) -> RootSet:
    z = next(i for i, c in enumerate(coeffs) if c != 0)
    real: list = [(mp.mpf(0), z)] if z else []
    pairs: list = []
    borderline: list = []
    snap = mp.ldexp(1, -bits // 4)
    worst = mp.mpf(0)
    with mp.workprec(bits):
        for factor, mult in pa.squarefree_decomposition(coeffs[z:]):
            roots = _aberth(factor, bits)
            uppers = []
            lowers = []
            for r in roots:
                scale = max(1, abs(r))
                if abs(r.imag) <= snap * scale:
                    if abs(r.imag) > snap * scale / 2**16:
                        borderline.append(r)
                    real.append((mp.mpf(r.real), mult))
                elif r.imag > 0:
                    uppers.append(r)
                else:
                    lowers.append(r)
            if len(uppers) != len(lowers):
                raise RootFindingError("non-real roots do not pair up into conjugates")
            for u in uppers:
                partner = min(lowers, key=lambda v: abs(v - mp.conj(u)))
                lowers.remove(partner)
                # average the pair so the stored root is exactly conjugate-symmetric
                pairs.append(((u.real + partner.real) / 2, (u.imag - partner.imag) / 2, mult))
        for r, _ in real:
            worst = max(worst, _relative_residual(coeffs, r))
        for a, b, _ in pairs:
            worst = max(worst, _relative_residual(coeffs, mp.mpc(a, b)))
    real.sort(key=lambda t: t[0])
    pairs.sort(key=lambda t: (t[0], t[1]))
    return RootSet(real, pairs, worst, bits, borderline)


def find_roots(p: ChromPoly | Sequence[int], precision_bits: int | None = None) -> RootSet:
    """All roots of P with multiplicity.

    Precision doubles until the worst relative residual
    ``|P(r)| / sum |c_i| |r|^i`` is at most 2**-64.
    """
    coeffs = p.coeffs if isinstance(p, ChromPoly) else pa.trim(p)
    if len(coeffs) < 2:
        raise ValueError("need a polynomial of degree at least 1")
    bits = precision_bits or default_precision()
    target = mp.ldexp(1, -RESIDUAL_TARGET_BITS)
    last_error = None
    while bits <= MAX_PRECISION:
        try:
            rs = _solve(coeffs, bits)
        except RootFindingError as exc:
            last_error = exc
        else:
            if rs.residual_bound <= target:
                return rs
            last_error = RootFindingError("residual above target", rs.residual_bound)
        bits *= 2
    raise RootFindingError(f"root finding failed up to {MAX_PRECISION} bits: {last_error}", last_error.residual)


# -- modulus bound ----------------------------------------------------------


@dataclass(frozen=True)
class RootBoundReport:
    max_modulus: mp.mpf
    bound: Fraction
    K: Fraction
    satisfied: bool


def check_root_bound(rs: RootSet, max_degree: int, K: Fraction = Fraction(17, 4)) -> RootBoundReport:
    K = Fraction(K)
    bound = K * max_degree
    mod = rs.max_modulus()
    with mp.workprec(rs.precision_bits):
        ok = mod <= _mpf(bound) + mp.ldexp(1, -rs.precision_bits // 4)
    return RootBoundReport(mod, bound, K, bool(ok))


# -- root-based second and third log-derivatives ------------------------------


def lemma_le_second_derivative(rs: RootSet, x) -> mp.mpf:
    with mp.workprec(rs.precision_bits):
        x = _mpf(x) if isinstance(x, (int, Fraction)) else mp.mpf(x)
        total = mp.fsum(-m / (x - r) ** 2 for r, m in rs.real_roots)
        for a, b, m in rs.complex_pairs:
            u2 = (x - a) ** 2
            total += m * (2 * b**2 - 2 * u2) / (u2 + b**2) ** 2
        return total


def lemma_le_third_derivative(rs: RootSet, x) -> mp.mpf:
    with mp.workprec(rs.precision_bits):
        x = _mpf(x) if isinstance(x, (int, Fraction)) else mp.mpf(x)
        total = mp.fsum(2 * m / (x - r) ** 3 for r, m in rs.real_roots)
        for a, b, m in rs.complex_pairs:
            u = x - a
            total += m * 4 * u * (u**2 - 3 * b**2) / (u**2 + b**2) ** 3
        return total


@dataclass
class LemmaLeReport:
    second_threshold: Fraction
    third_threshold: Fraction
    second_samples: list[Fraction]
    third_samples: list[Fraction]
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _region_samples(threshold: Fraction, unit: Fraction, count: int) -> list[Fraction]:
    return [threshold - unit * (j + 1) / 2 for j in range(count)] + [2 * threshold - unit, 10 * threshold - unit]


def lemma_le_region_check(
    rs: RootSet, max_degree: int, K: Fraction = Fraction(17, 4), samples: int = 8
) -> LemmaLeReport:
    """Sample below -2KΔ and -(√3+1)KΔ and check both formulas and every term.

    √3+1 is replaced by the upper bound 2.7321, which only moves the third
    threshold further left.
    """
    K = Fraction(K)
    kd = K * max_degree
    unit = max(kd, Fraction(1))
    t2, t3 = -2 * kd, -SQRT3_PLUS_1_UPPER * kd
    rep = LemmaLeReport(t2, t3, _region_samples(t2, unit, samples), _region_samples(t3, unit, samples))
    slack = mp.ldexp(1, -rs.precision_bits // 4)
    with mp.workprec(rs.precision_bits):
        for r, _ in rs.real_roots:
            if r < -slack:
                rep.failures.append(f"negative real root {mp.nstr(r, 15)}")
        sqrt3 = mp.sqrt(3)
        for x in rep.second_samples:
            v = lemma_le_second_derivative(rs, x)
            if not v < 0:
                rep.failures.append(f"second derivative {mp.nstr(v, 10)} >= 0 at x={x}")
            xf = _mpf(x)
            for a, b, _ in rs.complex_pairs:
                if xf < -(abs(a) + abs(b)):
                    u2 = (xf - a) ** 2
                    if not (2 * b**2 - 2 * u2) < 0:
                        rep.failures.append(f"second-derivative term for {mp.nstr(a, 8)}±{mp.nstr(b, 8)}i at x={x}")
        for x in rep.third_samples:
            v = lemma_le_third_derivative(rs, x)
            if not v < 0:
                rep.failures.append(f"third derivative {mp.nstr(v, 10)} >= 0 at x={x}")
            xf = _mpf(x)
            for a, b, _ in rs.complex_pairs:
                if xf < -(abs(a) + sqrt3 * abs(b)):
                    u = xf - a
                    if not 4 * u * (u**2 - 3 * b**2) < 0:
                        rep.failures.append(f"third-derivative term for {mp.nstr(a, 8)}±{mp.nstr(b, 8)}i at x={x}")
    return rep


def power_sums_from_roots(rs: RootSet, m: int) -> list[mp.mpf]:
    """``c_i = -(1/i) sum alpha**i`` from the numeric roots, ``i = 1..m``."""
    roots = rs.all_roots()
    out = []
    with mp.workprec(rs.precision_bits):
        for i in range(1, m + 1):
            powers = [r**i for r in roots]
            s = mp.fsum(powers)
            scale = max(mp.fsum(abs(p) for p in powers), mp.mpf(1))
            if abs(s.imag) > mp.ldexp(scale, -rs.precision_bits // 2):
                raise RootFindingError(f"imaginary residue {mp.nstr(s.imag, 5)} in power sum {i}")
            out.append(-s.real / i)
    return out
