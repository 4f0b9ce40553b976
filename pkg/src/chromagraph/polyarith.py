"""Dense univariate polynomials as coefficient tuples, lowest power first.

Coefficients are Python ints or ``Fraction``s; nothing here rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Sequence

Poly = tuple


def trim(p: Sequence) -> Poly:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def degree(p: Sequence) -> int:
    """Degree of ``p``; the zero polynomial has degree -1."""
    return len(trim(p)) - 1


def add(p: Sequence, q: Sequence) -> Poly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def sub(p: Sequence, q: Sequence) -> Poly:
    return add(p, [-c for c in q])


def scale(p: Sequence, c) -> Poly:
    return trim([c * a for a in p])


def mul(p: Sequence, q: Sequence) -> Poly:
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def power(p: Sequence, e: int) -> Poly:
    out: Poly = (1,)
    base = tuple(p)
    while e:
        if e & 1:
            out = mul(out, base)
        base = mul(base, base)
        e >>= 1
    return out


def derivative(p: Sequence) -> Poly:
    return trim([i * p[i] for i in range(1, len(p))])


def shift_up(p: Sequence, k: int) -> Poly:
    """Multiply by ``x**k``."""
    return trim([0] * k + list(p)) if trim(p) else ()


def evaluate(p: Sequence, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def homogeneous_numerator(p: Sequence, num: int, den: int) -> int:
    """``den**deg(p) * p(num/den)`` as an exact integer (``den > 0``)."""
    d = len(p) - 1
    acc = 0
    dpow = 1
    # Horner on the homogenised form: sum c_i num^i den^(d-i)
    for c in reversed(p):
        acc = acc * num + c * dpow
        dpow *= den
    return acc if d >= 0 else 0


def sign_at(p: Sequence, x: Fraction) -> int:
    x = Fraction(x)
    v = homogeneous_numerator(p, x.numerator, x.denominator)
    return (v > 0) - (v < 0)


def monomial(k: int) -> Poly:
    return (0,) * k + (1,)


def falling_factorial(n: int) -> Poly:
    """``x (x-1) ... (x-n+1)``."""
    out: Poly = (1,)
    for i in range(n):
        out = mul(out, (-i, 1))
    return out


def tree_poly(n: int) -> Poly:
    """``x (x-1)**(n-1)``, shared by every tree on ``n`` vertices."""
    return shift_up(tuple(comb(n - 1, i) * (-1) ** (n - 1 - i) for i in range(n)), 1)


def divmod_poly(p: Sequence, q: Sequence) -> tuple[Poly, Poly]:
    p = [Fraction(c) for c in trim(p)]
    q = [Fraction(c) for c in trim(q)]
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    lead = q[-1]
    while len(p) >= len(q) and p:
        shift = len(p) - len(q)
        c = p[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            p[shift + i] -= c * b
        p = list(trim(p))
    return trim(quot), trim(p)


def monic(p: Sequence) -> Poly:
    p = trim(p)
    lead = Fraction(p[-1])
    return tuple(Fraction(c) / lead for c in p)


def gcd(p: Sequence, q: Sequence) -> Poly:
    """Monic gcd over the rationals."""
    a, b = trim(p), trim(q)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a) if a else ()


def squarefree_decomposition(p: Sequence) -> list[tuple[Poly, int]]:
    """Yun's algorithm: ``p = lead * prod f_j**j`` with each ``f_j`` squarefree.

    Returns ``(f_j, j)`` for the non-constant factors, ``f_j`` monic.
    """
    p = monic(p)
    if degree(p) < 1:
        return []
    dp = derivative(p)
    a = gcd(p, dp)
    b = divmod_poly(p, a)[0]
    c = divmod_poly(dp, a)[0]
    d = sub(c, derivative(b))
    out = []
    j = 1
    while degree(b) >= 1:
        a = gcd(b, d)
        if degree(a) >= 1:
            out.append((monic(a), j))
        b = divmod_poly(b, a)[0]
        c = divmod_poly(d, a)[0]
        d = sub(c, derivative(b))
        j += 1
    return out


def to_json(p: Sequence) -> list[str]:
    return [str(c) for c in p]


def from_json(items: Sequence[str]) -> Poly:
    return tuple(int(s) for s in items)


def format_poly(p: Sequence, var: str = "x") -> str:
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = str(mag)
        else:
            coef = "" if mag == 1 else str(mag)
            body = coef + (var if i == 1 else f"{var}^{i}")
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
