"""Per-graph report records for the ``poly``, ``verify`` and ``scan`` commands."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from mpmath import mp

from chromagraph.audit import DEFAULT_K
from chromagraph.chromatic import chromatic_number, chromatic_polynomial, whitney_from_poly
from chromagraph.graph import Graph, encode_graph6, stats
from chromagraph.logderiv import (
    lemma2_identity_check,
    log_deriv_rational,
    theorem_boundary,
    threshold_scan,
    verify_theorem_region,
)
from chromagraph.powersums import check_c1_c2, mean_size_epsilon, series_agrees
from chromagraph.roots import (
    SQRT3_PLUS_1_UPPER,
    RootFindingError,
    check_root_bound,
    find_roots,
    lemma_le_region_check,
    lemma_le_second_derivative,
    lemma_le_third_derivative,
)

SCHEMA = "chromagraph/1"
LE_RELATIVE_TOL = 1e-6
SERIES_ORDER = 30


def _stats_dict(g: Graph) -> dict:
    st = stats(g)
    return {"n": st.n, "m": st.m, "max_degree": st.max_degree, "triangles": st.triangles, "connected": st.connected}


def poly_record(gid: str, g: Graph) -> dict:
    p = chromatic_polynomial(g)
    return {
        "id": gid,
        "graph6": encode_graph6(g),
        "stats": _stats_dict(g),
        "coeffs": [str(c) for c in p.coeffs],
        "whitney": [str(a) for a in whitney_from_poly(p).a],
        "chi": chromatic_number(g, p),
        "epsilon": str(mean_size_epsilon(g, p).epsilon),
    }


def le_crosscheck(p, rs, max_degree: int, K: Fraction = DEFAULT_K, offsets: Iterable[int] = range(1, 6)) -> list[str]:
    """Compare root-based k=2,3 formulas with the exact rational values."""
    kd = Fraction(K) * max_degree
    problems = []
    cases = [(2, -2 * kd, lemma_le_second_derivative), (3, -SQRT3_PLUS_1_UPPER * kd, lemma_le_third_derivative)]
    for k, threshold, formula in cases:
        ld = log_deriv_rational(p, k)
        for j in offsets:
            x = threshold - j
            exact = ld.value(x)
            with mp.workprec(rs.precision_bits):
                approx = formula(rs, x)
                ref = mp.mpf(exact.numerator) / exact.denominator
                rel = abs(approx - ref) / abs(ref)
            if not (rel <= LE_RELATIVE_TOL and approx < 0):
                problems.append(f"k={k} x={x}: roots give {mp.nstr(approx, 12)}, exact {mp.nstr(ref, 12)}")
    return problems


def _check(ok: bool, detail=None) -> dict:
    out = {"pass": bool(ok)}
    if detail:
        out["detail"] = detail
    return out


def verify_record(gid: str, g: Graph, ks: Iterable[int], K: Fraction = DEFAULT_K) -> dict:
    rec = {"id": gid, "graph6": encode_graph6(g), "stats": _stats_dict(g), "checks": {}, "findings": []}
    checks = rec["checks"]
    if not g.is_connected():
        checks["connected"] = _check(False, "disconnected")
        return rec
    checks["connected"] = _check(True)
    p = chromatic_polynomial(g)
    delta = g.max_degree()

    for k in ks:
        bad = [str(r.x) for r in verify_theorem_region(g, k, poly=p) if r.sign != -1]
        checks[f"theorem_region_k{k}"] = _check(not bad, bad and {"nonnegative_at": bad})

    c12 = check_c1_c2(g, p)
    checks["c1_c2"] = _check(c12.ok, None if c12.ok else {"c1": str(c12.c1), "c2": str(c12.c2)})

    bad = []
    for k in ks:
        for x in (theorem_boundary(delta, k), Fraction(-1), Fraction(-1, 3)):
            if not lemma2_identity_check(p, k, x).holds:
                bad.append(f"k={k} x={x}")
    checks["lemma2_identity"] = _check(not bad, bad)

    try:
        rs = find_roots(p)
    except RootFindingError as exc:
        checks["roots"] = _check(False, str(exc))
        return rec
    rb = check_root_bound(rs, delta, K)
    checks["root_bound"] = _check(
        rb.satisfied, {"max_modulus": mp.nstr(rb.max_modulus, 15), "bound": str(rb.bound)}
    )
    le = lemma_le_region_check(rs, delta, K)
    checks["lemma_le_region"] = _check(le.ok, le.failures)
    problems = le_crosscheck(p, rs, delta, K)
    checks["lemma_le_crosscheck"] = _check(not problems, problems)

    x = -10 * Fraction(K) * max(delta, 1)
    ok, se = series_agrees(p, x, SERIES_ORDER, max(delta, 1), K)
    checks["series_tail"] = _check(ok, None if ok else {"x": str(x), "tail_bound": str(se.tail_bound)})
    return rec


def scan_record(gid: str, g: Graph, ks: Iterable[int], x_min: Fraction, step: Fraction) -> tuple[dict, list]:
    rec = {"id": gid, "graph6": encode_graph6(g), "stats": _stats_dict(g), "checks": {}, "findings": [], "scans": []}
    grid = []
    if not g.is_connected():
        rec["checks"]["connected"] = _check(False, "disconnected")
        return rec, grid
    for k in ks:
        sc = threshold_scan(g, k, x_min, step)
        thr = sc.empirical_threshold
        rec["scans"].append(
            {
                "k": k,
                "points": len(sc.points),
                "boundary": str(sc.boundary),
                "empirical_threshold": None if thr is None else str(thr),
                "violations": [str(x) for x in sc.violations],
            }
        )
        rec["checks"][f"theorem_region_scan_k{k}"] = _check(not sc.theorem_violations, [str(x) for x in sc.theorem_violations])
        rec["findings"] += [{"k": k, "x": str(x)} for x in sc.findings]
        grid += [(gid, str(x), k, s) for x, s in sc.points]
    return rec, grid


def summarize(records: list[dict]) -> dict:
    checks = sum(len(r.get("checks", {})) for r in records)
    failures = sum(1 for r in records for c in r.get("checks", {}).values() if not c["pass"])
    findings = sum(len(r.get("findings", [])) for r in records)
    return {"graphs": len(records), "checks": checks, "failures": failures, "findings": findings}
