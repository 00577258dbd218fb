"""Acceptance criteria 1-8, each run through the same suite runners as the
command line, with default parameters.  One PASS/FAIL line per criterion is
printed at the end of the pytest session (see conftest.py)."""
import math
import time
from fractions import Fraction

import pytest

from artifact.config import SuiteConfig
from artifact.exact import QuadraticSurd
from artifact.report import HARD, PASS
from artifact.suites import run_suite


def _run(suite, **params):
    t0 = time.perf_counter()
    rep = run_suite(SuiteConfig(suite, params))
    return rep, time.perf_counter() - t0


def _all_pass(rep, prefix=""):
    bad = [c.name for c in rep.checks if c.name.startswith(prefix) and c.status != PASS]
    assert not bad, f"failing checks: {bad}"


def test_criterion_1_capelli(record_property):
    rep, dt = _run("capelli")
    _all_pass(rep)
    for n in (2, 3):
        for what in ("central", "hc-charpoly", "cofactor", "comm-cofactor"):
            assert rep.check(f"{what}[n={n}]").kind == HARD
    for n in (2, 3, 4):
        assert rep.check(f"minor-at-mirabolic[n={n}]").status == PASS
    assert dt < 30
    record_property("summary", f"Capelli centrality, HC image, cofactor and minors exact ({dt:.1f}s)")


def test_criterion_2_companion(record_property):
    rep, dt = _run("companion")
    _all_pass(rep)
    for name in ("charpoly", "vandermonde-recovery", "resultant"):
        c = rep.check(name)
        assert c.measured == 0 and c.detail["cases"] == 100
    assert max(rep.check("charpoly").detail["sizes"]) <= 5
    record_property("summary", f"100 random cases, n <= 5, all exact ({dt:.1f}s)")


def test_criterion_3_star(record_property):
    rep, dt = _run("star")
    _all_pass(rep)
    assert rep.check("gutt[n=2,J=4]").measured == 0
    assert rep.check("gutt[n=3,J=3]").measured == 0
    for name in ("refined-support[gl2 diag(1,-1),J=4]", "refined-support[gl3 regular mirabolic point,J=3]",
                 "basic-support[n=2,J=4]", "basic-support[n=3,J=3]",
                 "invariant-first-order[n=2]", "invariant-first-order[n=3]"):
        assert rep.check(name).status == PASS
    assert dt < 120
    record_property("summary", f"Gutt identity mod h^5 / h^4, support conditions, invariants exact ({dt:.1f}s)")


def test_criterion_4_whittaker(record_property):
    rep, dt = _run("whittaker")
    _all_pass(rep)
    assert rep.check("zeta-series[n=2,deg=12]").status == PASS
    assert rep.check("zeta-series[n=3,deg=8]").status == PASS
    growth = rep.check("rs-integral-growth[n=3]")
    assert growth.measured <= growth.bound
    record_property("summary", f"zeta series, multiplicities, I(b,c) exact; growth exponent C = "
                               f"{growth.measured:.3f} for n = 3 ({dt:.1f}s)")


def test_criterion_5_hecke(record_property):
    rep, dt = _run("hecke")
    _all_pass(rep)
    for p in (2, 3, 5):
        assert rep.check(f"lambda0-generator[p={p}]").measured == str(QuadraticSurd(0, 2, p))
        assert rep.check(f"tempered[p={p}]").measured <= 1e-9
    consts = [rep.check(f"restricted-main-term[gl2-gl1,j={j}]").measured for j in (1, 2)]
    rows = rep.tables["main_term"]
    assert {r["p"] for r in rows} == {p for p in range(2, 51) if all(p % d for d in range(2, p))}
    assert max(r["ratio"] for r in rows) == max(consts)
    record_property("summary", f"lambda_0 exact, tempered at 100 samples; main-term constant "
                               f"{max(consts):g} over p <= 50 ({dt:.1f}s)")


def test_criterion_6_counting(record_property):
    rep, dt = _run("counting")
    _all_pass(rep, prefix="")
    crude = rep.check("crude-bound")
    assert crude.detail["instances"] == 11 * 11 * 20 * 4
    assert len(rep.tables["sweep"]) == 11 * 11 * 20 * 4
    for name in ("sorted-matching", "removal-lemma", "torus-height"):
        assert rep.check(name).measured == 0
        assert rep.check(name).detail["cases"] == 10_000
    assert dt < 300
    refined = rep.check("refined-bound")
    record_property("summary", f"crude constant {crude.measured:g} (explicit {crude.bound:g}); refined slack "
                               f"{refined.measured:g}, constant {refined.detail['refined_constant']:g} ({dt:.1f}s)")


def test_criterion_7_eisenstein(record_property):
    rep, dt = _run("eisenstein")
    _all_pass(rep)
    parts = []
    for T in (64, 256):
        hyp = rep.check(f"hypotheses[T={T}]").measured
        assert hyp["self_dual"] <= 1e-8 and hyp["line"] <= 1e-8 and hyp["leakage"] < 1e-6
        assert rep.check(f"lattice-modes[T={T}]").measured <= 1e-6
        assert rep.check(f"lattice-modes[T={T}]").detail["points"] == 20
        assert rep.check(f"fourier-reconstruction[T={T}]").measured <= 1e-3
        rows = [r for r in rep.tables["profile"] if r["T"] == T]
        root = math.sqrt(T)
        base = next(r["measured"] for r in rows if r["t"] == 1.0)
        peak = max(r["measured"] / base for r in rows if r["t"] <= root + 1e-12)
        env = next(r["envelope"] for r in rows if abs(r["t"] - root) < 1e-9)
        assert peak <= 20 and env > T / 4
        parts.append(f"T={T}: peak {peak:.3g}, envelope {env:g}")
    assert dt < 600 * 2
    record_property("summary", "; ".join(parts) + f" ({dt:.1f}s)")


def test_criterion_8_exponents(record_property):
    rep, dt = _run("exponents")
    _all_pass(rep)
    assert rep.check("delta2").measured == Fraction(1, 30)
    assert rep.check("delta3").measured == Fraction(1, 279)
    assert rep.check("optimization").detail["nmax"] == 50
    assert dt < 1
    record_property("summary", f"delta_2 = 1/30, delta_3 = 1/279, identities exact ({dt:.2f}s)")
