"""Acceptance suite: one test per criterion, reported as PASS/FAIL lines.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary lists
every criterion with its status.  Exact rational arithmetic is used
throughout, so the only tolerances are the wall-clock budgets below.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction

import pytest

from lieposet.algebra import build_algebra, build_type_a, functional_from_entries
from lieposet.atlas import enumerate_posets, sweep
from lieposet.frobenius import (
    BLOCKS,
    FROBENIUS,
    FROBENIUS_RULES,
    RULES,
    apply_rule,
    characterize,
    check_nonpure_conditions,
    characterize_h01,
    generate_constructions,
    is_frobenius,
    iterate_traces,
    valid_attachments,
)
from lieposet.index import EXACT, IndexConfig, formula_index, index
from lieposet.poset import Poset, complete_poset, disjoint_union, fixtures, glue
from lieposet.signed import hexagon_bcd
from lieposet.spectrum import find_frobenius_functional, spectrum_report
from lieposet.topology import betti, build_glued_morse, example_morse_assignment, order_complex, verify_morse

FORMULA_BUDGET_S = 600.0
CPN1M_BUDGET_S = 60.0
RULE_SAMPLES = 200
LAW_PAIRS = 100
LARGE_N = 8
CONFIG = IndexConfig(seed=20240)


def exact_index(p, variant="A", config=CONFIG):
    cert = index(build_algebra(p, variant), config)
    assert cert.status == EXACT, f"bracketed certificate for {p}: {cert}"
    return cert.lower


@pytest.fixture(scope="module")
def large_sweep():
    """Every height <= 2 poset on at most eight elements, with all checks."""
    return sweep(LARGE_N, config=CONFIG, max_height=2, allow_large=True)


@pytest.mark.acceptance(1, "formula equals certified index on connected height<=2 posets, n<=6")
def test_formula_agreement_sweep():
    start = time.perf_counter()
    rep = sweep(6, checks=("formulas",), config=CONFIG, max_height=2, connected_only=True)
    elapsed = time.perf_counter() - start
    summary = rep.checks["formulas"]
    assert summary.checked == len(rep.records) > 0
    assert summary.failures == []
    assert all(r.certificate["status"] == EXACT for r in rep.records)
    assert elapsed <= FORMULA_BUDGET_S


def _cpn1m_expected(n: int, m: int) -> int:
    if n == m:
        return n * n - 2 * n + 2
    return n * (m - 2) if n < m else m * (n - 2)


@pytest.mark.acceptance(2, "P(n,1,m) table for 1<=n,m<=4 is exact")
def test_cpn1m_table():
    start = time.perf_counter()
    for n in range(1, 5):
        for m in range(1, 5):
            cert = index(build_type_a(complete_poset([n, 1, m])), CONFIG)
            assert cert.status == EXACT
            assert cert.lower == _cpn1m_expected(n, m), (n, m, cert)
    assert time.perf_counter() - start <= CPN1M_BUDGET_S


@pytest.mark.acceptance(3, "tree and four-condition characterizations match certified index, n<=6")
def test_characterization():
    checked = 0
    for n in range(1, 7):
        for p in enumerate_posets(n, (0, 1, 2)):
            v = is_frobenius(p, "A", CONFIG)
            assert v.certificate.status == EXACT
            frob = v.verdict == FROBENIUS
            if p.height <= 1:
                tree = p.is_connected and len(p.covers) == p.n - 1
                assert characterize_h01(p) == tree
                assert frob == tree, p
            else:
                assert frob == (p.is_connected and check_nonpure_conditions(p).holds), p
            assert characterize(p) == frob
            checked += 1
    assert checked == 293


def _gluing_bases() -> list:
    pool = [p for n in range(4, 7) for p in enumerate_posets(n, 2, connected_only=True) if p.is_pure]
    pool += [c.poset for c in generate_constructions(3, FROBENIUS_RULES, certify=False)]
    return pool


@pytest.mark.acceptance(4, "each gluing rule changes formula_index by its tabulated delta (200 samples)")
def test_gluing_rule_deltas():
    rng = random.Random(4)
    bases = _gluing_bases()
    for tag, rule in RULES.items():
        options = [(q, b, att) for q in bases for b in BLOCKS for att in valid_attachments(q, b, tag)]
        assert options, tag
        for _ in range(RULE_SAMPLES):
            q, block, att = rng.choice(options)
            res = apply_rule(q, block, tag, att)
            assert formula_index(res.poset) - formula_index(q) == rule.delta, (tag, q, block, att)
        # certify a few applications independently of the formula
        for q, block, att in rng.sample(options, min(5, len(options))):
            res = apply_rule(q, block, tag, att)
            assert exact_index(res.poset) - exact_index(q) == rule.delta


@pytest.mark.acceptance(5, "disjoint union and min/max gluing laws on 100 random certified pairs each")
def test_union_and_gluing_laws():
    rng = random.Random(5)
    connected = [p for n in range(1, 5) for p in enumerate_posets(n, connected_only=True)]
    for _ in range(LAW_PAIRS):
        parts = [rng.choice(connected) for _ in range(rng.randint(2, 3))]
        total = sum(exact_index(p) for p in parts) + len(parts) - 1
        assert exact_index(disjoint_union(*parts)) == total, parts
    low = [p for n in range(1, 5) for p in enumerate_posets(n, (0, 1, 2))]
    for _ in range(LAW_PAIRS):
        p, q = rng.choice(low), rng.choice(low)
        side = rng.choice(("minimal", "maximal"))
        a, b = rng.choice(getattr(p, side)), rng.choice(getattr(q, side))
        r = glue(p, q, [(a, b)])
        assert exact_index(r) == exact_index(p) + exact_index(q), (p, q, side, a, b)


@pytest.mark.acceptance(6, "homology vanishes for Frobenius posets n<=8; hexagon b1=1; Morse traces")
def test_topology(large_sweep):
    frob = [r for r in large_sweep.records if r.frobenius == FROBENIUS]
    assert frob
    for rec in frob:
        assert rec.betti[0] == 1 and rec.betti[1] == 0 and rec.betti[2] == 0, rec.poset
    assert betti(order_complex(hexagon_bcd().to_poset()))[:2] == [1, 1]
    k, f = example_morse_assignment("P112")
    rep = verify_morse(k, f)
    assert rep.is_morse and len(rep.critical) == 1
    traces = 0
    for trace in iterate_traces(3, ("A1", "A2", "C", "D1", "D2", "F")):
        _, k, f = build_glued_morse(trace)
        rep = verify_morse(k, f)
        assert rep.is_morse and len(rep.critical) == 1, trace
        traces += 1
    assert traces > 1000


@pytest.mark.acceptance(7, "binary spectra n<=8; P(2,1,1) principal element; functional independence")
def test_spectrum(large_sweep):
    frob = [r for r in large_sweep.records if r.frobenius == FROBENIUS]
    assert large_sweep.checks["spectrum"].checked == len(frob)
    assert large_sweep.checks["spectrum"].failures == []

    alg = build_type_a(complete_poset([2, 1, 1]))
    f = functional_from_entries(alg, {(1, 3): 1, (1, 4): 1, (2, 4): 1})
    rep = spectrum_report(alg, functional=f)
    half = Fraction(1, 2)
    assert rep.principal_matrix == {(0, 0): half, (1, 1): half, (2, 2): -half, (3, 3): -half}
    assert rep.spectrum == {0: 4, 1: 4}

    for rec in frob:
        alg = build_type_a(Poset.from_json(rec.poset))
        spectra = []
        functionals = set()
        for seed in (11, 12, 13):
            func = tuple(find_frobenius_functional(alg, seed))
            functionals.add(func)
            spectra.append(spectrum_report(alg, functional=func).spectrum)
        assert len(functionals) == (3 if alg.dim else 1)
        assert spectra[0] == spectra[1] == spectra[2], rec.poset


@pytest.mark.acceptance(8, "hexagon is Frobenius in B, C, D but not A; Q, Q*, SG, P(1,2,2), P(2,2,1)")
def test_classical_types():
    hexagon = hexagon_bcd()
    for variant in ("B", "C", "D"):
        assert exact_index(hexagon, variant) == 0, variant
    assert exact_index(hexagon.to_poset(), "A") > 0
    fx = fixtures()
    for name in ("Q", "Q*", "SG(2)", "SG(3)", "SG(4)", "SG(5)", "SG(6)", "P(1,2,2)", "P(2,2,1)"):
        assert is_frobenius(fx[name], "A", CONFIG).verdict == FROBENIUS, name


@pytest.mark.acceptance(9, "fixed seeds give identical certificates and atlas records")
def test_determinism():
    def records():
        rep = sweep(5, config=CONFIG, max_height=3)
        return [{k: v for k, v in r.to_json().items() if k != "elapsed_ms"} for r in rep.records]

    assert records() == records()
    for p in fixtures().values():
        variant = "C" if not hasattr(p, "is_pure") else "A"
        alg = build_algebra(p, variant)
        assert index(alg, CONFIG) == index(alg, CONFIG)
    gen = lambda: [c.to_json() for c in generate_constructions(3, certify=False)]  # noqa: E731
    assert gen() == gen()


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
