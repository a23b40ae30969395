"""Enumeration of small posets and property-checking sweeps."""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Iterator

from .algebra import build_type_a
from .canonical import canonical_form, canonical_key
from .frobenius import FROBENIUS, characterize, is_frobenius
from .index import EXACT, IndexConfig, formula_index, index
from .poset import Poset, antichain, statistics
from .spectrum import spectrum_report
from .topology import betti, order_complex

ENUMERATION_LIMIT = 7
CHECKS = ("formulas", "frobenius", "homology", "spectrum")


def order_ideals(p: Poset) -> list[frozenset[int]]:
    """All down-closed subsets, including the empty one."""
    out: list[frozenset[int]] = []

    def rec(k: int, cur: frozenset[int]) -> None:
        if k > p.n:
            out.append(cur)
            return
        rec(k + 1, cur)
        if p.down(k) <= cur:
            rec(k + 1, cur | {k})

    rec(1, frozenset())
    return out


def _extend(q: Poset, ideal: frozenset[int]) -> Poset:
    n = q.n + 1
    return Poset.from_relations(n, list(q.relations) + [(d, n) for d in ideal])


def _height_set(height_filter: int | Iterable[int] | None) -> frozenset[int] | None:
    if height_filter is None:
        return None
    if isinstance(height_filter, int):
        return frozenset([height_filter])
    return frozenset(height_filter)


def enumerate_posets(
    n: int,
    height_filter: int | Iterable[int] | None = None,
    connected_only: bool = False,
    dedup: bool = True,
    allow_large: bool = False,
) -> Iterator[Poset]:
    """Posets on ``n`` elements.

    With ``dedup`` one canonical representative per isomorphism class is
    produced, in order of canonical key; otherwise every naturally labeled
    poset is produced once.  ``height_filter`` keeps only the given heights.
    Sizes above 7 need ``allow_large``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > ENUMERATION_LIMIT and not allow_large:
        raise ValueError(f"enumeration above n={ENUMERATION_LIMIT} needs allow_large=True")
    heights = _height_set(height_filter)
    cap = max(heights) if heights else n
    keep = lambda p: (heights is None or p.height in heights) and (not connected_only or p.is_connected)  # noqa: E731
    if not dedup:
        def rec(q: Poset) -> Iterator[Poset]:
            if q.n == n:
                if keep(q):
                    yield q
                return
            for ideal in order_ideals(q):
                r = _extend(q, ideal)
                if r.height <= cap:
                    yield from rec(r)

        yield from rec(antichain(1))
        return
    for p in unlabeled_posets(n, cap):
        if keep(p):
            yield p


_UNLABELED_CACHE: dict[tuple[int, int], list[Poset]] = {}


def unlabeled_posets(n: int, max_height: int) -> list[Poset]:
    """Canonical forms of all posets of height <= ``max_height``, sorted by key.

    Every poset arises from one with an element fewer by adding a maximal
    element above an order ideal, and removing an element never raises the
    height, so the levels can be pruned by height as they are built.
    """
    cache_key = (n, max_height)
    if cache_key in _UNLABELED_CACHE:
        return _UNLABELED_CACHE[cache_key]
    if n == 1:
        result = [antichain(1)]
    else:
        found: dict = {}
        for q in unlabeled_posets(n - 1, max_height):
            for ideal in order_ideals(q):
                r = _extend(q, ideal)
                if r.height > max_height:
                    continue
                c = canonical_form(r)
                found.setdefault(c.key(), c)
        result = [found[k] for k in sorted(found)]
    _UNLABELED_CACHE[cache_key] = result
    return result


# sweeps -----------------------------------------------------------------------------


@dataclass
class AtlasRecord:
    poset: dict
    height: int
    statistics: dict
    formula: int | None
    certificate: dict
    frobenius: str
    characterization: bool | None
    betti: list[int] | None
    spectrum: list[list[int]] | None
    elapsed_ms: float = 0.0

    def to_json(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


@dataclass
class CheckSummary:
    checked: int = 0
    passed: int = 0
    failures: list[dict] = field(default_factory=list)

    def add(self, ok: bool, witness: dict) -> None:
        self.checked += 1
        if ok:
            self.passed += 1
        else:
            self.failures.append(witness)

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class SweepReport:
    records: list[AtlasRecord]
    checks: dict[str, CheckSummary]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks.values())

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "posets": len(self.records),
            "checks": {
                name: {"checked": c.checked, "passed": c.passed, "failures": c.failures}
                for name, c in sorted(self.checks.items())
            },
        }


def _stats_json(p: Poset) -> dict:
    s = statistics(p)
    return {
        "n": s.n,
        "rel": s.rel,
        "covers": s.covers,
        "components": s.components,
        "pure": s.is_pure,
        "minimal": len(s.minimal),
        "maximal": len(s.maximal),
        "rel_extremal": s.rel_extremal,
    }


def analyse(p: Poset, checks: frozenset[str], config: IndexConfig) -> AtlasRecord:
    """Compute one atlas record (deterministic apart from ``elapsed_ms``)."""
    start = time.perf_counter()
    verdict = is_frobenius(p, "A", config)
    cert = verdict.certificate
    frob = verdict.verdict == FROBENIUS
    formula = formula_index(p) if p.height <= 2 else None
    char = characterize(p) if p.height <= 2 and "frobenius" in checks else None
    b = betti(order_complex(p)) if "homology" in checks else None
    spec = None
    if "spectrum" in checks and frob and p.height <= 2:
        rep = spectrum_report(build_type_a(p), seed=config.seed, coeff_bound=config.coeff_bound)
        spec = [[lam.numerator, lam.denominator, m] for lam, m in rep.spectrum.items()]
    return AtlasRecord(
        poset=p.to_json(),
        height=p.height,
        statistics=_stats_json(p),
        formula=formula,
        certificate=cert.to_json(),
        frobenius=verdict.verdict,
        characterization=char,
        betti=b,
        spectrum=spec,
        elapsed_ms=round((time.perf_counter() - start) * 1000, 3),
    )


def _judge(rec: AtlasRecord, checks: frozenset[str], summary: dict[str, CheckSummary]) -> None:
    cert = rec.certificate
    witness = {"poset": rec.poset}
    exact = cert["status"] == EXACT
    if "formulas" in checks and rec.formula is not None:
        summary["formulas"].add(exact and cert["lower"] == rec.formula, {**witness, "certificate": cert, "formula": rec.formula})
    if "frobenius" in checks and rec.characterization is not None:
        summary["frobenius"].add(
            exact and (rec.frobenius == FROBENIUS) == rec.characterization,
            {**witness, "verdict": rec.frobenius, "characterization": rec.characterization},
        )
    if "homology" in checks and rec.betti is not None:
        ok = rec.betti[0] == rec.statistics["components"]
        if rec.frobenius == FROBENIUS and rec.height <= 2:
            ok = ok and all(v == 0 for v in rec.betti[1:3])
        summary["homology"].add(ok, {**witness, "betti": rec.betti})
    if "spectrum" in checks and rec.spectrum is not None:
        spec = {Fraction(a, b): m for a, b, m in rec.spectrum}
        total = sum(spec.values())
        ok = set(spec) <= {0, 1} and 2 * spec.get(Fraction(0), 0) == total
        summary["spectrum"].add(ok, {**witness, "spectrum": rec.spectrum})


def _worker(args: tuple) -> AtlasRecord:
    data, checks, config = args
    return analyse(Poset.from_json(data), checks, config)


def default_workers() -> int:
    """Worker cap from ``LIEPOSET_THREADS`` (default 1)."""
    try:
        return max(1, int(os.environ.get("LIEPOSET_THREADS", "1")))
    except ValueError:
        return 1


def sweep(
    n_max: int,
    checks: Iterable[str] = CHECKS,
    config: IndexConfig | None = None,
    max_height: int | None = None,
    connected_only: bool = False,
    n_min: int = 1,
    out: str | Path | None = None,
    workers: int | None = None,
    allow_large: bool = False,
) -> SweepReport:
    """Run the requested checks over every poset with ``n_min..n_max`` elements.

    Records come out in a fixed order (by size, then canonical key) whatever
    the number of workers, and are appended to ``out`` as JSON lines.
    """
    checks = frozenset(checks)
    unknown = checks - set(CHECKS)
    if unknown:
        raise ValueError(f"unknown checks: {sorted(unknown)}")
    config = config or IndexConfig()
    workers = workers or default_workers()
    posets: list[Poset] = []
    heights = range(0, max_height + 1) if max_height is not None else None
    for n in range(n_min, n_max + 1):
        posets += list(enumerate_posets(n, heights, connected_only, allow_large=allow_large))
    jobs = [(p.to_json(), checks, config) for p in posets]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_worker, jobs, chunksize=8))
    else:
        records = [analyse(p, checks, config) for p in posets]
    summary = {name: CheckSummary() for name in checks}
    for rec in records:
        _judge(rec, checks, summary)
    if out is not None:
        with open(out, "a", encoding="utf-8") as fh:
            for rec in records:
                fh.write(json.dumps(rec.to_json(), sort_keys=True) + "\n")
    return SweepReport(records, summary)


def atlas_key(p: Poset) -> tuple:
    return canonical_key(p)
