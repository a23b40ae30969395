"""Generic rank of a skew-symmetric matrix of linear forms.

The entries of the Kirillov form are linear forms in the coordinates of a
functional.  Its rank over the field of rational functions is computed here
exactly by repeated 2x2 Schur complements.  Polynomials are sparse dicts
mapping exponent tuples (negative exponents allowed) to Fractions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .matching import matching_number

Poly = dict[tuple[int, ...], Fraction]


def padd(p: Poly, q: Poly, sign: int = 1) -> Poly:
    out = dict(p)
    for k, v in q.items():
        w = out.get(k, 0) + sign * v
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


def pmul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for a, x in p.items():
        for b, y in q.items():
            k = tuple(i + j for i, j in zip(a, b))
            w = out.get(k, 0) + x * y
            if w:
                out[k] = w
            else:
                out.pop(k)
    return out


def pneg(p: Poly) -> Poly:
    return {k: -v for k, v in p.items()}


@dataclass(frozen=True)
class SymbolicRank:
    """Outcome of the elimination.

    ``eliminated`` is the rank accounted for by completed pivots.  When
    ``complete`` is false the remaining Schur complement was too large;
    ``residual_matching`` then bounds its rank by twice a maximum matching of
    its support, so ``rank_upper`` is still a valid upper bound.
    """

    eliminated: int
    complete: bool
    residual_matching: int
    max_terms: int

    @property
    def rank_upper(self) -> int:
        return self.eliminated + 2 * self.residual_matching


def skew_generic_rank(entries: Mapping[tuple[int, int], Poly], size: int, max_terms: int = 4000) -> SymbolicRank:
    """Rank of the skew matrix with upper entries ``entries[(i, j)]`` (``i < j``).

    Pivots on the entry with the fewest terms.  Monomial pivots are divided
    out exactly; otherwise the remaining block is scaled by the pivot, which
    leaves the rank unchanged because the pivot is a nonzero rational function.
    """
    rows: dict[int, dict[int, Poly]] = {k: {} for k in range(size)}
    for (i, j), p in entries.items():
        if p:
            rows[i][j] = p
            rows[j][i] = pneg(p)
    rank = 0
    biggest = max((len(p) for p in entries.values()), default=0)
    while True:
        best = None
        for i, ri in rows.items():
            for j, p in ri.items():
                if i < j:
                    cost = (len(p), (len(ri) - 1) * (len(rows[j]) - 1), i, j)
                    if best is None or cost < best:
                        best = cost
        if best is None:
            break
        i, j = best[2], best[3]
        a = rows[i][j]
        ri = rows.pop(i)
        rj = rows.pop(j)
        for r in rows.values():
            r.pop(i, None)
            r.pop(j, None)
        ri.pop(j, None)
        rj.pop(i, None)
        inv: Poly | None = None
        if len(a) == 1:
            ((e, c),) = a.items()
            inv = {tuple(-x for x in e): 1 / Fraction(c)}
        else:
            for r in rows.values():
                for l in list(r):
                    r[l] = pmul(r[l], a)
        ks = sorted(set(ri) | set(rj))
        # S_kl = M_kl - (M_kj M_il - M_ki M_jl) / a, with M_kj = -rj[k], M_ki = -ri[k]
        for x, k in enumerate(ks):
            for l in ks[x + 1 :]:
                t: Poly = {}
                if k in rj and l in ri:
                    t = padd(t, pmul(pneg(rj[k]), ri[l]))
                if k in ri and l in rj:
                    t = padd(t, pmul(pneg(ri[k]), rj[l]), -1)
                if not t:
                    continue
                if inv is not None:
                    t = pmul(t, inv)
                new = padd(rows[k].get(l, {}), t, -1)
                if new:
                    rows[k][l] = new
                    rows[l][k] = pneg(new)
                    biggest = max(biggest, len(new))
                else:
                    rows[k].pop(l, None)
                    rows[l].pop(k, None)
        rank += 2
        if biggest > max_terms:
            live = sorted(rows)
            pos = {v: t for t, v in enumerate(live)}
            adj = [set(pos[u] for u in rows[v]) for v in live]
            return SymbolicRank(rank, False, matching_number(adj), biggest)
    return SymbolicRank(rank, True, 0, biggest)
