"""Certified index of Lie poset algebras.

The index is ``dim g - max_F rank B_F`` where ``B_F(x, y) = F([x, y])``.
Every certificate carries an interval ``lower <= index <= upper``:

* ``upper`` comes from sampled integer functionals (any sample can only
  under-estimate the generic rank);
* ``lower`` is the better of a matching bound on the commutator graph and an
  exact symbolic elimination of the Kirillov form.

The status is ``"exact"`` only when the two bounds meet.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

from .algebra import LiePosetAlgebra, build_type_a, functional_from_entries
from .generic_rank import skew_generic_rank
from .linalg import bareiss_rank
from .matching import matching_number
from .poset import Poset, complete_poset, statistics

EXACT = "exact"
BRACKETED = "bracketed"


class FormulaInapplicable(ValueError):
    """The closed-form index formulas cover height at most two only."""


@dataclass(frozen=True)
class IndexConfig:
    trials: int = 8
    seed: int = 0
    coeff_bound: int = 65536
    symbolic: bool = True
    max_terms: int = 4000
    escalate: bool = True

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if self.coeff_bound < 1:
            raise ValueError("coeff_bound must be positive")


@dataclass(frozen=True)
class KirillovEvaluation:
    functional: tuple[Fraction, ...]
    matrix: list[list[Fraction | int]] = field(repr=False)
    rank: int


@dataclass(frozen=True)
class IndexCertificate:
    dim: int
    lower: int
    upper: int
    formula: int | None
    status: str
    trials: int
    seed: int
    matching_bound: int
    symbolic_complete: bool

    @property
    def index(self) -> int | None:
        return self.lower if self.status == EXACT else None

    @property
    def formula_mismatch(self) -> bool:
        """True when an exact index disagrees with the closed-form prediction."""
        return self.status == EXACT and self.formula is not None and self.formula != self.lower

    def to_json(self) -> dict:
        return asdict(self)


def commutator_graph(alg: LiePosetAlgebra) -> list[set[int]]:
    """Vertices are basis elements; ``i ~ j`` when ``[x_i, x_j] != 0``."""
    adj: list[set[int]] = [set() for _ in range(alg.dim)]
    for i, j in alg.brackets:
        adj[i].add(j)
        adj[j].add(i)
    return adj


def matching_lower_bound(alg: LiePosetAlgebra) -> int:
    """``dim - 2 nu``: a nonzero skew minor needs a perfect matching of its support."""
    return alg.dim - 2 * matching_number(commutator_graph(alg))


def kirillov_matrix(alg: LiePosetAlgebra, functional: Sequence[Fraction | int]) -> list[list[Fraction | int]]:
    d = alg.dim
    m: list[list[Fraction | int]] = [[0] * d for _ in range(d)]
    for (i, j), row in alg.brackets.items():
        v = sum(c * functional[k] for k, c in row.items())
        m[i][j] = v
        m[j][i] = -v
    return m


def kirillov_form(alg: LiePosetAlgebra, functional: Sequence[Fraction | int]) -> KirillovEvaluation:
    if len(functional) != alg.dim:
        raise ValueError("functional has the wrong length")
    m = kirillov_matrix(alg, functional)
    return KirillovEvaluation(tuple(Fraction(x) for x in functional), m, bareiss_rank(m))


def kernel_dimension(alg: LiePosetAlgebra, functional: Sequence[Fraction | int]) -> int:
    return alg.dim - kirillov_form(alg, functional).rank


def random_functional(alg: LiePosetAlgebra, rng: random.Random, coeff_bound: int) -> list[int]:
    return [rng.randint(-coeff_bound, coeff_bound) for _ in range(alg.dim)]


def sampled_index_upper(
    alg: LiePosetAlgebra, trials: int, seed: int, coeff_bound: int = 65536, floor: int = 0
) -> tuple[int, list[int] | None]:
    """Minimum of ``dim - rank B_F`` over ``trials`` seeded random functionals.

    Sampling stops early once the value reaches ``floor``, a proven lower
    bound, since later trials could not lower the minimum any further.
    """
    rng = random.Random(seed)
    best = alg.dim
    best_f: list[int] | None = None
    for _ in range(trials):
        f = random_functional(alg, rng, coeff_bound)
        value = alg.dim - bareiss_rank(kirillov_matrix(alg, f))
        if best_f is None or value < best:
            best, best_f = value, f
        if best <= floor:
            break
    return best, best_f


def symbolic_lower_bound(alg: LiePosetAlgebra, max_terms: int = 4000) -> tuple[int, bool]:
    """Lower bound from exact elimination; exact (second value true) when it finishes."""
    d = alg.dim
    entries = {}
    for (i, j), row in alg.brackets.items():
        poly = {}
        for k, c in row.items():
            e = [0] * d
            e[k] = 1
            poly[tuple(e)] = Fraction(c)
        entries[(i, j)] = poly
    res = skew_generic_rank(entries, d, max_terms)
    return d - res.rank_upper, res.complete


def _formula_for(alg: LiePosetAlgebra) -> int | None:
    p = alg.source
    if alg.variant not in ("sl", "gl") or not isinstance(p, Poset) or p.height > 2:
        return None
    return formula_index(p) + (1 if alg.variant == "gl" else 0)


def index(alg: LiePosetAlgebra, config: IndexConfig | None = None) -> IndexCertificate:
    """Certify the index of ``alg``.

    Deterministic in ``(alg, trials, seed, coeff_bound)``.  A bracketed
    result is retried once with four times as many trials when
    ``config.escalate`` is set.
    """
    config = config or IndexConfig()
    match_lb = matching_lower_bound(alg)
    lower = max(match_lb, 0)
    complete = False
    if config.symbolic:
        sym, complete = symbolic_lower_bound(alg, config.max_terms)
        lower = max(lower, sym)
    trials = config.trials
    upper, _ = sampled_index_upper(alg, trials, config.seed, config.coeff_bound, lower)
    if upper != lower and config.escalate:
        trials *= 4
        upper, _ = sampled_index_upper(alg, trials, config.seed, config.coeff_bound, lower)
    if lower > upper:
        raise ArithmeticError("lower bound exceeds a sampled value; this is a bug")
    return IndexCertificate(
        dim=alg.dim,
        lower=lower,
        upper=upper,
        formula=_formula_for(alg),
        status=EXACT if lower == upper else BRACKETED,
        trials=trials,
        seed=config.seed,
        matching_bound=match_lb,
        symbolic_complete=complete,
    )


# closed forms ---------------------------------------------------------------


def formula_index(p: Poset) -> int:
    """Predicted index of the type-A (traceless) algebra for height <= 2.

    Height 0 gives ``|P| - 1``.  Otherwise the value is
    ``Rel_E - |P| + 2 C - 1 + sum_j UD(j)`` with the sum over non-extremal
    elements, which also covers the height-one count ``Rel - |P| + 2C - 1``.
    """
    if p.height > 2:
        raise FormulaInapplicable(f"height {p.height} exceeds 2")
    s = statistics(p)
    if s.height == 0:
        return s.n - 1
    inner = sum(s.ud[j] for j in p.elements if j not in s.extremal)
    return s.rel_extremal - s.n + 2 * s.components - 1 + inner


def cpn1m_index(n: int, m: int) -> int:
    """Index of ``P(n, 1, m)`` (``n`` minimal and ``m`` maximal elements)."""
    if n < 1 or m < 1:
        raise ValueError("n and m must be positive")
    if n == m:
        return n * n - 2 * n + 2
    return min(n, m) * (max(n, m) - 2)


def witness_functional(n: int, m: int) -> tuple[LiePosetAlgebra, list[Fraction]]:
    """A functional on ``gl`` of ``P(n, 1, m)`` realising the closed-form index.

    Labels: minima ``1..n``, middle ``n+1``, maxima ``n+2..n+m+1``.  For
    ``n <= m`` the support is ``E*[1, n+1+i]`` (``i = 1..m``) together with
    ``E*[i, n+i]`` (``i = 2..n+1``, dropping the middle-to-middle term when
    ``n = m``).  The case ``n > m`` is the mirror image under the
    anti-transpose, which maps ``P(m, 1, n)`` onto ``P(n, 1, m)``.
    """
    p = complete_poset([n, 1, m])
    alg = build_type_a(p, traceless=False)
    small, big = min(n, m), max(n, m)
    support: list[tuple[int, int]] = [(1, small + 1 + i) for i in range(1, big + 1)]
    last = small if small == big else small + 1
    support += [(i, small + i) for i in range(2, last + 1)]
    if n > m:
        size = n + m + 1
        support = [(size + 1 - b, size + 1 - a) for a, b in support]
    return alg, functional_from_entries(alg, {pos: 1 for pos in support})
