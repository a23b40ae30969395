"""Principal elements of Frobenius algebras and their ad-spectra."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import LiePosetAlgebra
from .index import IndexConfig, index, kirillov_matrix, random_functional
from .linalg import bareiss_rank, charpoly, matmul, poly_divide_root, rational_roots, solve


class NotFrobeniusError(ValueError):
    pass


class NonRationalSpectrum(ArithmeticError):
    def __init__(self, found: dict[Fraction, int], residual: list[Fraction]):
        self.found = found
        self.residual = residual
        super().__init__(f"part of the spectrum is not rational; residual characteristic polynomial {residual}")


def find_frobenius_functional(
    alg: LiePosetAlgebra, seed: int, coeff_bound: int = 65536, max_tries: int = 64
) -> list[int]:
    """A seeded random functional whose Kirillov form is nondegenerate."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        f = random_functional(alg, rng, coeff_bound)
        if bareiss_rank(kirillov_matrix(alg, f)) == alg.dim:
            return f
    cert = index(alg, IndexConfig(seed=seed, coeff_bound=coeff_bound))
    if cert.lower > 0:
        raise NotFrobeniusError(f"index is {cert.lower}, not zero")
    raise ArithmeticError("no regular functional found; raise max_tries")


def principal_element(alg: LiePosetAlgebra, functional: Sequence[Fraction | int]) -> list[Fraction]:
    """The unique ``F_hat`` with ``F([F_hat, x]) = F(x)`` for every basis element ``x``."""
    b = kirillov_matrix(alg, functional)
    # F([F_hat, x_k]) = sum_i F_hat_i B[i][k], so solve B^T F_hat = F
    bt = [[b[i][k] for i in range(alg.dim)] for k in range(alg.dim)]
    try:
        return solve(bt, [Fraction(v) for v in functional])
    except ValueError as exc:
        raise NotFrobeniusError("functional is not regular") from exc


def _shifted(m: list[list[Fraction]], lam: Fraction) -> list[list[Fraction]]:
    return [[v - (lam if i == j else 0) for j, v in enumerate(row)] for i, row in enumerate(m)]


def algebraic_multiplicity(m: list[list[Fraction]], lam: Fraction) -> int:
    """``dim ker (M - lam)^k`` once the kernel chain stops growing."""
    n = len(m)
    a = _shifted(m, lam)
    power = a
    rank = bareiss_rank(power)
    while rank > 0:
        power = matmul(power, a)
        nxt = bareiss_rank(power)
        if nxt == rank:
            break
        rank = nxt
    return n - rank


def ad_spectrum(alg: LiePosetAlgebra, x: Sequence[Fraction]) -> dict[Fraction, int]:
    """Eigenvalues of ``ad x`` with algebraic multiplicities.

    Tries 0 and 1 first, then small integers, then the rational roots of the
    characteristic polynomial; raises :class:`NonRationalSpectrum` if the
    multiplicities still fall short of the dimension.
    """
    m = alg.ad_matrix(x)
    n = alg.dim
    found: dict[Fraction, int] = {}

    def take(lam: Fraction) -> None:
        if lam in found:
            return
        mult = algebraic_multiplicity(m, lam)
        if mult:
            found[lam] = mult

    candidates = [Fraction(0), Fraction(1)] + [Fraction(s * k) for k in range(1, n + 1) for s in (-1, 1) if s * k != 1]
    for lam in candidates:
        if sum(found.values()) == n:
            break
        take(lam)
    if sum(found.values()) < n:
        poly = charpoly(m)
        for lam in rational_roots(poly):
            take(lam)
        if sum(found.values()) < n:
            residual = poly
            for lam, mult in found.items():
                for _ in range(mult):
                    residual, _ = poly_divide_root(residual, lam)
            raise NonRationalSpectrum(found, residual)
    return dict(sorted(found.items()))


@dataclass(frozen=True)
class SpectrumReport:
    functional: tuple[Fraction, ...]
    principal: tuple[Fraction, ...]
    principal_matrix: dict[tuple[int, int], Fraction]
    spectrum: dict[Fraction, int]

    @property
    def is_binary(self) -> bool:
        """Half the eigenvalues are 0 and half are 1."""
        n = sum(self.spectrum.values())
        return set(self.spectrum) <= {0, 1} and self.spectrum.get(Fraction(0), 0) * 2 == n

    def to_json(self) -> dict:
        def enc(v: Fraction) -> list[int]:
            return [v.numerator, v.denominator]

        return {
            "functional": [enc(v) for v in self.functional],
            "principal": [enc(v) for v in self.principal],
            "principal_matrix": [[r + 1, c + 1, *enc(v)] for (r, c), v in sorted(self.principal_matrix.items())],
            "spectrum": [[*enc(lam), mult] for lam, mult in self.spectrum.items()],
            "binary": self.is_binary,
        }


def spectrum_report(
    alg: LiePosetAlgebra,
    seed: int = 0,
    coeff_bound: int = 65536,
    functional: Sequence[Fraction | int] | None = None,
) -> SpectrumReport:
    f = list(functional) if functional is not None else find_frobenius_functional(alg, seed, coeff_bound)
    fhat = principal_element(alg, f)
    return SpectrumReport(
        functional=tuple(Fraction(v) for v in f),
        principal=tuple(fhat),
        principal_matrix=alg.to_matrix(fhat),
        spectrum=ad_spectrum(alg, fhat),
    )
