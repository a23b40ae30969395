"""Matrix Lie algebras attached to posets.

Ambient matrices are sparse dicts ``{(row, col): Fraction}`` with 0-based
indices.  A :class:`LiePosetAlgebra` stores an explicit basis of such
matrices together with its structure constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .linalg import nullspace, rref
from .poset import Poset, PosetError
from .signed import SignedPoset, validate_signed

Sparse = dict[tuple[int, int], Fraction]


class BracketClosureError(ValueError):
    def __init__(self, pair: tuple[int, int]):
        self.pair = pair
        super().__init__(f"bracket of basis elements {pair} leaves the span")


@dataclass(frozen=True)
class BasisElement:
    """Provenance of one basis matrix.

    ``kind`` is ``"trace"`` (the identity), ``"diag"`` (``E_ii``),
    ``"diag_diff"`` (``E_ii - E_jj``), ``"unit"`` (``E_ij``) or
    ``"constrained"`` (a solution of the type B/C/D conditions).
    Indices are poset labels.
    """

    kind: str
    i: int | None = None
    j: int | None = None

    @property
    def label(self) -> str:
        if self.kind == "trace":
            return "I"
        if self.kind == "diag":
            return f"E[{self.i},{self.i}]"
        if self.kind == "diag_diff":
            return f"E[{self.i},{self.i}]-E[{self.j},{self.j}]"
        if self.kind == "unit":
            return f"E[{self.i},{self.j}]"
        return f"X{self.i}"


def sparse_mul(a: Mapping[tuple[int, int], Fraction], b: Mapping[tuple[int, int], Fraction]) -> Sparse:
    rows: dict[int, list[tuple[int, Fraction]]] = {}
    for (k, c), v in b.items():
        rows.setdefault(k, []).append((c, v))
    out: Sparse = {}
    for (r, k), v in a.items():
        for c, w in rows.get(k, ()):
            key = (r, c)
            val = out.get(key, 0) + v * w
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def sparse_bracket(a: Mapping, b: Mapping) -> Sparse:
    ab = sparse_mul(a, b)
    for key, v in sparse_mul(b, a).items():
        val = ab.get(key, 0) - v
        if val:
            ab[key] = val
        else:
            ab.pop(key, None)
    return ab


class _Coordinates:
    """Expresses ambient matrices in a fixed basis, or reports they are outside the span."""

    def __init__(self, basis: Sequence[Sparse]):
        self.basis = basis
        positions = sorted({p for m in basis for p in m})
        self.positions = positions
        index = {p: k for k, p in enumerate(positions)}
        self.index = index
        dim = len(basis)
        # rows = positions, columns = basis elements; pick pivot positions
        rows = [[m.get(p, Fraction(0)) for m in basis] for p in positions]
        aug = [row + [Fraction(int(r == k)) for k in range(len(positions))] for r, row in enumerate(rows)]
        red, pivots = rref(aug)
        if pivots[:dim] != list(range(dim)):
            raise ValueError("basis matrices are linearly dependent")
        # each reduced row k < dim gives coefficient k as a combination of positions
        self.weights = [
            {positions[c]: v for c, v in enumerate(red[k][dim:]) if v} for k in range(dim)
        ]

    def coords(self, m: Mapping[tuple[int, int], Fraction]) -> list[Fraction] | None:
        if any(p not in self.index for p in m):
            return None
        c = [sum((w * m.get(p, 0) for p, w in wk.items()), Fraction(0)) for wk in self.weights]
        recon: Sparse = {}
        for k, ck in enumerate(c):
            if ck:
                for p, v in self.basis[k].items():
                    recon[p] = recon.get(p, 0) + ck * v
        recon = {p: v for p, v in recon.items() if v}
        if recon != {p: Fraction(v) for p, v in m.items() if v}:
            return None
        return c


@dataclass(frozen=True, eq=False)
class LiePosetAlgebra:
    """A basis of matrices closed under the commutator.

    ``brackets[(i, j)]`` (``i < j``) maps ``k`` to the structure constant
    ``c_ij^k`` of ``[x_i, x_j] = sum_k c_ij^k x_k`` (an ``int`` or ``Fraction``);
    zero brackets are omitted.
    """

    variant: str
    matrix_dim: int
    basis: tuple[Sparse, ...]
    elements: tuple[BasisElement, ...]
    brackets: dict[tuple[int, int], dict[int, int | Fraction]]
    source: Poset | SignedPoset

    @property
    def dim(self) -> int:
        return len(self.basis)

    def bracket_coords(self, i: int, j: int) -> dict[int, Fraction]:
        if i == j:
            return {}
        if i < j:
            return self.brackets.get((i, j), {})
        return {k: -v for k, v in self.brackets.get((j, i), {}).items()}

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> list[Fraction]:
        out = [Fraction(0)] * self.dim
        for (i, j), row in self.brackets.items():
            c = x[i] * y[j] - x[j] * y[i]
            if c:
                for k, v in row.items():
                    out[k] += c * v
        return out

    def to_matrix(self, coeffs: Sequence[Fraction]) -> Sparse:
        out: Sparse = {}
        for c, m in zip(coeffs, self.basis):
            if c:
                for p, v in m.items():
                    out[p] = out.get(p, 0) + c * v
        return {p: v for p, v in out.items() if v}

    def ad_matrix(self, x: Sequence[Fraction]) -> list[list[Fraction]]:
        """Matrix of ``v -> [x, v]``; column ``k`` holds the image of ``x_k``."""
        d = self.dim
        cols = []
        for k in range(d):
            e = [Fraction(0)] * d
            e[k] = Fraction(1)
            cols.append(self.bracket(x, e))
        return [[cols[k][r] for k in range(d)] for r in range(d)]

    def to_json(self) -> dict:
        def enc(v: Fraction) -> list[int]:
            return [v.numerator, v.denominator]

        return {
            "variant": self.variant,
            "matrix_dim": self.matrix_dim,
            "basis": [
                {"label": e.label, "entries": [[r, c, *enc(v)] for (r, c), v in sorted(m.items())]}
                for e, m in zip(self.elements, self.basis)
            ],
            "brackets": [
                [i, j, [[k, *enc(v)] for k, v in sorted(row.items())]] for (i, j), row in sorted(self.brackets.items())
            ],
        }


def _structure_constants(basis: Sequence[Sparse]) -> dict[tuple[int, int], dict[int, Fraction]]:
    coords = _Coordinates(basis)
    out: dict[tuple[int, int], dict[int, Fraction]] = {}
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            br = sparse_bracket(basis[i], basis[j])
            if not br:
                continue
            c = coords.coords(br)
            if c is None:
                raise BracketClosureError((i, j))
            row = {k: v for k, v in enumerate(c) if v}
            if row:
                out[(i, j)] = row
    return out


def _unit(r: int, c: int) -> Sparse:
    return {(r, c): Fraction(1)}


def build_type_a(p: Poset, traceless: bool = True) -> LiePosetAlgebra:
    """The type-A Lie poset algebra of ``p``: ``sl`` by default, ``gl`` otherwise.

    Basis order: diagonal part first, then ``E_ij`` for ``i < j`` in the order,
    sorted lexicographically.
    """
    n = p.n
    basis: list[Sparse] = []
    elements: list[BasisElement] = []
    if traceless:
        for j in range(1, n):
            basis.append({(j - 1, j - 1): Fraction(1), (n - 1, n - 1): Fraction(-1)})
            elements.append(BasisElement("diag_diff", j, n))
    else:
        basis.append({(k, k): Fraction(1) for k in range(n)})
        elements.append(BasisElement("trace"))
        for i in range(2, n + 1):
            basis.append(_unit(i - 1, i - 1))
            elements.append(BasisElement("diag", i, i))
    for i, j in p.relations:
        basis.append(_unit(i - 1, j - 1))
        elements.append(BasisElement("unit", i, j))
    return LiePosetAlgebra(
        variant="sl" if traceless else "gl",
        matrix_dim=n,
        basis=tuple(basis),
        elements=tuple(elements),
        brackets=_type_a_brackets(elements),
        source=p,
    )


def _type_a_brackets(elements: Sequence[BasisElement]) -> dict[tuple[int, int], dict[int, Fraction]]:
    """Structure constants from [E_ij, E_kl] = d_jk E_il - d_li E_kj, without solving.

    The constants are small integers and are kept as ``int``.
    """
    unit_index = {(e.i, e.j): k for k, e in enumerate(elements) if e.kind == "unit"}

    def diag_weight(e: BasisElement, a: int) -> int:
        if e.kind == "trace":
            return 1
        if e.kind == "diag":
            return int(a == e.i)
        return int(a == e.i) - int(a == e.j)

    out: dict[tuple[int, int], dict[int, Fraction]] = {}
    for x, ex in enumerate(elements):
        for y in range(x + 1, len(elements)):
            ey = elements[y]
            if ex.kind != "unit" and ey.kind != "unit":
                continue
            if ex.kind != "unit":
                c = diag_weight(ex, ey.i) - diag_weight(ex, ey.j)
                if c:
                    out[(x, y)] = {y: c}
            elif ey.kind != "unit":
                c = diag_weight(ey, ex.i) - diag_weight(ey, ex.j)
                if c:
                    out[(x, y)] = {x: -c}
            else:
                row: dict[int, int] = {}
                if ex.j == ey.i:
                    row[unit_index[(ex.i, ey.j)]] = 1
                if ey.j == ex.i:
                    row[unit_index[(ey.i, ex.j)]] = -1
                if row:
                    out[(x, y)] = row
    return out


def form_matrix(n: int, variant: str) -> tuple[int, dict[int, int]]:
    """Size ``N`` and signs ``s`` of the anti-diagonal form ``J[r, N-1-r] = s[r]``."""
    if variant == "C":
        size = 2 * n
        return size, {r: (1 if r < n else -1) for r in range(size)}
    if variant == "D":
        size = 2 * n
        return size, {r: 1 for r in range(size)}
    if variant == "B":
        size = 2 * n + 1
        return size, {r: 1 for r in range(size)}
    raise ValueError(f"variant must be B, C or D, not {variant!r}")


def _ambient_position(label: int, n: int, variant: str) -> int:
    if variant == "B":
        return label + n
    return label + n if label < 0 else label + n - 1


def build_type_bcd(p: SignedPoset, variant: str | None = None) -> LiePosetAlgebra:
    """Matrices supported on the diagonal and on the relations of ``p`` that
    preserve the anti-diagonal form of the given type.

    For type B the ambient space has one extra middle row and column; it is
    not part of the poset, so only its diagonal entry is allowed (and the
    form then forces it to vanish).
    """
    variant = variant or p.variant
    if variant not in ("B", "C", "D"):
        raise ValueError(f"variant must be B, C or D, not {variant!r}")
    bad = validate_signed(p, variant)
    if bad:
        raise PosetError("not a valid type-%s poset: %s" % (variant, "; ".join(map(str, bad))))
    n = p.n
    size, sign = form_matrix(n, variant)
    allowed = [(r, r) for r in range(size)]
    off = sorted(
        (_ambient_position(a, n, variant), _ambient_position(b, n, variant)) for a, b in p.relations
    )
    allowed += off
    var = {pos: k for k, pos in enumerate(allowed)}
    # (X^T J + J X)[a, b] = s[b'] X[b', a] + s[a] X[a', b] with x' = N - 1 - x
    constraints = []
    for a in range(size):
        for b in range(size):
            row = [Fraction(0)] * len(allowed)
            bp, ap = size - 1 - b, size - 1 - a
            if (bp, a) in var:
                row[var[(bp, a)]] += sign[bp]
            if (ap, b) in var:
                row[var[(ap, b)]] += sign[a]
            if any(row):
                constraints.append(row)
    kernel = nullspace(constraints, len(allowed))
    # present the kernel in echelon form so the basis is canonical
    red, _ = rref(kernel) if kernel else ([], [])
    basis = []
    for vec in red:
        m = {allowed[k]: v for k, v in enumerate(vec) if v}
        basis.append(m)
    elements = tuple(BasisElement("constrained", k + 1) for k in range(len(basis)))
    return LiePosetAlgebra(
        variant=variant,
        matrix_dim=size,
        basis=tuple(basis),
        elements=elements,
        brackets=_structure_constants(basis),
        source=p,
    )


def build_algebra(p: Poset | SignedPoset, variant: str = "A", traceless: bool = True) -> LiePosetAlgebra:
    """Dispatch on variant; a signed poset in type A uses its underlying order."""
    if variant == "A":
        q = p.to_poset() if isinstance(p, SignedPoset) else p
        return build_type_a(q, traceless)
    if not isinstance(p, SignedPoset):
        raise PosetError(f"type {variant} needs a signed poset")
    return build_type_bcd(p, variant)


def functional_from_entries(alg: LiePosetAlgebra, weights: Mapping[tuple[int, int], Fraction | int]) -> list[Fraction]:
    """Values on the basis of ``X -> sum w[r, c] X[r, c]`` (1-based matrix positions)."""
    w = {(r - 1, c - 1): Fraction(v) for (r, c), v in weights.items()}
    return [sum((w.get(pos, 0) * v for pos, v in m.items()), Fraction(0)) for m in alg.basis]
