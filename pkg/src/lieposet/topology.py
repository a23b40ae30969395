"""Order complexes, simplicial homology over Q and discrete Morse functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

from .frobenius import RULES, Construction, GluingStep, replay
from .linalg import bareiss_rank
from .poset import Poset

Face = tuple[int, ...]


def as_face(face: Iterable[int]) -> Face:
    return tuple(sorted(face))


@dataclass(frozen=True)
class SimplicialComplex:
    """Faces are sorted vertex tuples; the empty face is not stored."""

    faces: tuple[Face, ...]

    @classmethod
    def from_faces(cls, faces: Iterable[Iterable[int]]) -> "SimplicialComplex":
        uniq = {as_face(f) for f in faces}
        return cls(tuple(sorted(uniq, key=lambda f: (len(f), f))))

    @property
    def dim(self) -> int:
        return max((len(f) - 1 for f in self.faces), default=-1)

    @cached_property
    def _by_dim(self) -> dict[int, tuple[Face, ...]]:
        out: dict[int, list[Face]] = {}
        for f in self.faces:
            out.setdefault(len(f) - 1, []).append(f)
        return {k: tuple(v) for k, v in out.items()}

    def faces_of_dim(self, k: int) -> tuple[Face, ...]:
        return self._by_dim.get(k, ())

    @cached_property
    def face_set(self) -> frozenset[Face]:
        return frozenset(self.faces)

    def boundary_matrix(self, k: int) -> list[list[int]]:
        """Rows are (k-1)-faces, columns k-faces, with signs (-1)^i."""
        rows = {f: r for r, f in enumerate(self.faces_of_dim(k - 1))}
        cols = self.faces_of_dim(k)
        m = [[0] * len(cols) for _ in rows]
        for c, f in enumerate(cols):
            for i in range(len(f)):
                m[rows[f[:i] + f[i + 1 :]]][c] = (-1) ** i
        return m

    def euler_characteristic(self) -> int:
        return sum((-1) ** (len(f) - 1) for f in self.faces)

    def to_json(self) -> dict:
        return {"dim": self.dim, "faces": [list(self.faces_of_dim(k)) for k in range(self.dim + 1)]}


def order_complex(p: Poset) -> SimplicialComplex:
    """Simplicial complex whose faces are the nonempty chains of ``p``."""
    faces: list[Face] = []

    def extend(chain: tuple[int, ...]) -> None:
        faces.append(chain)
        for j in sorted(p.up(chain[-1])):
            extend(chain + (j,))

    for i in p.elements:
        extend((i,))
    return SimplicialComplex.from_faces(faces)


def betti(k: SimplicialComplex, max_degree: int | None = None) -> list[int]:
    """Rational Betti numbers ``b_0..b_max_degree`` (default ``max(dim, 2)``)."""
    top = max(k.dim, 2) if max_degree is None else max_degree
    ranks = {}
    for d in range(1, top + 2):
        m = k.boundary_matrix(d) if k.faces_of_dim(d) else []
        ranks[d] = bareiss_rank(m) if m and m[0] else 0
    return [len(k.faces_of_dim(d)) - (ranks[d] if d > 0 else 0) - ranks[d + 1] for d in range(top + 1)]


# discrete Morse theory -----------------------------------------------------------------


@dataclass(frozen=True)
class MorseReport:
    is_morse: bool
    critical: tuple[Face, ...]
    violations: tuple[tuple[Face, str], ...] = field(default=())

    def to_json(self) -> dict:
        return {
            "is_morse": self.is_morse,
            "critical": [list(f) for f in self.critical],
            "violations": [[list(f), why] for f, why in self.violations],
        }


def verify_morse(k: SimplicialComplex, f: Mapping[Iterable[int], Fraction | int]) -> MorseReport:
    """Check the discrete Morse conditions and list the critical faces.

    Each face may have at most one coface of one dimension higher with value
    not above its own, and at most one facet with value not below its own;
    critical faces have neither.
    """
    values = {as_face(face): Fraction(v) for face, v in f.items()}
    missing = [face for face in k.faces if face not in values]
    if missing:
        raise ValueError(f"assignment misses faces, e.g. {missing[0]}")
    extra = [face for face in values if face not in k.face_set]
    if extra:
        raise ValueError(f"assignment has faces outside the complex, e.g. {extra[0]}")
    cofaces: dict[Face, list[Face]] = {face: [] for face in k.faces}
    for face in k.faces:
        for i in range(len(face)):
            if len(face) > 1:
                cofaces[face[:i] + face[i + 1 :]].append(face)
    critical = []
    violations = []
    for face in k.faces:
        v = values[face]
        up = sum(1 for c in cofaces[face] if values[c] <= v)
        down = sum(1 for i in range(len(face)) if len(face) > 1 and values[face[:i] + face[i + 1 :]] >= v)
        if up > 1:
            violations.append((face, "several cofaces with smaller or equal value"))
        if down > 1:
            violations.append((face, "several facets with larger or equal value"))
        if up == 0 and down == 0:
            critical.append(face)
    return MorseReport(not violations, tuple(critical), tuple(violations))


# simplices of the block complex in terms of the roles c, b, a1, a2
_SIMPLICES = {
    "v1": ("c",),
    "v2": ("a1",),
    "v3": ("b",),
    "v4": ("a2",),
    "e1": ("c", "a1"),
    "e2": ("c", "b"),
    "e3": ("c", "a2"),
    "e4": ("a1", "b"),
    "e5": ("b", "a2"),
    "f1": ("c", "a1", "b"),
    "f2": ("c", "b", "a2"),
}
_SWAP = {"v2": "v4", "v4": "v2", "e1": "e3", "e3": "e1", "e4": "e5", "e5": "e4", "f1": "f2", "f2": "f1"}

BASE_ORDER = ("v1", "e1", "v2", "e2", "v3", "e3", "v4", "f1", "e4", "f2", "e5")
EXTENSIONS: dict[str, tuple[str, ...]] = {
    "C": BASE_ORDER[1:],
    "A1": ("e1", "v1", "e4", "v3", "f1", "e2", "e5", "v4", "f2", "e3"),
    "D1": ("e4", "v3", "f1", "e2", "e3", "v4", "f2", "e5"),
    "F": ("e2", "v3", "f1", "e4", "f2", "e5"),
}
EXTENSIONS["A2"] = tuple(_SWAP.get(s, s) for s in EXTENSIONS["A1"])
EXTENSIONS["D2"] = tuple(_SWAP.get(s, s) for s in EXTENSIONS["D1"])


def _block_faces(roles: Mapping[str, int], names: Iterable[str]) -> list[Face]:
    return [as_face(roles[r] for r in _SIMPLICES[s]) for s in names]


def example_morse_assignment(block: str = "P112") -> tuple[SimplicialComplex, dict[Face, int]]:
    """The base Morse function on the order complex of a single block."""
    from .frobenius import BLOCKS

    p, roles = BLOCKS[block]
    k = order_complex(p)
    return k, dict(zip(_block_faces(roles, BASE_ORDER), range(len(BASE_ORDER))))


def build_glued_morse(construction: Construction | tuple[GluingStep, ...]) -> tuple[Poset, SimplicialComplex, dict[Face, int]]:
    """Extend the base Morse function along a gluing trace.

    Each index-preserving rule identifies a vertex or edges of the new block
    with faces already present; the remaining simplices of the block receive
    fresh values above the current maximum in a fixed order.
    """
    steps = construction.steps if isinstance(construction, Construction) else tuple(construction)
    history = replay(steps)
    _, f = example_morse_assignment(steps[0].block)
    for step, (_, res) in zip(steps[1:], history[1:]):
        if RULES[step.rule].delta != 0 or step.rule not in EXTENSIONS:
            raise ValueError(f"rule {step.rule} does not preserve the Frobenius property")
        f = {as_face(res.q_map[v] for v in face): val for face, val in f.items()}
        top = max(f.values())
        for off, face in enumerate(_block_faces(res.roles, EXTENSIONS[step.rule]), start=1):
            if face in f:
                raise AssertionError(f"face {face} was already assigned")
            f[face] = top + off
    final = history[-1][0]
    return final, order_complex(final), f
