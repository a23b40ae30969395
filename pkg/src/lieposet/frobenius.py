"""Frobenius tests, combinatorial characterizations and the gluing generator."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .algebra import build_algebra
from .canonical import canonical_key
from .index import EXACT, IndexCertificate, IndexConfig, formula_index, index
from .poset import Poset, PosetError, _close, complete_poset, glue_with_maps
from .signed import SignedPoset

FROBENIUS = "frobenius"
NOT_FROBENIUS = "not_frobenius"
UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class FrobeniusVerdict:
    verdict: str
    variant: str
    certificate: IndexCertificate

    def __bool__(self) -> bool:
        return self.verdict == FROBENIUS

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "variant": self.variant, "certificate": self.certificate.to_json()}


def is_frobenius(p: Poset | SignedPoset, variant: str = "A", config: IndexConfig | None = None) -> FrobeniusVerdict:
    """Certified answer to "is the index zero?" for the algebra of ``p``."""
    cert = index(build_algebra(p, variant), config)
    if cert.upper == 0:
        verdict = FROBENIUS
    elif cert.lower > 0:
        verdict = NOT_FROBENIUS
    else:
        verdict = UNDETERMINED
    return FrobeniusVerdict(verdict, variant, cert)


# height at most one -------------------------------------------------------------


def characterize_h01(p: Poset) -> bool:
    """For height <= 1: Frobenius exactly when the Hasse diagram is a tree."""
    if p.height > 1:
        raise PosetError("characterize_h01 needs height at most one")
    return p.is_connected and len(p.covers) == p.n - 1


# height two -----------------------------------------------------------------------


@dataclass(frozen=True)
class PureComponent:
    """A pure height-two piece; new label ``k`` is original label ``labels[k-1]``."""

    poset: Poset
    labels: tuple[int, ...]


@dataclass(frozen=True)
class PureDecomposition:
    min_max_covers: tuple[tuple[int, int], ...]
    components: tuple[PureComponent, ...]
    singletons: tuple[int, ...]

    def component_of(self) -> dict[int, int]:
        """Map each element to a node id: components first, then singletons."""
        out = {}
        for k, comp in enumerate(self.components):
            for x in comp.labels:
                out[x] = k
        for k, s in enumerate(self.singletons):
            out[s] = len(self.components) + k
        return out


def decompose_pure(p: Poset) -> PureDecomposition:
    """Delete covers from a minimal to a maximal element and split what is left."""
    if p.height != 2:
        raise PosetError("decompose_pure needs height exactly two")
    mins, maxs = set(p.minimal), set(p.maximal)
    removed = tuple(c for c in p.covers if c[0] in mins and c[1] in maxs)
    kept = [c for c in p.covers if c not in set(removed)]
    parent = {x: x for x in p.elements}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in kept:
        parent[find(a)] = find(b)
    groups: dict[int, list[int]] = {}
    for x in p.elements:
        groups.setdefault(find(x), []).append(x)
    comps = []
    singles = []
    for members in sorted(groups.values()):
        if len(members) == 1:
            singles.append(members[0])
            continue
        pos = {x: k + 1 for k, x in enumerate(members)}
        sub = Poset.from_relations(len(members), [(pos[a], pos[b]) for a, b in kept if a in pos])
        comps.append(PureComponent(sub, tuple(members)))
    return PureDecomposition(removed, tuple(comps), tuple(singles))


@dataclass(frozen=True)
class NonPureConditions:
    """The four structural conditions for a height-two poset; each field holds witnesses of failure."""

    non_frobenius_components: tuple[int, ...] = ()
    internal_covers: tuple[tuple[int, int], ...] = ()
    repeated_covers: tuple[tuple[int, int], ...] = ()
    tree_failure: str | None = None
    decomposition: PureDecomposition | None = field(default=None, compare=False, repr=False)

    @property
    def holds(self) -> bool:
        return not (self.non_frobenius_components or self.internal_covers or self.repeated_covers or self.tree_failure)

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "non_frobenius_components": list(self.non_frobenius_components),
            "internal_covers": [list(c) for c in self.internal_covers],
            "repeated_covers": [list(c) for c in self.repeated_covers],
            "tree_failure": self.tree_failure,
        }


def check_nonpure_conditions(p: Poset) -> NonPureConditions:
    """Evaluate the four conditions on a height-two poset.

    (i) every pure component is Frobenius (decided by the closed-form index),
    (ii) no minimal-to-maximal cover joins two elements of one component,
    (iii) such covers attach a given element to at most one element of a given
    component, and (iv) contracting the components leaves a tree.
    """
    dec = decompose_pure(p)
    node = dec.component_of()
    bad_comp = tuple(k for k, c in enumerate(dec.components) if formula_index(c.poset) != 0)
    internal = tuple((a, b) for a, b in dec.min_max_covers if node[a] == node[b] and node[a] < len(dec.components))
    repeated = []
    seen: dict[tuple[int, int], int] = {}
    for a, b in dec.min_max_covers:
        if node[a] == node[b]:
            continue
        for elem, other in ((a, b), (b, a)):
            key = (elem, node[other])
            if key in seen and node[other] < len(dec.components):
                repeated.append((a, b))
            seen[key] = 1
    n_nodes = len(dec.components) + len(dec.singletons)
    edges = [(node[a], node[b]) for a, b in dec.min_max_covers]
    failure = None
    if any(u == v for u, v in edges):
        failure = "loop"
    elif len({frozenset(e) for e in edges}) != len(edges):
        failure = "multiple edge"
    elif len(edges) != n_nodes - 1:
        failure = "edge count"
    else:
        parent = list(range(n_nodes))

        def find(x: int) -> int:
            while parent[x] != x:
                x = parent[x]
            return x

        for u, v in edges:
            ru, rv = find(u), find(v)
            if ru == rv:
                failure = "cycle"
                break
            parent[ru] = rv
    return NonPureConditions(bad_comp, internal, tuple(repeated), failure, dec)


def characterize(p: Poset) -> bool:
    """Combinatorial Frobenius test for height at most two (no linear algebra)."""
    if p.height <= 1:
        return characterize_h01(p)
    if p.height == 2:
        return check_nonpure_conditions(p).holds
    raise PosetError("no combinatorial characterization above height two")


# gluing rules -----------------------------------------------------------------------

FRESH, ANY, RELATED, UNRELATED = "fresh", "any", "related", "unrelated"


@dataclass(frozen=True)
class GluingRule:
    """How a block ``c, b, a1, a2`` is attached to elements ``x, y, z`` of ``Q``.

    ``c`` says whether ``c`` is identified with ``x``; ``a1``/``a2`` describe
    ``y``/``z``: not identified, identified with no side condition, or
    identified with an element that is (or is not) comparable to ``x``.
    """

    tag: str
    c: bool
    a1: str
    a2: str
    delta: int


RULES: dict[str, GluingRule] = {
    r.tag: r
    for r in [
        GluingRule("A1", False, ANY, FRESH, 0),
        GluingRule("A2", False, FRESH, ANY, 0),
        GluingRule("B", False, ANY, ANY, 1),
        GluingRule("C", True, FRESH, FRESH, 0),
        GluingRule("D1", True, RELATED, FRESH, 0),
        GluingRule("D2", True, FRESH, RELATED, 0),
        GluingRule("E1", True, UNRELATED, FRESH, 1),
        GluingRule("E2", True, FRESH, UNRELATED, 1),
        GluingRule("F", True, RELATED, RELATED, 0),
        GluingRule("G1", True, RELATED, UNRELATED, 1),
        GluingRule("G2", True, UNRELATED, RELATED, 1),
        GluingRule("H", True, UNRELATED, UNRELATED, 2),
    ]
}
FROBENIUS_RULES = tuple(t for t, r in RULES.items() if r.delta == 0)

# role -> label in the block poset
BLOCKS: dict[str, tuple[Poset, dict[str, int]]] = {
    "P112": (complete_poset([1, 1, 2]), {"c": 1, "b": 2, "a1": 3, "a2": 4}),
    "P211": (complete_poset([2, 1, 1]), {"a1": 1, "a2": 2, "b": 3, "c": 4}),
}


@dataclass(frozen=True)
class Attachment:
    x: int | None = None
    y: int | None = None
    z: int | None = None

    def to_json(self) -> list:
        return [self.x, self.y, self.z]


def _check_q(q: Poset) -> None:
    if q.height != 2 or not q.is_pure:
        raise PosetError("gluing rules apply to pure posets of height two")


def _sides(q: Poset, block: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Candidates for x (same type as c) and for y, z (same type as a1, a2)."""
    if block == "P112":
        return q.minimal, q.maximal
    if block == "P211":
        return q.maximal, q.minimal
    raise PosetError(f"unknown block {block!r}")


def _fits(q: Poset, state: str, x: int | None, w: int | None) -> bool:
    if state == FRESH:
        return w is None
    if w is None:
        return False
    if state == ANY:
        return True
    related = q.comparable(x, w)
    return related if state == RELATED else not related


def valid_attachments(q: Poset, block: str, rule: str) -> list[Attachment]:
    _check_q(q)
    r = RULES[rule]
    xs, ys = _sides(q, block)
    out = []
    for x in xs if r.c else (None,):
        for y in ys if r.a1 != FRESH else (None,):
            for z in ys if r.a2 != FRESH else (None,):
                if y is not None and y == z:
                    continue
                if r.c and not (_fits(q, r.a1, x, y) and _fits(q, r.a2, x, z)):
                    continue
                out.append(Attachment(x, y, z))
    return out


@dataclass(frozen=True)
class GluingResult:
    poset: Poset
    delta: int
    q_map: dict[int, int]
    roles: dict[str, int]  # block role -> label in the result


def apply_rule(q: Poset, block: str, rule: str, attachment: Attachment) -> GluingResult:
    """Glue a block onto ``q`` following ``rule``; ``delta`` is the predicted index change."""
    if rule not in RULES:
        raise PosetError(f"unknown rule {rule!r}")
    if attachment not in valid_attachments(q, block, rule):
        raise PosetError(f"attachment {attachment} does not satisfy rule {rule} for block {block}")
    bp, roles = BLOCKS[block]
    pairs = [(w, roles[role]) for w, role in ((attachment.x, "c"), (attachment.y, "a1"), (attachment.z, "a2")) if w is not None]
    glued, q_map, b_map = glue_with_maps(q, bp, pairs)
    return GluingResult(glued, RULES[rule].delta, q_map, {role: b_map[lab] for role, lab in roles.items()})


# generator ------------------------------------------------------------------------------


@dataclass(frozen=True)
class GluingStep:
    block: str
    rule: str | None = None
    attachment: Attachment | None = None

    def to_json(self) -> dict:
        out: dict = {"block": self.block}
        if self.rule is not None:
            out["rule"] = self.rule
            out["attachment"] = self.attachment.to_json()
        return out

    @classmethod
    def from_json(cls, data: dict) -> "GluingStep":
        att = data.get("attachment")
        return cls(data["block"], data.get("rule"), Attachment(*att) if att is not None else None)


@dataclass(frozen=True)
class Construction:
    poset: Poset
    steps: tuple[GluingStep, ...]

    def to_json(self) -> dict:
        return {"poset": self.poset.to_json(), "steps": [s.to_json() for s in self.steps]}


def replay(steps: Sequence[GluingStep]) -> list[tuple[Poset, GluingResult | None]]:
    """Rebuild every intermediate poset of a gluing trace."""
    if not steps or steps[0].rule is not None:
        raise PosetError("a trace starts with a bare block")
    if steps[0].block not in BLOCKS:
        raise PosetError(f"unknown block {steps[0].block!r}")
    history: list[tuple[Poset, GluingResult | None]] = [(BLOCKS[steps[0].block][0], None)]
    for step in steps[1:]:
        if step.rule is None or step.attachment is None:
            raise PosetError("every later step needs a rule and an attachment")
        res = apply_rule(history[-1][0], step.block, step.rule, step.attachment)
        history.append((res.poset, res))
    return history


def generate_constructions(
    blocks: int,
    rules: Iterable[str] = FROBENIUS_RULES,
    mode: str = "frobenius",
    certify: bool = True,
    config: IndexConfig | None = None,
) -> Iterator[Construction]:
    """All posets built from at most ``blocks`` blocks, one per isomorphism class.

    In ``"frobenius"`` mode only index-preserving rules are accepted and, with
    ``certify``, every emitted poset is checked to have certified index zero.
    """
    rules = tuple(rules)
    for r in rules:
        if r not in RULES:
            raise PosetError(f"unknown rule {r!r}")
    if mode not in ("frobenius", "exploratory"):
        raise ValueError("mode is 'frobenius' or 'exploratory'")
    if mode == "frobenius" and any(RULES[r].delta for r in rules):
        raise PosetError("frobenius mode only accepts index-preserving rules")
    if blocks < 1:
        return
    seen: set = set()
    level: list[Construction] = []
    for name in BLOCKS:
        c = Construction(BLOCKS[name][0], (GluingStep(name),))
        key = canonical_key(c.poset)
        if key not in seen:
            seen.add(key)
            level.append(c)
    for k in range(1, blocks + 1):
        for c in level:
            if mode == "frobenius" and certify:
                cert = index(build_algebra(c.poset), config)
                if not (cert.status == EXACT and cert.lower == 0):
                    raise ArithmeticError(f"generated poset {c.poset} is not certified Frobenius")
            yield c
        if k == blocks:
            break
        nxt: list[Construction] = []
        for c in level:
            for name in BLOCKS:
                for rule in rules:
                    for att in valid_attachments(c.poset, name, rule):
                        res = apply_rule(c.poset, name, rule, att)
                        key = canonical_key(res.poset)
                        if key in seen:
                            continue
                        seen.add(key)
                        nxt.append(Construction(res.poset, c.steps + (GluingStep(name, rule, att),)))
        level = nxt


def iterate_traces(blocks: int, rules: Iterable[str] = FROBENIUS_RULES) -> Iterator[tuple[GluingStep, ...]]:
    """Every gluing trace with at most ``blocks`` blocks, without isomorphism pruning."""
    rules = tuple(rules)
    stack: list[tuple[Poset, tuple[GluingStep, ...]]] = [(BLOCKS[name][0], (GluingStep(name),)) for name in BLOCKS]
    while stack:
        q, steps = stack.pop()
        yield steps
        if len(steps) == blocks:
            continue
        for name in BLOCKS:
            for rule in rules:
                for att in valid_attachments(q, name, rule):
                    res = apply_rule(q, name, rule, att)
                    stack.append((res.poset, steps + (GluingStep(name, rule, att),)))


def generate_pure_frobenius(blocks: int, rules: Iterable[str] = FROBENIUS_RULES, mode: str = "frobenius", **kw) -> Iterator[Poset]:
    for c in generate_constructions(blocks, rules, mode, **kw):
        yield c.poset
