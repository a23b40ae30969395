import pytest
from hypothesis import given, settings

from lieposet.algebra import build_type_a
from lieposet.atlas import enumerate_posets
from lieposet.canonical import canonical_key
from lieposet.frobenius import (
    BLOCKS,
    FROBENIUS,
    FROBENIUS_RULES,
    RULES,
    Attachment,
    GluingStep,
    apply_rule,
    check_nonpure_conditions,
    decompose_pure,
    generate_constructions,
    is_frobenius,
    iterate_traces,
    replay,
    valid_attachments,
)
from lieposet.index import EXACT, IndexConfig, formula_index, index
from lieposet.poset import Poset, PosetError, complete_poset, cone, fixtures, statistics

from test_poset import random_posets

CFG = IndexConfig(seed=3)

# P(1,1,2) on 1..4 and P(2,1,1) on 5..8, joined by min-to-max covers
TWO_BLOCKS = [(1, 2), (2, 3), (2, 4), (5, 7), (6, 7), (7, 8)]


def test_rule_table():
    deltas = {tag: r.delta for tag, r in RULES.items()}
    assert {t for t, d in deltas.items() if d == 0} == {"A1", "A2", "C", "D1", "D2", "F"}
    assert {t for t, d in deltas.items() if d == 1} == {"B", "E1", "E2", "G1", "G2"}
    assert deltas["H"] == 2
    assert set(FROBENIUS_RULES) == {"A1", "A2", "C", "D1", "D2", "F"}


def test_single_bridge_is_frobenius():
    p = Poset.from_relations(8, TWO_BLOCKS + [(1, 8)])
    cond = check_nonpure_conditions(p)
    assert cond.holds
    assert len(cond.decomposition.components) == 2
    assert index(build_type_a(p), CFG).index == 0


def test_second_bridge_breaks_tree_and_raises_index():
    p = Poset.from_relations(8, TWO_BLOCKS + [(1, 8), (5, 3)])
    cond = check_nonpure_conditions(p)
    assert cond.tree_failure is not None
    assert index(build_type_a(p), CFG).index == 1 == formula_index(p)


def test_internal_cover_detected():
    p = Poset.from_relations(7, [(1, 2), (2, 3), (2, 4), (5, 3)] + [(5, 6), (6, 7), (1, 7)])
    cond = check_nonpure_conditions(p)
    assert not cond.holds


@given(random_posets(7))
@settings(max_examples=150, deadline=None)
def test_decomposition_reassembles(p):
    if p.height != 2:
        with pytest.raises(PosetError):
            decompose_pure(p)
        return
    dec = decompose_pure(p)
    covers = set(dec.min_max_covers)
    covered = set(dec.singletons)
    for comp in dec.components:
        assert comp.poset.is_pure and comp.poset.height == 2
        covers |= {(comp.labels[a - 1], comp.labels[b - 1]) for a, b in comp.poset.covers}
        covered |= set(comp.labels)
    assert covers == set(p.covers)
    assert covered == set(p.elements)


def test_frobenius_implies_connected():
    for n in range(1, 6):
        for p in enumerate_posets(n):
            v = is_frobenius(p, "A", CFG)
            assert v.certificate.status == EXACT
            if v.verdict == FROBENIUS:
                assert p.is_connected


def test_cones_of_frobenius_pure_posets_are_blocks():
    shapes = {canonical_key(complete_poset([1, 1, 2])), canonical_key(complete_poset([2, 1, 1]))}
    seen = 0
    for n in range(4, 8):
        for p in enumerate_posets(n, 2):
            if not p.is_pure or is_frobenius(p, "A", CFG).verdict != FROBENIUS:
                continue
            seen += 1
            for i in p.elements:
                if i not in p.extremal:
                    assert canonical_key(cone(p, i)) in shapes
    assert seen > 5


def test_rule_b_bowtie():
    q = complete_poset([1, 1, 2])
    att = Attachment(None, 3, 4)
    res = apply_rule(q, "P112", "B", att)
    assert res.poset.n == 6
    assert index(build_type_a(res.poset), CFG).index == 1


def test_invalid_attachment_rejected():
    q = complete_poset([1, 1, 2])
    with pytest.raises(PosetError):
        apply_rule(q, "P112", "C", Attachment(3, None, None))
    with pytest.raises(PosetError):
        valid_attachments(complete_poset([1, 2]), "P112", "C")


@pytest.mark.parametrize("rule", sorted(RULES))
def test_every_rule_has_an_attachment(rule):
    # pure and connected, with both related and unrelated min/max pairs
    q = Poset.from_relations(7, [(1, 3), (2, 3), (2, 4), (3, 5), (4, 6), (4, 7)])
    assert q.is_pure and q.is_connected
    found = any(valid_attachments(q, b, rule) for b in BLOCKS)
    assert found


def test_generator_emits_certified_distinct_posets():
    items = list(generate_constructions(3, config=CFG))
    keys = [canonical_key(c.poset) for c in items]
    assert len(keys) == len(set(keys))
    for c in items:
        assert c.poset.is_pure and c.poset.height == 2
        assert replay(c.steps)[-1][0] == c.poset
        assert tuple(GluingStep.from_json(s.to_json()) for s in c.steps) == c.steps


def test_generator_modes():
    with pytest.raises(PosetError):
        list(generate_constructions(2, rules=("B",)))
    explored = list(generate_constructions(2, rules=("B", "H"), mode="exploratory", certify=False))
    assert all(statistics(c.poset).n >= 4 for c in explored)
    assert any(formula_index(c.poset) > 0 for c in explored)


def test_iterate_traces_counts_without_dedup():
    traces = list(iterate_traces(2))
    assert len(traces) >= len(list(generate_constructions(2, certify=False)))
    assert all(len(t) <= 2 for t in traces)


def test_signed_verdict_names_variant():
    v = is_frobenius(fixtures()["hexagon_BCD"], "D", CFG)
    assert v.variant == "D" and v.verdict == FROBENIUS
