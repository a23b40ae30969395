import itertools
import json

import pytest

from lieposet.atlas import enumerate_posets, order_ideals, sweep
from lieposet.canonical import canonical_key
from lieposet.frobenius import FROBENIUS
from lieposet.index import IndexConfig
from lieposet.poset import CycleError, Poset, complete_poset

CFG = IndexConfig(seed=11)

# OEIS A000112 (unlabeled posets) and A006455 (naturally labeled posets)
UNLABELED = [1, 2, 5, 16, 63, 318]
NATURAL = [1, 2, 7, 40, 357]


@pytest.mark.parametrize("n", range(1, 7))
def test_unlabeled_counts(n):
    assert sum(1 for _ in enumerate_posets(n)) == UNLABELED[n - 1]


@pytest.mark.parametrize("n", range(1, 6))
def test_naturally_labeled_counts(n):
    assert sum(1 for _ in enumerate_posets(n, dedup=False)) == NATURAL[n - 1]


def brute_force_classes(n: int) -> int:
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    keys = set()
    for mask in range(1 << len(pairs)):
        chosen = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        keys.add(canonical_key(Poset.from_relations(n, chosen)))
    return len(keys)


@pytest.mark.parametrize("n", range(1, 5))
def test_counts_against_brute_force(n):
    assert brute_force_classes(n) == UNLABELED[n - 1]


@pytest.mark.parametrize("n", range(1, 7))
def test_height_filter_consistent(n):
    filtered = [p for p in enumerate_posets(n) if p.height <= 2]
    assert list(enumerate_posets(n, (0, 1, 2))) == filtered


def test_order_ideals_of_p112():
    ideals = order_ideals(complete_poset([1, 1, 2]))
    assert len(ideals) == 6
    assert frozenset() in ideals


def test_large_enumeration_guard():
    with pytest.raises(ValueError):
        next(enumerate_posets(8))


def test_sweep_writes_jsonl_and_is_ordered(tmp_path):
    out = tmp_path / "atlas.jsonl"
    rep = sweep(4, config=CFG, out=out)
    lines = out.read_text().splitlines()
    assert len(lines) == len(rep.records) == sum(UNLABELED[:4])
    assert rep.ok
    sizes = [json.loads(line)["poset"]["n"] for line in lines]
    assert sizes == sorted(sizes)
    for rec in rep.records:
        if rec.frobenius == FROBENIUS:
            assert rec.certificate["status"] == "exact" and rec.certificate["lower"] == 0


def test_sweep_rejects_unknown_check():
    with pytest.raises(ValueError):
        sweep(2, checks=("nonsense",))


def test_cycle_error_names_cycle():
    with pytest.raises(CycleError) as exc:
        Poset.from_relations(2, [(1, 2), (2, 1)])
    assert "1" in str(exc.value) and "2" in str(exc.value)


def test_permutation_invariance_of_enumeration():
    keys = {canonical_key(p) for p in enumerate_posets(4)}
    for p in enumerate_posets(4):
        for perm in itertools.permutations(range(1, 5)):
            q = Poset.from_relations(4, [(perm[i - 1], perm[j - 1]) for i, j in p.relations])
            assert canonical_key(q) in keys
