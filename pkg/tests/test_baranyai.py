import math

import pytest

from baranyai_ldc.baranyai import (
    BaranyaiPartition,
    InvariantViolation,
    _check_stage_invariant,
    baranyai_flow,
    factorize,
    partition_from_classes,
    relabel,
    round_robin_factorization,
    verify_partition,
)
from baranyai_ldc.errors import DivisibilityError, ParseError, ValidationError

from conftest import PARTITION_6_2

EX1_H1 = frozenset({frozenset({1, 2}), frozenset({3, 4}), frozenset({5, 6})})


def test_reference_partition_is_valid(partition62):
    assert verify_partition(partition62).valid


def test_duplicate_block_is_caught():
    classes = [list(c) for c in PARTITION_6_2]
    classes[0][0] = (1, 3)  # copy of a block of H_2
    verdict = verify_partition(partition_from_classes(6, 2, classes))
    assert not verdict.valid
    text = "\n".join(verdict.violations)
    assert "subset (1, 3) appears 2 times" in text
    assert "subset (1, 2) missing" in text
    assert "class 0: vertex 2 covered 0 times" in text
    assert "class 0: vertex 3 covered 2 times" in text


def test_wrong_class_count():
    verdict = verify_partition(partition_from_classes(6, 2, PARTITION_6_2[:4]))
    assert any("class count 4" in v for v in verdict.violations)


@pytest.mark.parametrize("m", [2, 4, 6, 8, 10, 12, 14, 16, 18, 20])
def test_round_robin(m):
    p = round_robin_factorization(m)
    assert p.k == m - 1
    assert verify_partition(p).valid
    assert all(any(m in b for b in cls) for cls in p.classes)
    assert round_robin_factorization(m) == p


def test_round_robin_examples():
    assert EX1_H1 in round_robin_factorization(6).as_sets()
    assert round_robin_factorization(2).classes == (((1, 2),),)
    p = round_robin_factorization(12)
    assert p.k == 11 and all(len(c) == 6 for c in p.classes)
    with pytest.raises(DivisibilityError):
        round_robin_factorization(7)


def cases(max_m):
    return [(m, u) for m in range(1, max_m + 1) for u in range(1, m + 1) if m % u == 0]


@pytest.mark.parametrize("m, u", cases(12))
def test_flow_valid_with_stage_invariant(m, u):
    p = baranyai_flow(m, u, check_invariant=True)
    assert p.k == math.comb(m - 1, u - 1)
    assert verify_partition(p).valid


@pytest.mark.parametrize("m, u, k", [(6, 2, 5), (9, 3, 28), (8, 4, 35), (6, 6, 1)])
def test_flow_class_counts(m, u, k):
    p = baranyai_flow(m, u)
    assert p.k == k
    assert verify_partition(p).valid


def test_flow_trivial_single_edge():
    assert baranyai_flow(5, 5).classes == (((1, 2, 3, 4, 5),),)


@pytest.mark.parametrize("m", range(2, 21, 2))
def test_flow_and_round_robin_agree_on_validity(m):
    assert verify_partition(baranyai_flow(m, 2)).valid
    assert verify_partition(round_robin_factorization(m)).valid


def test_flow_rejects_non_divisible():
    with pytest.raises(DivisibilityError):
        baranyai_flow(7, 2)
    with pytest.raises(ValidationError):
        baranyai_flow(3, 4)


def test_stage_invariant_detects_corruption():
    parts = [[0b11, 0b00]] * 3
    with pytest.raises(InvariantViolation):
        _check_stage_invariant(parts, 4, 2, 2)


def test_relabel(partition62):
    assert relabel(partition62, {v: v for v in range(1, 7)}) == partition62
    shifted = relabel(partition62, {v: v + 1 for v in range(1, 7)})
    assert shifted.vertex_set == (2, 3, 4, 5, 6, 7)
    assert verify_partition(shifted).valid
    swapped = relabel(partition62, {1: 2, 2: 1, 3: 3, 4: 4, 5: 5, 6: 6})
    assert EX1_H1 in swapped.as_sets()
    assert verify_partition(swapped).valid
    with pytest.raises(ValidationError):
        relabel(partition62, {1: 1, 2: 1, 3: 3, 4: 4, 5: 5, 6: 6})
    with pytest.raises(ValidationError):
        relabel(partition62, {1: 1})


def test_verifier_rejects_wrong_label_set(partition62):
    shifted = relabel(partition62, {v: v + 1 for v in range(1, 7)})
    forged = BaranyaiPartition(6, 2, shifted.classes)  # claims labels 1..6
    assert not verify_partition(forged).valid


def test_text_round_trip(partition62):
    text = partition62.to_text()
    assert text.splitlines()[0] == "baranyai 6 2 5"
    assert "1 2|3 4|5 6" in text.splitlines()
    assert BaranyaiPartition.from_text(text) == partition62
    p = baranyai_flow(9, 3)
    assert BaranyaiPartition.from_text(p.to_text()) == p
    shifted = relabel(partition62, {v: v + 1 for v in range(1, 7)})
    assert BaranyaiPartition.from_text(shifted.to_text()) == shifted


@pytest.mark.parametrize("text, line", [
    ("", 1),
    ("partition 6 2 5\n", 1),
    ("baranyai 6 2 x\n", 1),
    ("baranyai 6 2 2\n1 2|3 4|5 6\n", 2),
    ("baranyai 4 2 1\n1 2|3 x\n", 2),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        BaranyaiPartition.from_text(text)
    assert exc.value.lineno == line


def test_factorize_dispatch():
    assert factorize(6, 2) == round_robin_factorization(6)
    assert verify_partition(factorize(9, 3, "flow")).valid
    assert verify_partition(factorize(6, 3, "exactcover")).valid
    with pytest.raises(ValidationError):
        factorize(9, 3, "roundrobin")
    with pytest.raises(ValidationError):
        factorize(6, 2, "magic")
