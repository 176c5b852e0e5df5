from math import comb

import pytest

from gqc.errors import DomainError, PartitionError, ResourceError
from gqc.partitions import Bipartition, cardinality, enumerate_bipartitions

GOLDEN_4 = ["0|1,2,3", "0,1|2,3", "0,2|1,3", "0,3|1,2", "0,1,2|3", "0,1,3|2", "0,2,3|1"]


def test_n2():
    assert [c.label() for c in enumerate_bipartitions(2)] == ["0|1"]


def test_n3():
    cuts = enumerate_bipartitions(3)
    assert [(c.block_s, c.complement) for c in cuts] == [((0,), (1, 2)), ((0, 1), (2,)), ((0, 2), (1,))]


def test_golden_order_n4():
    assert [c.label() for c in enumerate_bipartitions(4)] == GOLDEN_4


@pytest.mark.parametrize("n,expected", [(2, 1), (3, 3), (4, 7), (5, 15)])
def test_cardinality_examples(n, expected):
    assert cardinality(n) == expected


@pytest.mark.parametrize("n", range(2, 15))
def test_cardinality_matches_enumeration(n):
    cuts = enumerate_bipartitions(n)
    assert cardinality(n) == 2 ** (n - 1) - 1 == len(cuts) == len(set(cuts))
    if n % 2:
        assert cardinality(n) == sum(comb(n, m) for m in range(1, (n - 1) // 2 + 1))


@pytest.mark.parametrize("n", range(3, 9))
def test_every_party_in_some_block(n):
    seen = set()
    for c in enumerate_bipartitions(n):
        seen.update(c.block_s)
    assert seen == set(range(n))


def test_canonical_form_contains_zero():
    assert all(0 in c.block_s for c in enumerate_bipartitions(6))
    assert Bipartition.from_block({1, 2}, 3) == Bipartition((0,), 3)


def test_errors():
    with pytest.raises(DomainError):
        enumerate_bipartitions(1)
    with pytest.raises(ResourceError):
        enumerate_bipartitions(17)
    with pytest.raises(ResourceError):
        enumerate_bipartitions(15, max_parties=14)
    with pytest.raises(DomainError):
        cardinality(1)
    with pytest.raises(PartitionError):
        Bipartition((1,), 3)
    with pytest.raises(PartitionError):
        Bipartition((0, 1, 2), 3)


@pytest.mark.parametrize("text", ["0|1,2", "1,2|0", "0,2|1,3"])
def test_parse_round_trip(text):
    cut = Bipartition.parse(text)
    assert Bipartition.parse(cut.label()) == cut


@pytest.mark.parametrize("bad", ["0,1,2", "0|0,1", "0|2"])
def test_parse_rejects(bad):
    with pytest.raises(PartitionError):
        Bipartition.parse(bad)


def test_block_dims():
    assert Bipartition((0, 2), 3).block_dims((2, 3, 5)) == (10, 3)
