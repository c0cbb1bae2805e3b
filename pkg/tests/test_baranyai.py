"""Parallel-class table tests: exact cover, counts, canonical first class,
file cache round-trip, and the class-index lookup."""

from itertools import combinations

import pytest

from tfnpkit.encodings import (
    baranyai_index,
    baranyai_table,
    baranyai_verify,
    bitmap_of_edges,
)
from tfnpkit.errors import CapabilityError, DomainError
from tfnpkit.numerics import BitString, binomial, bits_of

CASES = [(2, 2), (2, 3), (3, 2), (4, 2), (2, 4)]


def naive_check(k, n, classes):
    universe = set(range(1, k * n + 1))
    blocks = [b for cls in classes for b in cls]
    assert len(blocks) == len(set(blocks))
    assert set(blocks) == {tuple(c) for c in combinations(sorted(universe), n)}
    for cls in classes:
        assert len(cls) == k
        assert sorted(x for b in cls for x in b) == sorted(universe)


@pytest.mark.parametrize("k,n", CASES)
def test_table_is_exact_cover(k, n, tmp_path):
    classes = baranyai_table(k, n, table_dir=tmp_path / f"t{k}{n}")
    assert len(classes) == binomial(k * n - 1, n - 1)
    naive_check(k, n, classes)
    ok, msg = baranyai_verify(k, n, classes)
    assert ok, msg


@pytest.mark.parametrize("k,n", CASES)
def test_first_class_is_consecutive_runs(k, n, tmp_path):
    classes = baranyai_table(k, n, table_dir=tmp_path / f"t{k}{n}")
    want = [tuple(range(i * n + 1, (i + 1) * n + 1)) for i in range(k)]
    assert classes[0] == want


def test_file_cache_round_trip(tmp_path):
    # flush the in-process memo so both calls hit the file layer
    from tfnpkit import encodings

    encodings._table_memo.pop((3, 2), None)
    a = baranyai_table(3, 2, table_dir=tmp_path)
    path = tmp_path / "baranyai_k3_n2.txt"
    assert path.exists()
    encodings._table_memo.pop((3, 2), None)
    b = baranyai_table(3, 2, table_dir=tmp_path)
    assert a == b


def test_verify_rejects_broken_tables():
    good = baranyai_table(2, 2)
    ok, _ = baranyai_verify(2, 2, good)
    assert ok
    assert not baranyai_verify(2, 2, good[:-1])[0]
    swapped = [good[1], good[0]] + good[2:]
    ok, msg = baranyai_verify(2, 2, swapped)
    assert not ok and "canonical" in msg
    dup = [list(good[0])] + good[1:]
    dup[1] = list(good[0])
    assert not baranyai_verify(2, 2, dup)[0]


def test_index_lookup_consistent(tmp_path):
    k, n = 2, 3
    classes = baranyai_table(k, n, table_dir=tmp_path)
    for ci, cls in enumerate(classes, start=1):
        for block in cls:
            v = 0
            for x in block:
                v |= 1 << (k * n - x)
            assert baranyai_index(k, n, bits_of(v, k * n), table_dir=tmp_path) == ci
    with pytest.raises(DomainError):
        baranyai_index(k, n, BitString.from_str("111100"), table_dir=tmp_path)
    with pytest.raises(DomainError):
        baranyai_index(k, n, bits_of(0, k * n), table_dir=tmp_path)


def test_cap_enforced():
    with pytest.raises(CapabilityError):
        baranyai_table(10, 5)
    with pytest.raises(DomainError):
        baranyai_table(0, 2)
