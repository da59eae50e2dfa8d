import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from conftest import corpus, small_texts
from rindex.extractor import (ExtractIndex, PrimaryFinder, build_extract_index, extract,
                              find_primary_occurrence, sampled_positions)
from rindex.text_core import build_bundle


def primary_answers(b, lo, hi):
    """Every (start) whose occurrence of T[lo..hi] covers a sampled position."""
    samples = set(sampled_positions(b))
    ln = hi - lo + 1
    want = b.text[lo:hi + 1]
    return {st for st in range(1, b.n - ln + 2)
            if b.text[st:st + ln] == want and any(st <= p < st + ln for p in samples)}


def test_sampled_positions():
    b = build_bundle(b"banana")
    samples = sampled_positions(b)
    assert len(samples) <= 2 * b.r
    assert b.n in samples
    extra = sampled_positions(b, extra=True)
    assert set(samples) <= set(extra) and len(extra) <= 3 * b.r


def test_primary_unary():
    b = build_bundle(b"aaaa")
    start, witness = find_primary_occurrence(b, 2, 3)
    assert start in primary_answers(b, 2, 3)
    assert start <= witness <= start + 1


def test_primary_in_place():
    b = build_bundle(b"banana")
    finder = PrimaryFinder(b)
    j = finder.samples[0]
    assert finder.find_cached(j, j) == (j, j)


def test_primary_random():
    rng = random.Random(2)
    for raw in corpus(3, 100, 300):
        b = build_bundle(raw)
        finder = PrimaryFinder(b)
        samples = set(finder.samples)
        for _ in range(30):
            ln = rng.randint(1, min(8, b.n))
            lo = rng.randint(1, b.n - ln + 1)
            start, witness = finder.find(lo, lo + ln - 1)
            assert start in primary_answers(b, lo, lo + ln - 1)
            assert witness in samples and start <= witness < start + ln


def test_primary_out_of_range():
    with pytest.raises(IndexError):
        find_primary_occurrence(build_bundle(b"ab"), 2, 4)


def test_plain_when_small():
    b = build_bundle(b"banana")
    idx = build_extract_index(b, alpha=1)
    assert b.n <= 4 * b.r and idx.plain is not None
    assert [extract(idx, i, 1, b.alphabet) for i in range(1, 8)] == [bytes([c]) for c in b.raw]
    assert extract(idx, 2, 3, b.alphabet) == b"ana"
    assert extract(idx, 5, 0) == []


def test_leveled_structure_audits():
    b = build_bundle(b"abaababaabaababaababa" * 8)
    idx = ExtractIndex.build(b, alpha=1)
    assert idx.plain is None
    idx.audit(b.text)
    assert idx.leaf_level <= idx.hop_bound
    assert idx.extract(1, b.n) == b.text[1:]


def check_all_windows(b, idx):
    n = b.n
    ops = Counter()
    for i in range(1, n + 2):
        for ln in range(0, n - i + 2):
            assert idx.extract(i, ln, ops) == b.text[i:i + ln]
    assert ops["max_hops"] <= idx.hop_bound


@given(small_texts(b"ab", 120), st.sampled_from([1, 2, 4]))
@settings(max_examples=40, deadline=None)
def test_all_windows_property(raw, alpha):
    b = build_bundle(raw * 3)
    idx = ExtractIndex.build(b, alpha)
    idx.audit(b.text)
    check_all_windows(b, idx)


def test_round_trip_random():
    for raw in corpus(5, 200, 600):
        b = build_bundle(raw)
        idx = ExtractIndex.build(b, alpha=2)
        assert idx.extract(1, b.n) == b.text[1:]


def test_extra_samples():
    b = build_bundle(b"abcabcabcabd" * 10)
    idx = ExtractIndex.build(b, alpha=1, extra_samples=True)
    idx.audit(b.text)
    assert idx.extract(1, b.n) == b.text[1:]


def test_out_of_range():
    b = build_bundle(b"abab" * 20)
    idx = ExtractIndex.build(b, 1)
    for i, ln in ((0, 1), (b.n, 2), (1, -1)):
        with pytest.raises(IndexError):
            idx.extract(i, ln)


@pytest.mark.parametrize("alpha", [1, 8])
def test_arrays_round_trip(alpha):
    b = build_bundle(b"abaababaab" * 12)
    idx = ExtractIndex.build(b, alpha)
    back = ExtractIndex.from_arrays(idx.to_arrays())
    assert back.extract(1, b.n) == idx.extract(1, b.n)
    back.audit(b.text)


def test_rejects_bad_alpha():
    with pytest.raises(ValueError):
        ExtractIndex.build(build_bundle(b"ab"), 0)
