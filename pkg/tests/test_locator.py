import random
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from conftest import corpus, patterns_for, small_texts
from rindex.locator import (SENTINEL, KSampler, PhraseTable, ToeholdSampler,
                            count_and_anchor, lcp_block, locate_all, sa_block,
                            sa_neighbors_phrase)
from rindex.rlfm import RlfmIndex
from rindex.text_core import build_bundle, oracle_locate


def structures(raw, s=1):
    b = build_bundle(raw)
    return (b, RlfmIndex.from_bundle(b), ToeholdSampler.from_bundle(b),
            PhraseTable.from_bundle(b), KSampler.from_bundle(b, s))


def check_trace(b, symbols, trace):
    m = len(symbols)
    for i, rng, anchor in trace:
        assert rng.sp <= anchor.j <= rng.ep
        assert b.sa[anchor.j] == anchor.sa_j
        assert b.text[anchor.sa_j:anchor.sa_j + m - i] == symbols[i:]


def test_anchor_examples():
    b, rlfm, toe, _, _ = structures(b"banana")
    rng, anchor = count_and_anchor(rlfm, toe, b.alphabet.encode(b"ana"))
    assert rng == (3, 4)
    assert anchor.j in (3, 4) and b.text[anchor.sa_j:anchor.sa_j + 3] == b.alphabet.encode(b"ana")
    rng, anchor = count_and_anchor(rlfm, toe, b.alphabet.encode(b"nan"))
    assert rng == (7, 7) and (anchor.j, anchor.sa_j) == (7, 3)
    rng, anchor = count_and_anchor(rlfm, toe, b.alphabet.encode(b"nn"))
    assert rng.empty and anchor is None


def test_toehold_payloads():
    b, _, toe, _, _ = structures(b"mississippi")
    assert len(toe) <= 2 * b.r
    for c, ps in enumerate(toe.per_symbol):
        for q, v in ps:
            assert b.bwt[q] == c
            assert v == (b.sa[q] - 2) % b.n + 1


def test_phrase_examples():
    b, _, _, phrases, _ = structures(b"banana")
    assert sa_neighbors_phrase(phrases, 2) == (4, 1)
    assert sa_neighbors_phrase(phrases, 7) == (SENTINEL, 6)
    assert phrases.neighbors(3) == (5, SENTINEL)
    assert len(phrases) <= 2 * b.r + 1 and phrases.starts.keys[0] == 1
    with pytest.raises(IndexError):
        phrases.neighbors(0)


def test_lcp_block_examples():
    b, *_, ks = structures(b"banana", 1)
    assert lcp_block(ks, 6, 1)[1] == [1]
    assert lcp_block(ks, b.sa[1], 1)[0] == [0]


def test_unary_blocks():
    b, *_, ks = structures(b"aaaaaaa", 3)
    # SA = n, n-1, ..., 1
    for p in range(1, b.n - 2):
        assert sa_block(ks, b.sa[p], 3) == [b.sa[p] - 1, b.sa[p] - 2, b.sa[p] - 3]


def test_sampler_invariants():
    b, *_, ks = structures(b"abaababaabaab" * 3, 2)
    assert len(ks.w) <= 2 * b.r * ks.s + b.r
    for ps in (ks.plus, ks.minus):
        for i, f in ps:
            assert ks.w[f] == i
            assert ks.lcp_prime[f] == b.lcp[b.isa[i + 1]]


def test_rejects_bad_requests():
    b, *_, ks = structures(b"abab", 2)
    with pytest.raises(ValueError):
        ks.sa_block(1, 3)
    with pytest.raises(IndexError):
        ks.sa_block(b.sa[b.n], 1)
    with pytest.raises(IndexError):
        ks.sa_block(b.sa[1], 1, forward=False)
    with pytest.raises(ValueError):
        KSampler.from_bundle(b, 0)


def exhaustive_neighbour_check(raw, s_values=(1, 2, 4, 8)):
    b = build_bundle(raw)
    n, sa, lcp = b.n, b.sa, b.lcp
    phrases = PhraseTable.from_bundle(b)
    for p in range(1, n + 1):
        assert phrases.neighbors(sa[p]) == (sa[p - 1] if p > 1 else SENTINEL,
                                            sa[p + 1] if p < n else SENTINEL)
    for s in s_values:
        ks = KSampler.from_bundle(b, s)
        for p in range(1, n + 1):
            for c in range(1, s + 1):
                if p + c <= n:
                    assert ks.sa_block(sa[p], c) == sa[p + 1:p + c + 1]
                if p - c >= 1:
                    assert ks.sa_block(sa[p], c, False) == sa[p - c:p][::-1]
                if p - c >= 0 and p + c <= n:
                    left, right = ks.lcp_block(sa[p], c)
                    assert left == lcp[p - c + 1:p + 1]
                    assert right == lcp[p + 1:p + c + 1]
        if s == 1:
            for p in range(2, n):
                assert ks.sa_block(sa[p], 1) == [phrases.neighbors(sa[p])[1]]
                assert ks.sa_block(sa[p], 1, False) == [phrases.neighbors(sa[p])[0]]


@given(small_texts(b"ab", 50))
@settings(max_examples=80, deadline=None)
def test_neighbours_property(raw):
    exhaustive_neighbour_check(raw)


def test_neighbours_corpus():
    for raw in corpus(31, 30, 400):
        exhaustive_neighbour_check(raw)


def test_locate_examples():
    b, rlfm, toe, _, ks = structures(b"banana")
    enc = b.alphabet.encode
    assert locate_all(rlfm, toe, ks, enc(b"ana")) == [2, 4]
    assert locate_all(rlfm, toe, ks, enc(b"a")) == [2, 4, 6]
    assert locate_all(rlfm, toe, ks, enc(b"nn")) == []


@pytest.mark.parametrize("s", [1, 2, 8])
def test_locate_random(s):
    rng = random.Random(s)
    for raw in corpus(40 + s, 60, 500):
        b, rlfm, toe, _, ks = structures(raw, s)
        for p in patterns_for(rng, b.raw, 20):
            syms = b.alphabet.encode(p)
            if syms is None:
                continue
            trace, ops = [], Counter()
            got = locate_all(rlfm, toe, ks, syms, ops, trace)
            check_trace(b, syms, trace)
            assert got == oracle_locate(b, p)
            assert ops["block_fetch"] <= -(-len(got) // s) + 2


@given(small_texts(b"abc", 40), st.binary(min_size=1, max_size=4), st.integers(1, 4))
@settings(max_examples=150, deadline=None)
def test_locate_property(raw, pattern, s):
    b, rlfm, toe, _, ks = structures(raw, s)
    syms = b.alphabet.encode(pattern)
    if syms is not None:
        assert locate_all(rlfm, toe, ks, syms) == oracle_locate(b, pattern)


def test_arrays_round_trip():
    b, rlfm, toe, phrases, ks = structures(b"abaababaab", 2)
    toe2 = ToeholdSampler.from_arrays(toe.to_arrays())
    ph2 = PhraseTable.from_arrays(phrases.to_arrays())
    ks2 = KSampler.from_arrays(ks.to_arrays())
    for p in range(1, b.n + 1):
        assert ph2.neighbors(b.sa[p]) == phrases.neighbors(b.sa[p])
    syms = b.alphabet.encode(b"ab")
    assert locate_all(rlfm, toe2, ks2, syms) == locate_all(rlfm, toe, ks, syms)
