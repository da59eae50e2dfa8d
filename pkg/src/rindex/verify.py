"""Cross-check a built index against brute-force oracles over its source text."""

from __future__ import annotations

import random

from .fingerprint import kappa_direct
from .index import RIndex
from .locator import SENTINEL
from .measures import bwt_macro_scheme, reconstruct
from .text_core import build_bundle, oracle_locate

EXHAUSTIVE_N = 600  # above this, queries are sampled


def verify_index(index: RIndex, raw: bytes, seed: int = 0, samples: int = 2000,
                 max_failures: int = 20) -> list:
    """Human-readable descriptions of every mismatch found (empty when clean)."""
    failures = []

    def fail(msg):
        if len(failures) < max_failures:
            failures.append(msg)

    try:
        bundle = build_bundle(raw, index.alphabet.terminator)
    except ValueError as exc:
        return [f"cannot build reference bundle: {exc}"]
    n, sa, lcp = bundle.n, bundle.sa, bundle.lcp
    if bundle.n != index.n or bundle.alphabet.symbols != index.alphabet.symbols:
        return [f"index covers n={index.n}, input has n={bundle.n} "
                "(or a different alphabet)"]
    rng = random.Random(seed)

    if index.rlfm.bwt() != bundle.bwt:
        fail("run-length BWT differs from the reference BWT")
    for i in range(1, n + 1):
        q = index.rlfm.lf(i)
        if sa[i] > 1 and sa[q] != sa[i] - 1:
            fail(f"LF({i}) = {q} breaks SA[LF(i)] = SA[i] - 1")
            break

    # patterns: substrings of the text plus random byte strings
    text = bundle.raw
    patterns = set()
    pool = samples if n > EXHAUSTIVE_N else samples // 2
    for _ in range(pool):
        m = rng.randint(1, 12)
        i = rng.randint(0, max(0, n - m))
        patterns.add(text[i:i + m])
        patterns.add(bytes(rng.choice(index.alphabet.symbols) for _ in range(rng.randint(1, 6))))
    for p in sorted(patterns):
        truth = oracle_locate(bundle, p)
        if index.count(p) != len(truth):
            fail(f"count({p!r}) = {index.count(p)}, expected {len(truth)}")
        if index.locate(p) != truth:
            fail(f"locate({p!r}) differs from the naive scan")

    cells = range(1, n + 1) if n <= EXHAUSTIVE_N else rng.sample(range(1, n + 1), samples // 4)
    s = index.s
    for p in cells:
        want = (sa[p - 1] if p > 1 else SENTINEL, sa[p + 1] if p < n else SENTINEL)
        if index.phrases.neighbors(sa[p]) != want:
            fail(f"phrase neighbours of SA[{p}] = {sa[p]} are wrong")
        for c in range(1, s + 1):
            if p + c <= n and index.ksampler.sa_block(sa[p], c) != sa[p + 1:p + c + 1]:
                fail(f"forward block of {c} at p = {p} is wrong")
            if p - c >= 1 and index.ksampler.sa_block(sa[p], c, False) != sa[p - c:p][::-1]:
                fail(f"backward block of {c} at p = {p} is wrong")
            if p - c >= 0 and p + c <= n:
                left, right = index.ksampler.lcp_block(sa[p], c)
                if left != lcp[p - c + 1:p + 1] or right != lcp[p + 1:p + c + 1]:
                    fail(f"LCP block of {c} at p = {p} is wrong")

    windows = []
    if n <= 64:
        windows = [(i, ln) for i in range(1, n + 1) for ln in range(0, n - i + 2)]
    else:
        for _ in range(samples):
            i = rng.randint(1, n)
            windows.append((i, rng.randint(0, min(64, n - i + 1))))
        windows.append((1, n))
    if index.extractor is not None or index.raw is not None:
        for i, ln in windows:
            if index.extract(i, ln) != text[i - 1:i - 1 + ln]:
                fail(f"extract({i}, {ln}) is wrong")
    fp = index.fingerprint
    if fp is not None:
        for i, ln in windows:
            if ln and index.kappa_range(i, i + ln - 1) != kappa_direct(
                    bundle.text[i:i + ln], fp.c, fp.q):
                fail(f"fingerprint of [{i}, {i + ln - 1}] is wrong")

    if index.text() != text:
        fail("full-text recovery differs from the input")
    if reconstruct(bwt_macro_scheme(bundle)) != text:
        fail("BWT macro scheme does not reproduce the input")
    return failures
