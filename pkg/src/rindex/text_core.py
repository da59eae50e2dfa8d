"""Text bundle: the text with SA, ISA, LCP, BWT and BWT runs, plus naive oracles.

All arrays are 1-based: index 0 of every list is a zero pad, so ``bundle.sa[1]``
is the first suffix-array cell.  Text symbols live in the effective alphabet
``[1..sigma]`` with the terminator mapped to 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError, TerminatorError

DEFAULT_TERMINATOR = ord("$")


@dataclass(frozen=True)
class Run:
    start: int
    symbol: int
    length: int

    @property
    def end(self) -> int:
        return self.start + self.length - 1


@dataclass(frozen=True)
class AlphabetMap:
    """Injective map between external bytes and effective symbols."""

    terminator: int
    symbols: tuple[int, ...]  # symbols[k - 1] is the external byte of symbol k
    _forward: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self._forward.update({b: k for k, b in enumerate(self.symbols, 1)})

    @classmethod
    def from_bytes(cls, raw: bytes, terminator: int) -> "AlphabetMap":
        others = sorted(set(raw) - {terminator})
        return cls(terminator, tuple([terminator] + others))

    @property
    def sigma(self) -> int:
        return len(self.symbols)

    def encode(self, data: bytes) -> list[int] | None:
        """Map external bytes to symbols; None if any byte is unmapped."""
        fwd = self._forward
        out = []
        for b in data:
            c = fwd.get(b)
            if c is None:
                return None
            out.append(c)
        return out

    def decode(self, symbols) -> bytes:
        table = self.symbols
        return bytes(table[c - 1] for c in symbols)


@dataclass(frozen=True, eq=False)
class TextBundle:
    raw: bytes  # external bytes, terminator included
    alphabet: AlphabetMap
    text: list
    sa: list
    isa: list
    lcp: list
    bwt: list
    runs: list

    @property
    def n(self) -> int:
        return len(self.text) - 1

    @property
    def sigma(self) -> int:
        return self.alphabet.sigma

    @property
    def r(self) -> int:
        return len(self.runs)


def suffix_array(symbols) -> np.ndarray:
    """0-based suffix array by prefix doubling.

    ``symbols`` must end with a unique smallest symbol, so ties never survive
    past the terminator.
    """
    s = np.asarray(symbols, dtype=np.int64)
    n = len(s)
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    _, rank = np.unique(s, return_inverse=True)
    rank = rank.astype(np.int64) + 1
    k = 1
    while True:
        second = np.zeros(n, dtype=np.int64)
        if k < n:
            second[: n - k] = rank[k:]
        order = np.lexsort((second, rank))
        r_sorted = rank[order]
        s_sorted = second[order]
        change = np.empty(n, dtype=np.int64)
        change[0] = 1
        change[1:] = (r_sorted[1:] != r_sorted[:-1]) | (s_sorted[1:] != s_sorted[:-1])
        new_rank = np.empty(n, dtype=np.int64)
        new_rank[order] = np.cumsum(change)
        rank = new_rank
        if rank.max() == n:
            return order
        k *= 2


def _kasai(text: list, sa: list, isa: list) -> list:
    n = len(text) - 1
    lcp = [0] * (n + 1)
    h = 0
    for i in range(1, n + 1):
        p = isa[i]
        if p > 1:
            j = sa[p - 1]
            while i + h <= n and j + h <= n and text[i + h] == text[j + h]:
                h += 1
            lcp[p] = h
            if h:
                h -= 1
        else:
            h = 0
    return lcp


def build_bundle(raw: bytes, terminator: int = DEFAULT_TERMINATOR) -> TextBundle:
    """Index-free ground truth for ``raw`` (terminator appended when missing)."""
    raw = bytes(raw)
    if not raw:
        raise InputError("cannot index an empty input")
    if raw[-1] != terminator:
        if terminator in raw:
            raise TerminatorError(
                f"terminator byte {terminator:#04x} occurs inside the input")
        raw += bytes([terminator])
    elif terminator in raw[:-1]:
        raise TerminatorError(
            f"terminator byte {terminator:#04x} occurs inside the input")

    if len(raw) == 1:
        raise InputError("input holds nothing besides the terminator")

    alphabet = AlphabetMap.from_bytes(raw, terminator)
    syms = alphabet.encode(raw)
    n = len(syms)

    sa0 = suffix_array(syms)
    arr = np.asarray(syms, dtype=np.int64)
    bwt0 = arr[(sa0 - 1) % n]  # sa0 == 0 wraps to T[n]
    isa0 = np.empty(n, dtype=np.int64)
    isa0[sa0] = np.arange(n)

    text = [0] + syms
    sa = [0] + (sa0 + 1).tolist()
    isa = [0] + (isa0 + 1).tolist()
    bwt = [0] + bwt0.tolist()
    lcp = _kasai(text, sa, isa)

    heads = np.flatnonzero(np.concatenate(([True], bwt0[1:] != bwt0[:-1])))
    lengths = np.diff(np.append(heads, n))
    runs = [Run(int(h) + 1, int(bwt0[h]), int(ln)) for h, ln in zip(heads, lengths)]
    return TextBundle(raw, alphabet, text, sa, isa, lcp, bwt, runs)


def oracle_locate(bundle: TextBundle, pattern: bytes) -> list:
    """All 1-based starting positions of ``pattern``, by direct comparison."""
    pattern = bytes(pattern)
    if not pattern or bundle.alphabet.encode(pattern) is None:
        return []
    raw = bundle.raw
    return [i + 1 for i in range(len(raw) - len(pattern) + 1) if raw.startswith(pattern, i)]


def oracle_count(bundle: TextBundle, pattern: bytes) -> int:
    return len(oracle_locate(bundle, pattern))


def phi(bundle: TextBundle, i: int) -> int:
    """Start of the suffix immediately preceding T[i..] in SA order (cyclic)."""
    if not 1 <= i <= bundle.n:
        raise IndexError(f"text position {i} outside [1, {bundle.n}]")
    p = bundle.isa[i]
    return bundle.sa[p - 1] if p > 1 else bundle.sa[bundle.n]


def distinct_kmers(bundle: TextBundle, k: int) -> int:
    raw = bundle.raw
    return len({raw[i:i + k] for i in range(len(raw) - k + 1)})


def check_bundle(bundle: TextBundle) -> None:
    """Assert every structural invariant of ``bundle`` (test helper, O(n^2) worst case)."""
    n, t, sa, isa = bundle.n, bundle.text, bundle.sa, bundle.isa
    assert sorted(sa[1:]) == list(range(1, n + 1))
    assert all(isa[sa[i]] == i for i in range(1, n + 1))
    assert t[n] == 1 and t[1:n].count(1) == 0
    for i in range(1, n):
        assert t[sa[i]:] < t[sa[i + 1]:]
    for i in range(1, n + 1):
        assert bundle.bwt[i] == (t[sa[i] - 1] if sa[i] > 1 else t[n])
    assert bundle.lcp[1] == 0
    for i in range(2, n + 1):
        a, b, h = sa[i - 1], sa[i], bundle.lcp[i]
        assert t[a:a + h] == t[b:b + h]
        # the terminator is unique, so the next pair always exists and differs
        assert t[a + h] != t[b + h]
    pos = 1
    prev = None
    for run in bundle.runs:
        assert run.start == pos and run.length > 0 and run.symbol != prev
        assert all(bundle.bwt[q] == run.symbol for q in range(run.start, run.end + 1))
        pos += run.length
        prev = run.symbol
    assert pos == n + 1
    assert bundle.sigma <= bundle.r <= n
