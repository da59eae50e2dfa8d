"""Substring extraction from text kept only around sampled positions.

A text position is *sampled* when its character opens or closes a BWT run.
Every substring has an occurrence covering a sampled position (a primary
occurrence), so a block of the text can be replaced by a pointer
``<off, j'>`` into the neighbourhood of sampled position ``j'`` one level
down, where blocks are half as long.  Level 0 cuts the text into blocks of
``B`` characters; level ``i >= 1`` keeps, around every sampled ``j``, seven
half-blocks of width ``s_i / 2`` starting at ``j - s_i + t * s_i / 4``
(``t = 0..6``).  Once ``s_i < 4 * alpha`` the neighbourhoods are stored as
plain symbols.  Blocks reaching past the text edges are clipped.
"""

from __future__ import annotations

from bisect import bisect_left

from .locator import ToeholdSampler
from .rlfm import RlfmIndex, SARange

HALF_BLOCKS = 7


def sampled_positions(bundle, extra: bool = False) -> list:
    """Sorted text positions whose character is first or last in its BWT run."""
    n, sa = bundle.n, bundle.sa
    out = set()
    for run in bundle.runs:
        for q in (run.start, run.end):
            out.add(sa[q] - 1 if sa[q] > 1 else n)
    if extra:
        step = -(-n // bundle.r)
        out.update(range(1, n + 1, step))
    return sorted(out)


class PrimaryFinder:
    """Primary occurrences by the right-to-left induction over BWT intervals."""

    def __init__(self, bundle, rlfm: RlfmIndex | None = None,
                 toehold: ToeholdSampler | None = None, samples=None):
        self.bundle = bundle
        self.rlfm = rlfm or RlfmIndex.from_bundle(bundle)
        self.toehold = toehold or ToeholdSampler.from_bundle(bundle)
        self.samples = samples if samples is not None else sampled_positions(bundle)
        self.run_heads = {run.start for run in bundle.runs}
        self._cache = {}

    def _text_pos(self, q):
        sa = self.bundle.sa
        return sa[q] - 1 if sa[q] > 1 else self.bundle.n

    def find(self, lo: int, hi: int):
        """``(start, witness)``: T[start..start+hi-lo] == T[lo..hi], witness sampled inside."""
        n = self.bundle.n
        if not 1 <= lo <= hi <= n:
            raise IndexError(f"range [{lo}, {hi}] outside [1, {n}]")
        t, rlfm, heads = self.bundle.text, self.rlfm, self.run_heads
        c = t[hi]
        q, p = self.toehold.per_symbol[c].pred(n)
        start = p
        rng = SARange(rlfm.c_table[c] + 1, rlfm.c_table[c + 1])
        for i in range(hi - 1, lo - 1, -1):
            c = t[i]
            new = rlfm.backward_step(rng, c)
            if len(new) != len(rng):
                # a run of c opens or closes inside the interval
                q, p = self.toehold.per_symbol[c].pred(rng.ep)
                start = p
            elif rng.sp in heads:
                p = start = self._text_pos(rng.sp)
            elif rng.ep == n or rng.ep + 1 in heads:
                p = start = self._text_pos(rng.ep)
            else:
                start -= 1
            rng = new
        return start, p

    def find_cached(self, lo: int, hi: int):
        """Like ``find`` but answers in place when [lo, hi] already holds a sample."""
        key = (lo, hi)
        hit = self._cache.get(key)
        if hit is None:
            k = bisect_left(self.samples, lo)
            if k < len(self.samples) and self.samples[k] <= hi:
                hit = (lo, self.samples[k])
            else:
                hit = self.find(lo, hi)
            self._cache[key] = hit
        return hit


def find_primary_occurrence(bundle, lo: int, hi: int):
    return PrimaryFinder(bundle).find(lo, hi)


class ExtractIndex:
    def __init__(self, n, alpha, block, samples, plain=None, level0=None,
                 levels=None, leaf_starts=None, leaves=None):
        self.n = n
        self.alpha = alpha
        self.block = block
        self.samples = samples
        self.plain = plain
        self.level0 = level0 or []
        self.levels = levels or []  # levels[i - 1][jidx][t] = (start, length, off, jidx')
        self.leaf_starts = leaf_starts or []
        self.leaves = leaves or []

    @property
    def leaf_level(self) -> int:
        return len(self.levels) + 1

    def width(self, level: int) -> int:
        return self.block >> (level - 1)

    @property
    def hop_bound(self) -> int:
        """ceil(log2(B / alpha)) + 2, clamped at 2."""
        e = 0
        while self.alpha << e < self.block:
            e += 1
        return e + 2

    @classmethod
    def build(cls, bundle, alpha: int = 8, finder: PrimaryFinder | None = None,
              extra_samples: bool = False) -> "ExtractIndex":
        if alpha < 1:
            raise ValueError("alpha must be >= 1")
        n, r, t = bundle.n, bundle.r, bundle.text
        if finder is None or extra_samples:
            samples = sampled_positions(bundle, extra_samples)
            finder = PrimaryFinder(bundle, samples=samples)
        samples = finder.samples
        block = 1 << max(0, (-(-n // r) - 1).bit_length())
        if n <= 4 * alpha * r:
            return cls(n, alpha, block, samples, plain=t[1:])
        where = {p: k for k, p in enumerate(samples)}

        def pointer(lo, hi, child_width):
            start, p = finder.find_cached(lo, hi)
            return start - p + child_width, where[p]

        level0 = []
        for lo in range(1, n + 1, block):
            level0.append(pointer(lo, min(n, lo + block - 1), block))

        levels = []
        width = block
        while width >= 4 * alpha:
            child = width // 2
            quarter = width // 4
            level = []
            for j in samples:
                halves = []
                for k in range(HALF_BLOCKS):
                    lo = max(1, j - width + k * quarter)
                    hi = min(n, j - width + k * quarter + child - 1)
                    if lo > hi:
                        halves.append(None)
                        continue
                    off, jp = pointer(lo, hi, child)
                    halves.append((lo, hi - lo + 1, off, jp))
                level.append(halves)
            levels.append(level)
            width = child

        leaf_starts, leaves = [], []
        for j in samples:
            lo, hi = max(1, j - width), min(n, j + width - 1)
            leaf_starts.append(lo)
            leaves.append(t[lo:hi + 1])
        return cls(n, alpha, block, samples, None, level0, levels, leaf_starts, leaves)

    def _window(self, x: int, length: int, ops=None) -> list:
        block, samples = self.block, self.samples
        k = (x - 1) // block
        off, jidx = self.level0[k]
        y = samples[jidx] - block + off + (x - (k * block + 1))
        hops = 1
        level = 1
        leaf = self.leaf_level
        while level < leaf:
            width = block >> (level - 1)
            quarter = width // 4
            j = samples[jidx]
            t = min(HALF_BLOCKS - 1, (y - (j - width)) // quarter)
            start, ln, off, nxt = self.levels[level - 1][jidx][t]
            assert start <= y and y + length <= start + ln, "window escaped its half-block"
            y = samples[nxt] - width // 2 + off + (y - start)
            jidx = nxt
            level += 1
            hops += 1
        if ops is not None:
            ops["windows"] += 1
            ops["hops"] += hops
            ops["max_hops"] = max(ops["max_hops"], hops)
        base = y - self.leaf_starts[jidx]
        return self.leaves[jidx][base:base + length]

    def extract(self, i: int, length: int, ops=None) -> list:
        """Symbols T[i..i+length-1].

        The range is cut into windows of at most ``alpha`` symbols that never
        cross a level-0 block; each window descends once through the levels.
        """
        if length < 0 or i < 1 or i + length - 1 > self.n:
            raise IndexError(f"window ({i}, {length}) outside [1, {self.n}]")
        if self.plain is not None:
            return self.plain[i - 1:i - 1 + length]
        out = []
        x, end = i, i + length - 1
        while x <= end:
            block_end = ((x - 1) // self.block + 1) * self.block
            take = min(self.alpha, end - x + 1, block_end - x + 1)
            out.extend(self._window(x, take, ops))
            x += take
        return out

    def audit(self, text) -> None:
        """Re-validate every stored pointer against the 1-based ``text``."""
        if self.plain is not None:
            assert self.plain == text[1:]
            return
        samples, n = self.samples, self.n

        def check(lo, ln, off, jidx, child):
            p = samples[jidx]
            start = p - child + off
            assert 0 < off <= child
            assert start <= p <= start + ln - 1, "occurrence is not primary"
            assert text[start:start + ln] == text[lo:lo + ln]

        for k, (off, jidx) in enumerate(self.level0):
            lo = k * self.block + 1
            check(lo, min(n, lo + self.block - 1) - lo + 1, off, jidx, self.block)
        for level, halves_by_sample in enumerate(self.levels, 1):
            child = self.width(level) // 2
            for halves in halves_by_sample:
                for h in halves:
                    if h is not None:
                        check(*h, child)
        width = self.width(self.leaf_level)
        for j, lo, chars in zip(samples, self.leaf_starts, self.leaves):
            assert lo == max(1, j - width)
            assert chars == text[lo:min(n, j + width - 1) + 1]

    def stored_symbols(self) -> int:
        if self.plain is not None:
            return len(self.plain)
        return sum(len(chars) for chars in self.leaves)

    def to_arrays(self):
        head = [self.n, self.alpha, self.block, int(self.plain is not None),
                len(self.levels)]
        if self.plain is not None:
            return [head, self.samples, self.plain]
        out = [head, self.samples, [o for o, _ in self.level0], [j for _, j in self.level0]]
        for level in self.levels:
            flat = []
            for halves in level:
                for h in halves:
                    flat.extend(h if h is not None else (0, 0, 0, 0))
            out.append(flat)
        out.append(self.leaf_starts)
        out.append([len(chars) for chars in self.leaves])
        out.append([c for chars in self.leaves for c in chars])
        return out

    @classmethod
    def from_arrays(cls, arrays):
        (n, alpha, block, plain, nlevels), samples = arrays[0], arrays[1]
        if plain:
            return cls(n, alpha, block, samples, plain=list(arrays[2]))
        level0 = list(zip(arrays[2], arrays[3]))
        levels = []
        for flat in arrays[4:4 + nlevels]:
            level = []
            for base in range(0, len(flat), 4 * HALF_BLOCKS):
                halves = []
                for k in range(base, base + 4 * HALF_BLOCKS, 4):
                    h = tuple(flat[k:k + 4])
                    halves.append(h if h[1] else None)
                level.append(halves)
            levels.append(level)
        leaf_starts, lengths, chars = arrays[4 + nlevels:7 + nlevels]
        leaves, pos = [], 0
        for ln in lengths:
            leaves.append(list(chars[pos:pos + ln]))
            pos += ln
        return cls(n, alpha, block, samples, None, level0, levels, leaf_starts, leaves)


def build_extract_index(bundle, alpha: int = 8) -> ExtractIndex:
    return ExtractIndex.build(bundle, alpha)


def extract(index: ExtractIndex, i: int, length: int, alphabet=None):
    """T[i..i+length-1], decoded to bytes when ``alphabet`` is given."""
    symbols = index.extract(i, length)
    return alphabet.decode(symbols) if alphabet is not None else symbols
