"""Locating occurrences from a single suffix-array toe-hold.

* ``ToeholdSampler`` keeps, per symbol, the BWT positions that open or close a
  run together with the text position of their character, so backward search
  can carry one known SA cell along.
* ``PhraseTable`` answers SA[p-1] / SA[p+1] from SA[p] via the phrase parse
  induced by run extremes.
* ``KSampler`` generalises that to blocks of ``s`` neighbours and to LCP cells.

Text positions "of a BWT character" follow two conventions: the toe-hold and
phrase structures wrap SA[q] = 1 to n, while the k-sampler stores the plain
value SA[q] - 1 (0 for the terminator row) so predecessor arithmetic never
wraps.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intpred import PredSet
from .rlfm import RlfmIndex, SARange

SENTINEL = 0  # stands for the nonexistent SA[0] / SA[n + 1]


def _run_extremes(runs):
    for run in runs:
        yield run.start, run.symbol
        if run.length > 1:
            yield run.end, run.symbol


@dataclass(frozen=True)
class Anchor:
    j: int
    sa_j: int


class ToeholdSampler:
    def __init__(self, n, per_symbol):
        self.n = n
        self.per_symbol = per_symbol  # list indexed by symbol; [0] unused

    @classmethod
    def from_bundle(cls, bundle) -> "ToeholdSampler":
        n, sa = bundle.n, bundle.sa
        pairs = [[] for _ in range(bundle.sigma + 1)]
        for q, c in _run_extremes(bundle.runs):
            pairs[c].append((q, sa[q] - 1 if sa[q] > 1 else n))
        return cls(n, [PredSet.from_pairs(p, n) for p in pairs])

    def __len__(self):
        return sum(len(ps) for ps in self.per_symbol)

    def to_arrays(self):
        out = [[self.n, len(self.per_symbol) - 1]]
        for ps in self.per_symbol[1:]:
            out += [ps.keys, ps.payloads]
        return out

    @classmethod
    def from_arrays(cls, arrays):
        n, sigma = arrays[0]
        per = [PredSet([], [], n)]
        for c in range(sigma):
            per.append(PredSet(arrays[1 + 2 * c], arrays[2 + 2 * c], n))
        return cls(n, per)


def count_and_anchor(rlfm: RlfmIndex, toehold: ToeholdSampler, symbols,
                     ops=None, trace=None):
    """Backward search that also returns one cell (j, SA[j]) of the interval.

    Returns ``(range, anchor)``; ``anchor`` is None when the pattern does not
    occur.  ``trace``, when a list, receives ``(i, range, anchor)`` after every
    step so callers can check the toe-hold invariant.
    """
    n = rlfm.n
    rng = SARange(1, n)
    anchor = None
    for i in range(len(symbols) - 1, -1, -1):
        c = symbols[i]
        new = rlfm.backward_step(rng, c, ops)
        if new.empty:
            return new, None
        if anchor is not None and rlfm.access_bwt(anchor.j, ops) == c:
            v = anchor.sa_j - 1 if anchor.sa_j > 1 else n
            anchor = Anchor(rlfm.lf(anchor.j, ops), v)
        else:
            if ops is not None:
                ops["pred_R"] += 1
            q, v = toehold.per_symbol[c].pred(rng.ep)
            anchor = Anchor(rlfm.lf(q, ops), v)
        rng = new
        if trace is not None:
            trace.append((i, rng, anchor))
    return rng, anchor


class PhraseTable:
    """Phrase starts i (i = 1, or T[i] sits at a run extreme) with N[i]."""

    def __init__(self, n, starts: PredSet):
        self.n = n
        self.starts = starts

    @classmethod
    def from_bundle(cls, bundle) -> "PhraseTable":
        n, sa, isa, runs = bundle.n, bundle.sa, bundle.isa, bundle.runs
        extreme = set()
        for run in runs:
            extreme.add(run.start)
            extreme.add(run.end)
        pairs = []
        for i in range(1, n + 1):
            q = isa[i + 1] if i < n else isa[1]  # BWT position of T[i]
            if i == 1 or q in extreme:
                left = sa[q - 1] if q > 1 else SENTINEL
                right = sa[q + 1] if q < n else SENTINEL
                pairs.append((i, (left, right)))
        return cls(n, PredSet.from_pairs(pairs, n))

    def __len__(self):
        return len(self.starts)

    def neighbors(self, sa_p: int):
        """(SA[p-1], SA[p+1]) given SA[p]; SENTINEL where the cell does not exist."""
        n = self.n
        if not 1 <= sa_p <= n:
            raise IndexError(f"SA value {sa_p} outside [1, {n}]")
        k = sa_p - 1 if sa_p > 1 else n
        i, (x, y) = self.starts.pred(k)
        d = k - i
        return (x + d if x != SENTINEL else SENTINEL,
                y + d if y != SENTINEL else SENTINEL)

    def to_arrays(self):
        return [[self.n], self.starts.keys,
                [x for x, _ in self.starts.payloads],
                [y for _, y in self.starts.payloads]]

    @classmethod
    def from_arrays(cls, arrays):
        (n,), keys, left, right = arrays
        return cls(n, PredSet(keys, list(zip(left, right)), n))


class KSampler:
    """Samples within distance ``s`` of run borders: W, P+, P-, f and LCP'."""

    def __init__(self, n, s, w, lcp_prime, plus: PredSet, minus: PredSet):
        self.n = n
        self.s = s
        self.w = w
        self.lcp_prime = lcp_prime
        self.plus = plus
        self.minus = minus

    @classmethod
    def from_bundle(cls, bundle, s: int = 1) -> "KSampler":
        if s < 1:
            raise ValueError("sampling radius s must be >= 1")
        n, sa, lcp = bundle.n, bundle.sa, bundle.lcp
        w, lcp_prime, plus, minus = [], [], [], []
        for run in bundle.runs:
            for q in range(run.start, run.end + 1):
                to_end = run.end - q + 1  # distance 1 on the border itself
                from_start = q - run.start + 1
                if to_end > s and from_start > s:
                    continue
                idx = len(w)
                w.append(sa[q] - 1)
                lcp_prime.append(lcp[q])
                if to_end <= s:
                    plus.append((sa[q] - 1, idx))
                if from_start <= s:
                    minus.append((sa[q] - 1, idx))
        return cls(n, s, w, lcp_prime,
                   PredSet.from_pairs(plus, n), PredSet.from_pairs(minus, n))

    def _check(self, sa_p, count):
        if not 1 <= sa_p <= self.n:
            raise IndexError(f"SA value {sa_p} outside [1, {self.n}]")
        if not 0 <= count <= self.s:
            raise ValueError(f"block size {count} outside [0, {self.s}]")

    def _forward_base(self, sa_p):
        hit = self.plus.pred_strict(sa_p)
        assert hit is not None, "malformed sampler: no P+ predecessor"
        return hit[0], hit[1]

    def _backward_base(self, sa_p):
        hit = self.minus.pred_strict(sa_p)
        assert hit is not None, "malformed sampler: no P- predecessor"
        return hit[0], hit[1]

    def sa_block(self, sa_p: int, count: int, forward: bool = True) -> list:
        """[SA[p+1], ..., SA[p+count]] (or SA[p-1], ..., SA[p-count] backwards)."""
        self._check(sa_p, count)
        if forward:
            i, f = self._forward_base(sa_p)
            if f + count >= len(self.w):
                raise IndexError("block runs past SA[n]")
            shift = sa_p - i
            return [self.w[f + j] + shift for j in range(1, count + 1)]
        i, f = self._backward_base(sa_p)
        if f - count < 0:
            raise IndexError("block runs before SA[1]")
        shift = sa_p - i
        return [self.w[f - j] + shift for j in range(1, count + 1)]

    def lcp_block(self, sa_p: int, count: int):
        """(LCP[p-count+1..p], LCP[p+1..p+count]) in increasing SA order."""
        self._check(sa_p, count)
        i, f = self._backward_base(sa_p)
        if f - count + 1 < 0:
            raise IndexError("block runs before LCP[1]")
        delta = sa_p - i - 1
        left = [self.lcp_prime[f - j] - delta for j in range(count - 1, -1, -1)]
        i, f = self._forward_base(sa_p)
        if f + count >= len(self.w):
            raise IndexError("block runs past LCP[n]")
        delta = sa_p - i - 1
        right = [self.lcp_prime[f + j] - delta for j in range(1, count + 1)]
        return left, right

    def to_arrays(self):
        return [[self.n, self.s], self.w, self.lcp_prime,
                self.plus.keys, self.plus.payloads,
                self.minus.keys, self.minus.payloads]

    @classmethod
    def from_arrays(cls, arrays):
        (n, s), w, lcp_prime, pk, pf, mk, mf = arrays
        return cls(n, s, w, lcp_prime, PredSet(pk, pf, n), PredSet(mk, mf, n))


def expand(ksampler: KSampler, rng: SARange, anchor: Anchor, ops=None) -> list:
    """All SA values in ``rng`` starting from the anchor cell, in SA order."""
    s = ksampler.s
    right, v = [], anchor.sa_j
    need = rng.ep - anchor.j
    while need > 0:
        take = min(s, need)
        if ops is not None:
            ops["block_fetch"] += 1
        block = ksampler.sa_block(v, take, forward=True)
        right.extend(block)
        v = block[-1]
        need -= take
    left, v = [], anchor.sa_j
    need = anchor.j - rng.sp
    while need > 0:
        take = min(s, need)
        if ops is not None:
            ops["block_fetch"] += 1
        block = ksampler.sa_block(v, take, forward=False)
        left.extend(block)
        v = block[-1]
        need -= take
    left.reverse()
    return left + [anchor.sa_j] + right


def locate_all(rlfm, toehold, ksampler, symbols, ops=None, trace=None) -> list:
    """Sorted text positions of every occurrence of an encoded pattern."""
    rng, anchor = count_and_anchor(rlfm, toehold, symbols, ops, trace)
    if anchor is None:
        return []
    return sorted(expand(ksampler, rng, anchor, ops))


def sa_neighbors_phrase(phrases: PhraseTable, sa_p: int):
    return phrases.neighbors(sa_p)


def sa_block(ksampler: KSampler, sa_p: int, count: int, forward: bool = True) -> list:
    return ksampler.sa_block(sa_p, count, forward)


def lcp_block(ksampler: KSampler, sa_p: int, count: int):
    return ksampler.lcp_block(sa_p, count)
