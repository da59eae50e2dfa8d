"""Run-length FM-index: BWT access, rank, LF and backward search in O(r) words.

Query functions take an optional ``ops`` counter (``collections.Counter``)
that records ``pred_E`` (predecessor queries on the run heads) and
``bsearch_L`` (binary searches on the per-symbol run lists).  The index
itself never mutates after construction.
"""

from __future__ import annotations

from bisect import bisect_left
from typing import NamedTuple

from .intpred import PredSet


class SARange(NamedTuple):
    """Suffix-array interval ``[sp, ep]``; empty when ``sp > ep``."""

    sp: int
    ep: int

    @property
    def empty(self) -> bool:
        return self.sp > self.ep

    def __len__(self):
        return max(0, self.ep - self.sp + 1)


class RlfmIndex:
    def __init__(self, n, sigma, run_starts, run_symbols, c_table, c_runs, d_table):
        # all tables are 1-based (index 0 padded) except D, which is 0-based
        self.n = n
        self.sigma = sigma
        self.r = len(run_starts) - 1
        self.run_symbols = run_symbols
        self.c_table = c_table
        self.c_runs = c_runs
        self.d_table = d_table
        self.heads = PredSet(run_starts[1:], range(1, self.r + 1), n)

        self.symbol_rank_lists = [[] for _ in range(sigma + 1)]
        for k in range(1, self.r + 1):
            self.symbol_rank_lists[run_symbols[k]].append(k)
        # lf_base[k] = D[C'[c] + rank_c(L', k - 1)], i.e. C[c] plus the c's before run k
        self.lf_base = [0] * (self.r + 1)
        seen = [0] * (sigma + 1)
        for k in range(1, self.r + 1):
            c = run_symbols[k]
            self.lf_base[k] = d_table[c_runs[c] + seen[c]]
            seen[c] += 1

    @classmethod
    def from_bundle(cls, bundle) -> "RlfmIndex":
        n, sigma, runs = bundle.n, bundle.sigma, bundle.runs
        run_starts = [0] + [run.start for run in runs]
        run_symbols = [0] + [run.symbol for run in runs]
        counts = [0] * (sigma + 2)
        run_counts = [0] * (sigma + 2)
        for run in runs:
            counts[run.symbol] += run.length
            run_counts[run.symbol] += 1
        c_table = [0] * (sigma + 2)
        c_runs = [0] * (sigma + 2)
        for c in range(2, sigma + 2):
            c_table[c] = c_table[c - 1] + counts[c - 1]
            c_runs[c] = c_runs[c - 1] + run_counts[c - 1]
        d_table = [0]
        for run in sorted(runs, key=lambda run: run.symbol):  # stable
            d_table.append(d_table[-1] + run.length)
        return cls(n, sigma, run_starts, run_symbols, c_table, c_runs, d_table)

    @property
    def run_starts(self) -> list:
        return [0] + self.heads.keys

    def run_length(self, k: int) -> int:
        keys = self.heads.keys
        nxt = keys[k] if k < self.r else self.n + 1
        return nxt - keys[k - 1]

    def _run_of(self, p: int, ops=None) -> int:
        if ops is not None:
            ops["pred_E"] += 1
        return self.heads.pred_index(p) + 1

    def access_bwt(self, p: int, ops=None) -> int:
        if not 1 <= p <= self.n:
            raise IndexError(f"BWT position {p} outside [1, {self.n}]")
        return self.run_symbols[self._run_of(p, ops)]

    def rank(self, c: int, i: int, ops=None) -> int:
        """Occurrences of symbol ``c`` in BWT[1..i]."""
        if not 1 <= c <= self.sigma:
            raise ValueError(f"symbol {c} outside [1, {self.sigma}]")
        if not 0 <= i <= self.n:
            raise IndexError(f"BWT position {i} outside [0, {self.n}]")
        k = self._run_of(i, ops)  # k == 0 when i == 0
        if ops is not None:
            ops["bsearch_L"] += 1
        before = bisect_left(self.symbol_rank_lists[c], k)  # rank_c(L', k - 1)
        d = self.d_table
        base = self.c_runs[c]
        result = d[base + before] - d[base]
        if k and self.run_symbols[k] == c:
            result += i - self.heads.keys[k - 1] + 1
        return result

    def lf(self, i: int, ops=None) -> int:
        if not 1 <= i <= self.n:
            raise IndexError(f"BWT position {i} outside [1, {self.n}]")
        k = self._run_of(i, ops)
        return self.lf_base[k] + i - self.heads.keys[k - 1] + 1

    def backward_step(self, rng: SARange, c: int, ops=None) -> SARange:
        """Interval of cP given the interval of P.

        Empty input intervals stay empty, so a fold never needs to branch.
        """
        if not 1 <= c <= self.sigma:
            return SARange(1, 0)
        base = self.c_table[c]
        sp = base + self.rank(c, rng.sp - 1, ops) + 1
        ep = base + self.rank(c, rng.ep, ops)
        if c == 1 and (rng.sp, rng.ep) != (1, self.n):
            # only the suffix "$" starts with the terminator; anything longer
            # would match a rotation, not the text
            return SARange(sp, sp - 1)
        return SARange(sp, ep)

    def backward_search(self, symbols, ops=None) -> SARange:
        rng = SARange(1, self.n)
        for c in reversed(symbols):
            rng = self.backward_step(rng, c, ops)
        return rng

    def count(self, symbols, ops=None) -> int:
        """Occurrences of an encoded pattern; exactly 2m predecessor queries."""
        return len(self.backward_search(symbols, ops))

    def bwt(self) -> list:
        """Expand the runs back into the full BWT (1-based)."""
        out = [0]
        for k in range(1, self.r + 1):
            out.extend([self.run_symbols[k]] * self.run_length(k))
        return out

    def to_arrays(self) -> list:
        return [[self.n, self.sigma], self.run_starts, self.run_symbols,
                self.c_table, self.c_runs, self.d_table]

    @classmethod
    def from_arrays(cls, arrays) -> "RlfmIndex":
        (n, sigma), starts, symbols, c_table, c_runs, d_table = arrays
        return cls(n, sigma, starts, symbols, c_table, c_runs, d_table)
