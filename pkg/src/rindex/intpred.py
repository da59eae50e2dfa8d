"""Static predecessor sets over sorted integer keys with attached payloads.

Binary search over a sorted list; every sampling structure in the index is
one of these.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right


class PredSet:
    __slots__ = ("keys", "payloads", "universe_hint")

    def __init__(self, keys, payloads=None, universe_hint=None):
        keys = list(keys)
        if any(a >= b for a, b in zip(keys, keys[1:])):
            raise ValueError("keys must be strictly increasing")
        if payloads is None:
            payloads = [None] * len(keys)
        payloads = list(payloads)
        if len(payloads) != len(keys):
            raise ValueError("keys and payloads differ in length")
        self.keys = keys
        self.payloads = payloads
        self.universe_hint = universe_hint if universe_hint is not None else (
            keys[-1] if keys else 0)

    @classmethod
    def from_pairs(cls, pairs, universe_hint=None) -> "PredSet":
        pairs = sorted(pairs)
        return cls([k for k, _ in pairs], [v for _, v in pairs], universe_hint)

    def __len__(self):
        return len(self.keys)

    def __iter__(self):
        return zip(self.keys, self.payloads)

    def __repr__(self):
        return f"PredSet({len(self.keys)} keys, universe={self.universe_hint})"

    def pred(self, x):
        """Largest ``(key, payload)`` with key <= x, or None."""
        k = bisect_right(self.keys, x) - 1
        if k < 0:
            return None
        return self.keys[k], self.payloads[k]

    def pred_strict(self, x):
        """Largest ``(key, payload)`` with key < x, or None."""
        k = bisect_left(self.keys, x) - 1
        if k < 0:
            return None
        return self.keys[k], self.payloads[k]

    def succ(self, x):
        """Smallest ``(key, payload)`` with key >= x, or None."""
        k = bisect_left(self.keys, x)
        if k == len(self.keys):
            return None
        return self.keys[k], self.payloads[k]

    def pred_index(self, x) -> int:
        """Index of the predecessor of ``x`` in ``keys`` (-1 when absent)."""
        return bisect_right(self.keys, x) - 1
