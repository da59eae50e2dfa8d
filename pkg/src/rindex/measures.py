"""Repetitiveness measures: the BWT macro scheme, Lempel-Ziv parses, Fibonacci words."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InvalidSchemeError

MAX_FIBONACCI_K = 40  # |F_40| is about 10^8 bytes


@dataclass(frozen=True)
class Copy:
    target: int
    source: int
    length: int


@dataclass(frozen=True)
class MacroScheme:
    n: int
    copies: tuple        # Copy records, 1-based
    explicit: tuple      # (position, byte) pairs
    raw_copies: int = 0  # copies before dropping empty ones

    @property
    def size(self) -> int:
        return len(self.copies) + len(self.explicit)

    @property
    def size_raw(self) -> int:
        return self.raw_copies + len(self.explicit)


def bwt_macro_scheme(bundle) -> MacroScheme:
    """Copy every phrase through phi and store the char after it explicitly.

    Phrases start at SA[p] for every BWT run start p.  Within a phrase phi
    shifts positions uniformly, so T[phi(s_i)..phi(s_{i+1}-2)] is a copy of
    T[s_i..s_{i+1}-2]; the remaining targets T[phi(s_{i+1}-1)] are explicit.
    """
    n, sa, isa, raw = bundle.n, bundle.sa, bundle.isa, bundle.raw

    def phi(i):
        p = isa[i]
        return sa[p - 1] if p > 1 else sa[n]

    starts = sorted(sa[run.start] for run in bundle.runs) + [n + 1]
    copies, explicit = [], []
    for s, nxt in zip(starts, starts[1:]):
        length = nxt - 1 - s
        if length > 0:
            copies.append(Copy(phi(s), s, length))
        x = phi(nxt - 1)
        explicit.append((x, raw[x - 1]))
    return MacroScheme(n, tuple(copies), tuple(explicit), len(starts) - 1)


def _source_map(scheme: MacroScheme) -> list:
    """f[p] = source of position p, or 0 when p is explicit."""
    n = scheme.n
    f = [None] * (n + 1)
    for c in scheme.copies:
        if c.length < 1 or c.target < 1 or c.source < 1 or \
                c.target + c.length - 1 > n or c.source + c.length - 1 > n:
            raise InvalidSchemeError(f"copy {c} leaves [1, {n}]")
        for d in range(c.length):
            if f[c.target + d] is not None:
                raise InvalidSchemeError(f"position {c.target + d} is targeted twice")
            f[c.target + d] = c.source + d
    for p, _ in scheme.explicit:
        if not 1 <= p <= n or f[p] is not None:
            raise InvalidSchemeError(f"explicit position {p} is invalid or targeted twice")
        f[p] = 0
    missing = [p for p in range(1, n + 1) if f[p] is None]
    if missing:
        raise InvalidSchemeError(f"position {missing[0]} is never targeted")
    return f


def reconstruct(scheme: MacroScheme, n: int | None = None) -> bytes:
    """Replay the scheme; a copy cycle without an explicit seed is an error."""
    if n is not None and n != scheme.n:
        raise InvalidSchemeError(f"scheme covers {scheme.n} positions, not {n}")
    f = _source_map(scheme)
    out = [None] * (scheme.n + 1)
    for p, b in scheme.explicit:
        out[p] = b
    for p in range(1, scheme.n + 1):
        chain = []
        q = p
        while out[q] is None:
            chain.append(q)
            q = f[q]
            if len(chain) > scheme.n:
                raise InvalidSchemeError(f"position {p} lies on a copy cycle")
        for x in chain:
            out[x] = out[q]
    return bytes(out[1:])


def validate(scheme: MacroScheme, expected: bytes | None = None) -> None:
    """Raise InvalidSchemeError unless the scheme decodes (to ``expected``, if given)."""
    text = reconstruct(scheme)
    if expected is not None and text != expected:
        raise InvalidSchemeError("scheme decodes to a different text")
    for c in scheme.copies:
        if text[c.target - 1:c.target - 1 + c.length] != text[c.source - 1:c.source - 1 + c.length]:
            raise InvalidSchemeError(f"copy {c} does not match its source")


@dataclass(frozen=True)
class LzParse:
    phrases: tuple  # ints (literal bytes) or (source_start, length) pairs, 1-based
    overlap_allowed: bool

    def __len__(self):
        return len(self.phrases)

    def expand(self) -> bytes:
        out = bytearray()
        for ph in self.phrases:
            if isinstance(ph, int):
                out.append(ph)
            else:
                src, ln = ph
                for d in range(ln):  # byte by byte so overlapping copies work
                    out.append(out[src - 1 + d])
        return bytes(out)


def _longest_previous(raw: bytes, i: int, overlap: bool):
    """(source, length) of the longest factor at i occurring earlier; length 0 if none."""
    n = len(raw)

    def find(ln):
        end = i + ln - 1 if overlap else i
        return raw.find(raw[i:i + ln], 0, end)

    if i == 0 or find(1) < 0:
        return 0, 0
    good, bad = 1, None
    while bad is None and good < n - i:  # gallop, then bisect
        probe = min(2 * good, n - i)
        if find(probe) >= 0:
            good = probe
        else:
            bad = probe
    while bad is not None and bad - good > 1:
        mid = (good + bad) // 2
        if find(mid) >= 0:
            good = mid
        else:
            bad = mid
    return find(good), good


def lz_factorize(data, overlap_allowed: bool = True) -> LzParse:
    """Greedy left-to-right parse into letters and longest previous factors."""
    raw = bytes(getattr(data, "raw", data))
    phrases = []
    i = 0
    while i < len(raw):
        src, ln = _longest_previous(raw, i, overlap_allowed)
        if ln == 0:
            phrases.append(raw[i])
            i += 1
        else:
            phrases.append((src + 1, ln))
            i += ln
    return LzParse(tuple(phrases), overlap_allowed)


def fibonacci_text(k: int) -> bytes:
    """F_1 = a, F_2 = b, F_k = F_{k-1} F_{k-2}."""
    if k < 1:
        raise InputError("Fibonacci index must be >= 1")
    if k > MAX_FIBONACCI_K:
        raise InputError(f"F_{k} exceeds the memory budget (k <= {MAX_FIBONACCI_K})")
    a, b = b"a", b"b"
    if k == 1:
        return a
    for _ in range(k - 2):
        a, b = b, b + a
    return b


def stats_report(bundle) -> dict:
    scheme = bwt_macro_scheme(bundle)
    return {
        "n": bundle.n,
        "sigma": bundle.sigma,
        "r": bundle.r,
        "scheme_size": scheme.size,
        "z": len(lz_factorize(bundle.raw, True)),
        "z_no": len(lz_factorize(bundle.raw, False)),
        "scheme_size_raw": scheme.size_raw,
    }
