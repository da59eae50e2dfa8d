"""Karp-Rabin fingerprints of arbitrary substrings from a leveled block structure.

``kappa(S) = sum(S[k] * c**(len(S) - k)) mod q`` over effective symbols.

Level 0 cuts the text into blocks of ``B`` symbols and keeps the fingerprint
of every prefix ending at a block boundary.  Level ``i >= 1`` keeps, for every
sampled position ``j``, the blocks ``X1 = T[j-s_i..j-1]`` and
``X2 = T[j..j+s_i-1]`` split into halves.  Each half (and each level-0 block)
records a primary occurrence ``X1'[L..s] X2'[1..L-1]`` around a sampled ``j'``
one level down, plus the fingerprints of both pieces, so a prefix or suffix
query on a block turns into one prefix or suffix query a level below.
Positions are read cyclically (T[0] = T[n], T[n + 1] = T[1]) so every block
has full length; a block that wraps contains T[n], which is always sampled.
"""

from __future__ import annotations

import random

from .extractor import PrimaryFinder

MERSENNE_61 = (1 << 61) - 1
DEFAULT_SEED = 0x5EED
AUDIT_THRESHOLD = 1 << 14

ONE = (0, 1, 1)  # (kappa, c^len, c^-len) of the empty string


def kappa_direct(symbols, base: int, modulus: int = MERSENNE_61) -> int:
    h = 0
    for x in symbols:
        h = (h * base + x) % modulus
    return h


class _Fp:
    """Arithmetic on (kappa, c^len, c^-len) triples."""

    def __init__(self, q):
        self.q = q

    def cat(self, a, b):
        q = self.q
        return ((a[0] * b[1] + b[0]) % q, a[1] * b[1] % q, a[2] * b[2] % q)

    def drop_suffix(self, whole, suffix):
        q = self.q
        return ((whole[0] - suffix[0]) * suffix[2] % q,
                whole[1] * suffix[2] % q, whole[2] * suffix[1] % q)

    def drop_prefix(self, whole, prefix):
        q = self.q
        pw = whole[1] * prefix[2] % q
        return ((whole[0] - prefix[0] * pw) % q, pw, whole[2] * prefix[1] % q)


class FingerprintIndex:
    def __init__(self, n, block, modulus, base, seed, samples, exps, prefix,
                 top, levels, leaves):
        self.n = n
        self.block = block
        self.q = modulus
        self.c = base
        self.seed = seed
        self.samples = samples
        self.exps = exps      # length -> (c^len, c^-len) for every stored length
        self.prefix = prefix  # prefix[k] = kappa(T[1..k*B])
        self.top = top        # level-0 blocks, as nodes (or (kappa,) when B == 1)
        self.levels = levels  # levels[i - 1][jidx] = 4 nodes (X1 halves, X2 halves)
        self.leaves = leaves  # leaves[jidx] = (T[j-1], T[j]) at the unit-width level
        self._fp = _Fp(modulus)

    # nodes are (kappa, jidx', L, kappa_piece1, kappa_piece2)

    @property
    def num_levels(self) -> int:
        return len(self.levels) + 2  # level 0, halved levels, unit level

    @classmethod
    def build(cls, bundle, seed: int = DEFAULT_SEED, modulus: int = MERSENNE_61,
              finder: PrimaryFinder | None = None,
              audit_threshold: int = AUDIT_THRESHOLD, max_retries: int = 16):
        n, r, t = bundle.n, bundle.r, bundle.text
        finder = finder or PrimaryFinder(bundle)
        samples = finder.samples
        where = {p: k for k, p in enumerate(samples)}
        block = 1 << max(0, (-(-n // r) - 1).bit_length())

        for attempt in range(max_retries):
            base = random.Random(seed + attempt).randrange(1, modulus)
            if n > audit_threshold or collision_free(t, base, modulus):
                seed += attempt
                break
        else:
            raise RuntimeError("no collision-free base found")

        cyc = t[1:] + t[1:] + t[1:2]
        pre = [0] * (len(cyc) + 1)
        for k, x in enumerate(cyc):
            pre[k + 1] = (pre[k] * base + x) % modulus
        exps = {}

        def power(ln):
            e = exps.get(ln)
            if e is None:
                p = pow(base, ln, modulus)
                e = exps[ln] = (p, pow(p, -1, modulus))
            return e

        def kap(x, ln):
            """kappa of the cyclic substring starting at text position x."""
            a = (x - 1) % n
            power(ln)
            return (pre[a + ln] - pre[a] * exps[ln][0]) % modulus

        def node(x, ln):
            a = (x - 1) % n + 1
            if a + ln - 1 >= n:
                start, p = a, n  # covers T[n] (possibly wrapping)
            else:
                start, p = finder.find_cached(a, a + ln - 1)
            piece1 = p - start
            return (kap(x, ln), where[p], ln - piece1 + 1,
                    kap(start, piece1), kap(p, ln - piece1))

        power(0)
        power(1)
        nblocks = -(-n // block)
        for k in range(1, nblocks + 1):
            power(k * block)
        prefix = [kap(1, k * block) for k in range(n // block + 1)]
        if block == 1:
            top = [(x,) for x in t[1:n + 1]]
        else:
            top = [node(k * block + 1, block) for k in range(nblocks)]

        levels = []
        width = block
        while width >= 2:
            half = width // 2
            levels.append([(node(j - width, half), node(j - half, half),
                            node(j, half), node(j + half, half)) for j in samples])
            width = half
        leaves = [(t[j - 1] if j > 1 else t[n], t[j]) for j in samples]
        return cls(n, block, modulus, base, seed, samples, exps, prefix,
                   top, levels, leaves)

    # -- queries ---------------------------------------------------------

    def _trip(self, kappa, ln):
        c, ci = self.exps[ln]
        return (kappa, c, ci)

    def _full(self, node, h):
        return self._trip(node[0], h)

    def _leaf(self, jidx, k):
        return self._trip(self.leaves[jidx][k - 1], 1)

    def _halves(self, level, jidx, k):
        nodes = self.levels[level - 1][jidx]
        return nodes[2 * k - 2], nodes[2 * k - 1]

    def _prefix_block(self, level, jidx, k, ln, tally):
        if ln == 0:
            return ONE
        width = self.block >> (level - 1)
        if width == 1:
            return self._leaf(jidx, k)
        h = width // 2
        first, second = self._halves(level, jidx, k)
        if ln <= h:
            return self._prefix_node(first, level + 1, h, ln, tally)
        return self._fp.cat(self._full(first, h),
                            self._prefix_node(second, level + 1, h, ln - h, tally))

    def _suffix_block(self, level, jidx, k, ln, tally):
        if ln == 0:
            return ONE
        width = self.block >> (level - 1)
        if width == 1:
            return self._leaf(jidx, k)
        h = width // 2
        first, second = self._halves(level, jidx, k)
        if ln <= h:
            return self._suffix_node(second, level + 1, h, ln, tally)
        return self._fp.cat(self._suffix_node(first, level + 1, h, ln - h, tally),
                            self._full(second, h))

    def _range_block(self, level, jidx, k, a, b, tally):
        width = self.block >> (level - 1)
        if a == 1:
            return self._prefix_block(level, jidx, k, b, tally)
        if b == width:
            return self._suffix_block(level, jidx, k, width - a + 1, tally)
        h = width // 2
        first, second = self._halves(level, jidx, k)
        if b <= h:
            return self._range_node(first, level + 1, h, a, b, tally)
        if a > h:
            return self._range_node(second, level + 1, h, a - h, b - h, tally)
        return self._fp.cat(self._suffix_node(first, level + 1, h, h - a + 1, tally),
                            self._prefix_node(second, level + 1, h, b - h, tally))

    # a node of length h occurs as X1'[L..h] X2'[1..L-1] one level down

    def _prefix_node(self, node, child, h, ln, tally):
        if ln == 0:
            return ONE
        if ln == h:
            return self._full(node, h)
        tally[0] += 1
        _, jp, L, k1, _ = node
        p1 = h - L + 1
        piece1 = self._trip(k1, p1)
        if ln >= p1:
            return self._fp.cat(piece1, self._prefix_block(child, jp, 2, ln - p1, tally))
        return self._fp.drop_suffix(piece1, self._suffix_block(child, jp, 1, p1 - ln, tally))

    def _suffix_node(self, node, child, h, ln, tally):
        if ln == 0:
            return ONE
        if ln == h:
            return self._full(node, h)
        tally[0] += 1
        _, jp, L, _, k2 = node
        p2 = L - 1
        piece2 = self._trip(k2, p2)
        if ln >= p2:
            return self._fp.cat(self._suffix_block(child, jp, 1, ln - p2, tally), piece2)
        return self._fp.drop_prefix(piece2, self._prefix_block(child, jp, 2, p2 - ln, tally))

    def _range_node(self, node, child, h, a, b, tally):
        if a == 1:
            return self._prefix_node(node, child, h, b, tally)
        if b == h:
            return self._suffix_node(node, child, h, h - a + 1, tally)
        tally[0] += 1
        _, jp, L, _, _ = node
        p1 = h - L + 1
        if b <= p1:
            return self._range_block(child, jp, 1, L + a - 1, L + b - 1, tally)
        if a > p1:
            return self._range_block(child, jp, 2, a - p1, b - p1, tally)
        return self._fp.cat(self._suffix_block(child, jp, 1, p1 - a + 1, tally),
                            self._prefix_block(child, jp, 2, b - p1, tally))

    def _range(self, i, j, tally):
        block = self.block
        if block == 1:
            return self._fp.drop_prefix(self._trip(self.prefix[j], j),
                                        self._trip(self.prefix[i - 1], i - 1))
        a, b = (i - 1) // block, (j - 1) // block
        if a == b:
            return self._range_node(self.top[a], 1, block, i - a * block,
                                    j - a * block, tally)
        head = self._suffix_node(self.top[a], 1, block, (a + 1) * block - i + 1, tally)
        tail = self._prefix_node(self.top[b], 1, block, j - b * block, tally)
        if b > a + 1:
            whole = self._fp.drop_prefix(self._trip(self.prefix[b], b * block),
                                         self._trip(self.prefix[a + 1], (a + 1) * block))
            head = self._fp.cat(head, whole)
        return self._fp.cat(head, tail)

    def kappa_range(self, i: int, j: int, ops=None) -> int:
        """kappa(T[i..j]); ``j == i - 1`` denotes the empty string."""
        if not (1 <= i <= self.n + 1 and i - 1 <= j <= self.n):
            raise IndexError(f"range [{i}, {j}] outside [1, {self.n}]")
        if j < i:
            return 0
        tally = [0]
        value = self._range(i, j, tally)[0]
        if ops is not None:
            ops["hops"] += tally[0]
            ops["max_hops"] = max(ops["max_hops"], tally[0])
        return value

    def kappa_prime(self, i: int, j: int, ops=None):
        """Fingerprints of the longest power-of-two prefix and suffix of T[i..j]."""
        if not 1 <= i <= j <= self.n:
            raise IndexError(f"range [{i}, {j}] outside [1, {self.n}]")
        p = 1 << ((j - i + 1).bit_length() - 1)
        return (self.kappa_range(i, i + p - 1, ops), self.kappa_range(j - p + 1, j, ops))

    @property
    def hop_bound(self) -> int:
        return 2 * self.num_levels

    def audit(self, text) -> None:
        """Re-check every stored fingerprint against direct evaluation (1-based ``text``)."""
        n, q, c = self.n, self.q, self.c
        cyc = list(text[1:n + 1]) * 3

        def direct(x, ln):
            a = (x - 1) % n
            return kappa_direct(cyc[a:a + ln], c, q)

        for ln, (p, pi) in self.exps.items():
            assert p == pow(c, ln, q) and p * pi % q == 1
        for k, v in enumerate(self.prefix):
            assert v == kappa_direct(cyc[:k * self.block], c, q)

        def check(x, h, node):
            kappa, jp, L, k1, k2 = node
            p = self.samples[jp]
            start = p - h + L - 1
            assert 2 <= L <= h + 1
            assert kappa == direct(x, h) == direct(start, h)
            assert k1 == direct(start, h - L + 1) and k2 == direct(p, L - 1)

        if self.block > 1:
            for k, node in enumerate(self.top):
                check(k * self.block + 1, self.block, node)
        width = self.block
        for level in self.levels:
            h = width // 2
            for j, nodes in zip(self.samples, level):
                for x, node in zip((j - width, j - h, j, j + h), nodes):
                    check(x, h, node)
            width = h
        for j, (left, right) in zip(self.samples, self.leaves):
            assert left == cyc[(j - 2) % n] and right == cyc[j - 1]

    def stored_words(self) -> int:
        nodes = sum(4 * len(level) for level in self.levels)
        return (5 * nodes + len(self.top) * (5 if self.block > 1 else 1)
                + len(self.prefix) + 3 * len(self.exps) + 2 * len(self.leaves))

    def to_arrays(self):
        lengths = sorted(self.exps)
        out = [[self.n, self.block, self.q, self.c, self.seed, len(self.levels)],
               self.samples, self.prefix, lengths,
               [self.exps[ln][0] for ln in lengths], [self.exps[ln][1] for ln in lengths],
               [x for node in self.top for x in node]]
        for level in self.levels:
            out.append([x for nodes in level for node in nodes for x in node])
        out.append([x for pair in self.leaves for x in pair])
        return out

    @classmethod
    def from_arrays(cls, arrays):
        (n, block, q, c, seed, nlevels), samples, prefix, lengths, pw, inv, top = arrays[:7]
        exps = {ln: (a, b) for ln, a, b in zip(lengths, pw, inv)}
        width = 1 if block == 1 else 5
        top = [tuple(top[k:k + width]) for k in range(0, len(top), width)]
        levels = []
        for flat in arrays[7:7 + nlevels]:
            nodes = [tuple(flat[k:k + 5]) for k in range(0, len(flat), 5)]
            levels.append([tuple(nodes[k:k + 4]) for k in range(0, len(nodes), 4)])
        flat = arrays[7 + nlevels]
        leaves = [(flat[k], flat[k + 1]) for k in range(0, len(flat), 2)]
        return cls(n, block, q, c, seed, list(samples), exps, list(prefix),
                   top, levels, leaves)


def collision_free(text, base: int, modulus: int = MERSENNE_61) -> bool:
    """True when no two distinct power-of-two-length substrings share a fingerprint.

    ``text`` is 1-based.
    """
    n = len(text) - 1
    pre = [0] * (n + 1)
    for k in range(1, n + 1):
        pre[k] = (pre[k - 1] * base + text[k]) % modulus
    ln = 1
    while ln <= n:
        cl = pow(base, ln, modulus)
        seen = {}
        for x in range(n - ln + 1):
            h = (pre[x + ln] - pre[x] * cl) % modulus
            y = seen.setdefault(h, x)
            if y != x and text[y + 1:y + 1 + ln] != text[x + 1:x + 1 + ln]:
                return False
        ln *= 2
    return True


def kappa_range(index: FingerprintIndex, i: int, j: int) -> int:
    return index.kappa_range(i, j)


def kappa_prime(index: FingerprintIndex, i: int, j: int):
    return index.kappa_prime(i, j)
