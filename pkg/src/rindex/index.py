"""All structures of one text bundled behind a byte-level query interface."""

from __future__ import annotations

from .errors import InputError, RIndexError
from .extractor import ExtractIndex, PrimaryFinder
from .fingerprint import DEFAULT_SEED, MERSENNE_61, FingerprintIndex
from .locator import KSampler, PhraseTable, ToeholdSampler, count_and_anchor, expand
from .rlfm import RlfmIndex
from .text_core import DEFAULT_TERMINATOR, AlphabetMap, build_bundle

WORD_BYTES = 8


class RIndex:
    def __init__(self, alphabet: AlphabetMap, rlfm: RlfmIndex, toehold: ToeholdSampler,
                 phrases: PhraseTable, ksampler: KSampler,
                 extractor: ExtractIndex | None = None,
                 fingerprint: FingerprintIndex | None = None,
                 raw: bytes | None = None, alpha: int = 8, fp_seed: int = DEFAULT_SEED):
        self.alphabet = alphabet
        self.rlfm = rlfm
        self.toehold = toehold
        self.phrases = phrases
        self.ksampler = ksampler
        self.extractor = extractor
        self.fingerprint = fingerprint
        self.raw = raw
        self.alpha = alpha
        self.fp_seed = fingerprint.seed if fingerprint is not None else fp_seed

    @classmethod
    def build(cls, data, s: int = 1, alpha: int = 8, fp_seed: int = DEFAULT_SEED,
              store_text: bool = False, with_extract: bool = True,
              terminator: int = DEFAULT_TERMINATOR) -> "RIndex":
        """Index raw bytes (or an already built bundle)."""
        bundle = data if hasattr(data, "sa") else build_bundle(data, terminator)
        rlfm = RlfmIndex.from_bundle(bundle)
        toehold = ToeholdSampler.from_bundle(bundle)
        extractor = fingerprint = None
        if with_extract:
            finder = PrimaryFinder(bundle, rlfm, toehold)
            extractor = ExtractIndex.build(bundle, alpha, finder)
            fingerprint = FingerprintIndex.build(bundle, fp_seed, finder=finder)
        return cls(bundle.alphabet, rlfm, toehold, PhraseTable.from_bundle(bundle),
                   KSampler.from_bundle(bundle, s), extractor, fingerprint,
                   bundle.raw if store_text else None, alpha, fp_seed)

    @property
    def n(self) -> int:
        return self.rlfm.n

    @property
    def r(self) -> int:
        return self.rlfm.r

    @property
    def s(self) -> int:
        return self.ksampler.s

    @property
    def fp_modulus(self) -> int:
        return self.fingerprint.q if self.fingerprint is not None else MERSENNE_61

    def _encode(self, pattern: bytes):
        if not pattern:
            raise InputError("empty pattern")
        return self.alphabet.encode(pattern)

    def count(self, pattern: bytes, ops=None) -> int:
        symbols = self._encode(pattern)
        if symbols is None:
            return 0
        return self.rlfm.count(symbols, ops)

    def locate(self, pattern: bytes, ops=None, sort: bool = True) -> list:
        """Occurrence positions; SA order unless ``sort``."""
        symbols = self._encode(pattern)
        if symbols is None:
            return []
        rng, anchor = count_and_anchor(self.rlfm, self.toehold, symbols, ops)
        if anchor is None:
            return []
        found = expand(self.ksampler, rng, anchor, ops)
        return sorted(found) if sort else found

    def extract(self, i: int, length: int, ops=None) -> bytes:
        if length < 0 or i < 1 or i + length - 1 > self.n:
            raise IndexError(f"window ({i}, {length}) outside [1, {self.n}]")
        if self.extractor is not None:
            return self.alphabet.decode(self.extractor.extract(i, length, ops))
        if self.raw is not None:
            return self.raw[i - 1:i - 1 + length]
        raise RIndexError("index was built without extraction support")

    def kappa_range(self, i: int, j: int, ops=None) -> int:
        if self.fingerprint is None:
            raise RIndexError("index was built without fingerprint support")
        return self.fingerprint.kappa_range(i, j, ops)

    def text(self) -> bytes:
        """The full indexed text, terminator included."""
        if self.raw is not None:
            return self.raw
        if self.extractor is not None:
            return self.extract(1, self.n)
        return self.alphabet.decode(invert_bwt(self.rlfm))

    def structure_sizes(self) -> dict:
        """Approximate bytes per structure, counting one word per stored integer."""
        def words(arrays):
            return sum(len(a) for a in arrays)

        sizes = {
            "rlfm": words(self.rlfm.to_arrays()),
            "toehold": words(self.toehold.to_arrays()),
            "phrase_table": words(self.phrases.to_arrays()),
            "ksampler": words(self.ksampler.to_arrays()),
        }
        if self.extractor is not None:
            sizes["extract"] = words(self.extractor.to_arrays())
        if self.fingerprint is not None:
            sizes["fingerprint"] = words(self.fingerprint.to_arrays())
        return {k: v * WORD_BYTES for k, v in sizes.items()}


def invert_bwt(rlfm: RlfmIndex) -> list:
    """Recover the text symbols by walking LF from the terminator's row."""
    n = rlfm.n
    out = [0] * n
    out[n - 1] = 1
    q = 1  # row of the suffix "$", whose BWT char is T[n - 1]
    for k in range(n - 2, -1, -1):
        out[k] = rlfm.access_bwt(q)
        q = rlfm.lf(q)
    return out
