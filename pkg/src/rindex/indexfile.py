"""Binary index files.

Layout (little-endian throughout)::

    "RIK1"  u32 version
    u64 x 8 header: n, sigma, r, s, alpha, flags, fp_seed, fp_modulus
    u32 section count, then (u32 id, u64 offset, u64 length) per section
    sections

A section is a list of integer arrays: u64 array count, then for each array
a u64 length followed by that many int64 values.  Readers skip section ids
they do not know.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import IndexFormatError
from .extractor import ExtractIndex
from .fingerprint import FingerprintIndex
from .index import RIndex
from .locator import KSampler, PhraseTable, ToeholdSampler
from .rlfm import RlfmIndex
from .text_core import AlphabetMap

MAGIC = b"RIK1"
VERSION = 1

SEC_ALPHABET = 1
SEC_RLFM = 2
SEC_TOEHOLD = 3
SEC_PHRASES = 4
SEC_KSAMPLER = 5
SEC_EXTRACT = 6
SEC_FINGERPRINT = 7
SEC_TEXT = 8

FLAG_TEXT = 1
FLAG_EXTRACT = 2
FLAG_FINGERPRINT = 4

_HEADER = struct.Struct("<4sI8Q")
_ENTRY = struct.Struct("<IQQ")


def _pack_arrays(arrays) -> bytes:
    parts = [struct.pack("<Q", len(arrays))]
    for a in arrays:
        values = np.asarray(list(a), dtype="<i8")
        parts.append(struct.pack("<Q", len(values)))
        parts.append(values.tobytes())
    return b"".join(parts)


def _unpack_arrays(blob: bytes) -> list:
    try:
        (count,) = struct.unpack_from("<Q", blob, 0)
        pos, out = 8, []
        for _ in range(count):
            (ln,) = struct.unpack_from("<Q", blob, pos)
            pos += 8
            if pos + 8 * ln > len(blob):
                raise IndexFormatError("array runs past the end of its section")
            out.append(np.frombuffer(blob, dtype="<i8", count=ln, offset=pos).tolist())
            pos += 8 * ln
    except struct.error as exc:
        raise IndexFormatError(f"truncated section: {exc}") from None
    return out


def to_bytes(index: RIndex) -> bytes:
    flags = 0
    sections = {
        SEC_ALPHABET: [[index.alphabet.terminator], list(index.alphabet.symbols)],
        SEC_RLFM: index.rlfm.to_arrays(),
        SEC_TOEHOLD: index.toehold.to_arrays(),
        SEC_PHRASES: index.phrases.to_arrays(),
        SEC_KSAMPLER: index.ksampler.to_arrays(),
    }
    if index.extractor is not None:
        flags |= FLAG_EXTRACT
        sections[SEC_EXTRACT] = index.extractor.to_arrays()
    if index.fingerprint is not None:
        flags |= FLAG_FINGERPRINT
        sections[SEC_FINGERPRINT] = index.fingerprint.to_arrays()
    if index.raw is not None:
        flags |= FLAG_TEXT
        sections[SEC_TEXT] = [list(index.raw)]

    blobs = {sid: _pack_arrays(arrays) for sid, arrays in sections.items()}
    header = _HEADER.pack(MAGIC, VERSION, index.n, index.alphabet.sigma, index.r,
                          index.s, index.alpha, flags, index.fp_seed, index.fp_modulus)
    table_size = 4 + _ENTRY.size * len(blobs)
    offset = len(header) + table_size
    table = [struct.pack("<I", len(blobs))]
    for sid, blob in blobs.items():
        table.append(_ENTRY.pack(sid, offset, len(blob)))
        offset += len(blob)
    return header + b"".join(table) + b"".join(blobs.values())


def from_bytes(data: bytes) -> RIndex:
    if len(data) < _HEADER.size + 4:
        raise IndexFormatError("file too short for an index header")
    magic, version, n, sigma, r, s, alpha, flags, fp_seed, fp_modulus = \
        _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise IndexFormatError(f"bad magic {magic!r}")
    if version != VERSION:
        raise IndexFormatError(f"unsupported format version {version} (expected {VERSION})")
    (count,) = struct.unpack_from("<I", data, _HEADER.size)
    pos = _HEADER.size + 4
    if pos + count * _ENTRY.size > len(data):
        raise IndexFormatError("truncated section table")
    sections = {}
    for _ in range(count):
        sid, offset, length = _ENTRY.unpack_from(data, pos)
        pos += _ENTRY.size
        if offset + length > len(data):
            raise IndexFormatError(f"section {sid} runs past the end of the file")
        if SEC_ALPHABET <= sid <= SEC_TEXT:  # unknown ids are skipped
            sections[sid] = _unpack_arrays(data[offset:offset + length])

    def need(sid):
        if sid not in sections:
            raise IndexFormatError(f"missing section {sid}")
        return sections[sid]

    try:
        (terminator,), symbols = need(SEC_ALPHABET)
        alphabet = AlphabetMap(terminator, tuple(symbols))
        rlfm = RlfmIndex.from_arrays(need(SEC_RLFM))
        toehold = ToeholdSampler.from_arrays(need(SEC_TOEHOLD))
        phrases = PhraseTable.from_arrays(need(SEC_PHRASES))
        ksampler = KSampler.from_arrays(need(SEC_KSAMPLER))
        extractor = fingerprint = raw = None
        if flags & FLAG_EXTRACT:
            extractor = ExtractIndex.from_arrays(need(SEC_EXTRACT))
        if flags & FLAG_FINGERPRINT:
            fingerprint = FingerprintIndex.from_arrays(need(SEC_FINGERPRINT))
        if flags & FLAG_TEXT:
            raw = bytes(need(SEC_TEXT)[0])
    except IndexFormatError:
        raise
    except (ValueError, TypeError, IndexError) as exc:
        raise IndexFormatError(f"malformed section contents: {exc}") from None
    if rlfm.n != n or rlfm.r != r or alphabet.sigma != sigma or ksampler.s != s:
        raise IndexFormatError("header disagrees with section contents")
    return RIndex(alphabet, rlfm, toehold, phrases, ksampler, extractor,
                  fingerprint, raw, alpha, fp_seed)


def save(index: RIndex, path) -> None:
    with open(path, "wb") as fh:
        fh.write(to_bytes(index))


def load(path) -> RIndex:
    with open(path, "rb") as fh:
        return from_bytes(fh.read())
