import random
import struct

import pytest

from conftest import corpus, patterns_for
from rindex import indexfile
from rindex.errors import IndexFormatError, InputError, RIndexError
from rindex.index import RIndex, invert_bwt
from rindex.text_core import build_bundle, oracle_locate
from rindex.verify import verify_index


def test_byte_level_queries():
    idx = RIndex.build(b"banana")
    assert idx.count(b"ana") == 2 and idx.locate(b"ana") == [2, 4]
    assert idx.count(b"xyz") == 0 and idx.locate(b"xyz") == []
    assert idx.extract(2, 3) == b"ana"
    assert idx.text() == b"banana$"
    assert sorted(idx.locate(b"a", sort=False)) == [2, 4, 6]
    with pytest.raises(InputError):
        idx.count(b"")


def test_without_extraction():
    idx = RIndex.build(b"abcabcabc", with_extract=False)
    assert idx.text() == b"abcabcabc$"
    with pytest.raises(RIndexError):
        idx.extract(1, 2)
    with pytest.raises(RIndexError):
        idx.kappa_range(1, 2)
    stored = RIndex.build(b"abcabcabc", with_extract=False, store_text=True)
    assert stored.extract(4, 3) == b"abc"


def test_invert_bwt():
    b = build_bundle(b"mississippi")
    idx = RIndex.build(b)
    assert invert_bwt(idx.rlfm) == b.text[1:]


def behaviour(idx, raw, rng):
    out = []
    for p in patterns_for(rng, raw, 30):
        out.append((idx.count(p), idx.locate(p)))
    for _ in range(30):
        i = rng.randint(1, idx.n)
        ln = rng.randint(0, idx.n - i + 1)
        out.append(idx.extract(i, ln))
        if ln and idx.fingerprint is not None:
            out.append(idx.kappa_range(i, i + ln - 1))
    return out


@pytest.mark.parametrize("flags", [{}, {"store_text": True},
                                   {"with_extract": False, "store_text": True},
                                   {"s": 4, "alpha": 2}])
def test_file_round_trip(flags, tmp_path):
    for k, raw in enumerate(corpus(13, 10, 400)):
        idx = RIndex.build(raw, **flags)
        path = tmp_path / f"{k}.rik"
        indexfile.save(idx, path)
        back = indexfile.load(path)
        assert (back.extractor is None) == (idx.extractor is None)
        assert back.raw == idx.raw
        b = build_bundle(raw)
        assert behaviour(idx, b.raw, random.Random(k)) == behaviour(back, b.raw, random.Random(k))
        assert indexfile.to_bytes(back) == indexfile.to_bytes(idx)


def test_header_fields():
    idx = RIndex.build(b"abab" * 10, s=2, alpha=4, fp_seed=99)
    data = indexfile.to_bytes(idx)
    assert data[:4] == b"RIK1"
    assert struct.unpack_from("<I", data, 4) == (1,)
    n, sigma, r, s, alpha, flags, seed, q = struct.unpack_from("<8Q", data, 8)
    assert (n, sigma, r, s, alpha) == (41, 3, idx.r, 2, 4)
    assert seed == idx.fingerprint.seed and q == (1 << 61) - 1
    assert flags == indexfile.FLAG_EXTRACT | indexfile.FLAG_FINGERPRINT


def test_rejects_bad_files():
    data = indexfile.to_bytes(RIndex.build(b"abab"))
    with pytest.raises(IndexFormatError):
        indexfile.from_bytes(b"XXXX" + data[4:])
    with pytest.raises(IndexFormatError):
        indexfile.from_bytes(data[:4] + struct.pack("<I", 2) + data[8:])
    with pytest.raises(IndexFormatError):
        indexfile.from_bytes(data[:30])
    with pytest.raises(IndexFormatError):
        indexfile.from_bytes(data[:-9])


def test_skips_unknown_sections():
    idx = RIndex.build(b"abcab" * 5)
    data = indexfile.to_bytes(idx)
    (count,) = struct.unpack_from("<I", data, 72)
    extra = indexfile._pack_arrays([[1, 2, 3]])
    table_end = 76 + 20 * count
    shifted = []
    for k in range(count):
        sid, off, ln = struct.unpack_from("<IQQ", data, 76 + 20 * k)
        shifted.append(struct.pack("<IQQ", sid, off + 20, ln))
    new_entry = struct.pack("<IQQ", 99, len(data) + 20, len(extra))
    patched = (data[:72] + struct.pack("<I", count + 1) + b"".join(shifted) + new_entry
               + data[table_end:] + extra)
    back = indexfile.from_bytes(patched)
    assert back.locate(b"ab") == idx.locate(b"ab")


def test_verify_clean_and_dirty():
    raw = b"abracadabra" * 6
    idx = RIndex.build(raw, s=2)
    assert verify_index(idx, raw) == []
    assert verify_index(idx, raw + b"x")
    broken = RIndex.build(raw, s=2)
    broken.ksampler.w[0] += 1
    assert verify_index(broken, raw)


def test_locate_matches_oracle():
    rng = random.Random(1)
    for raw in corpus(14, 30, 300):
        idx = RIndex.build(raw, s=2)
        b = build_bundle(raw)
        for p in patterns_for(rng, b.raw, 10):
            assert idx.locate(p) == oracle_locate(b, p)
