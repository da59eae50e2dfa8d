import random

import pytest
from hypothesis import strategies as st

ALPHABETS = {2: b"ab", 4: b"acgt", 16: b"abcdefghijklmnop"}


def repetitive_text(rng: random.Random, n_max: int, sigma: int) -> bytes:
    """1-20 mutated copies of a random seed string, cut to at most n_max bytes."""
    alphabet = ALPHABETS[sigma]
    copies = rng.randint(1, 20)
    seed_len = max(1, rng.randint(1, max(1, n_max // copies)))
    seed = bytearray(rng.choice(alphabet) for _ in range(seed_len))
    out = bytearray()
    for _ in range(copies):
        piece = bytearray(seed)
        for _ in range(rng.randint(0, 3)):
            k = rng.randrange(len(piece))
            op = rng.random()
            if op < 0.6:
                piece[k] = rng.choice(alphabet)
            elif op < 0.8:
                piece.insert(k, rng.choice(alphabet))
            elif len(piece) > 1:
                del piece[k]
        out += piece
    return bytes(out[:n_max]) or alphabet[:1]


def corpus(seed: int, count: int, n_max: int, sigmas=(2, 4, 16)) -> list:
    rng = random.Random(seed)
    return [repetitive_text(rng, rng.randint(1, n_max), rng.choice(sigmas))
            for _ in range(count)]


def patterns_for(rng: random.Random, raw: bytes, count: int, max_len: int = 12) -> list:
    """Half substrings of ``raw``, half random strings over its bytes plus one stranger."""
    out = []
    pool = sorted(set(raw)) + [ord("z")]
    for k in range(count):
        m = rng.randint(1, max_len)
        if k % 2 == 0:
            i = rng.randint(0, max(0, len(raw) - m))
            out.append(raw[i:i + m] or raw[:1])
        else:
            out.append(bytes(rng.choice(pool) for _ in range(m)))
    return out


def small_texts(alphabet=b"abc", max_size=80):
    return st.lists(st.sampled_from(list(alphabet)), min_size=1,
                    max_size=max_size).map(bytes)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS):
            terminalreporter.write_line(line)
