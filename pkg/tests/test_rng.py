"""Seeded stream determinism, chunking invariance, fork independence."""

import hmac

import pytest
from hypothesis import given
from hypothesis import strategies as st

from silmarils.rng import SEED_BYTES, Rng

SEED = bytes(range(32))


def test_identical_seeds_identical_streams():
    assert Rng(SEED).take(1000) == Rng(SEED).take(1000)


def test_different_seeds_differ():
    other = bytes([SEED[0] ^ 1]) + SEED[1:]
    assert Rng(SEED).take(64) != Rng(other).take(64)


@given(chunks=st.lists(st.integers(min_value=0, max_value=200), max_size=20))
def test_chunking_never_changes_the_stream(chunks):
    total = sum(chunks)
    whole = Rng(SEED).take(total)
    rng = Rng(SEED)
    pieces = b"".join(rng.take(n) for n in chunks)
    assert pieces == whole


def test_stream_matches_direct_hmac_construction():
    # First 128 bytes are HMAC(seed, counter=0) || HMAC(seed, counter=1).
    expect = hmac.digest(SEED, (0).to_bytes(8, "big"), "sha512") + hmac.digest(
        SEED, (1).to_bytes(8, "big"), "sha512"
    )
    assert Rng(SEED).take(128) == expect


def test_fork_is_deterministic_and_label_separated():
    a = Rng(SEED).fork(b"left").take(64)
    b = Rng(SEED).fork(b"left").take(64)
    c = Rng(SEED).fork(b"right").take(64)
    assert a == b
    assert a != c


def test_fork_does_not_disturb_parent():
    lone = Rng(SEED)
    expected = lone.take(64)
    rng = Rng(SEED)
    head = rng.take(32)
    rng.fork(b"child")
    tail = rng.take(32)
    assert head + tail == expected


def test_fork_labels_are_framed_injectively():
    # (b"ab", b"c") and (b"a", b"bc") must not collide.
    r = Rng(SEED)
    assert r.fork(b"ab").fork(b"c").take(16) != r.fork(b"a").fork(b"bc").take(16)


def test_seed_property_and_types():
    rng = Rng(SEED)
    assert rng.seed == SEED
    assert Rng(bytearray(SEED)).seed == SEED
    with pytest.raises(TypeError):
        Rng("not bytes")
    with pytest.raises(ValueError):
        rng.take(-1)
    assert rng.take(0) == b""


def test_from_system_is_fresh():
    a, b = Rng.from_system(), Rng.from_system()
    assert len(a.seed) == SEED_BYTES
    assert a.take(32) != b.take(32)
