import numpy as np
import pytest

from palettecolor import rng


def test_mix64_known_distribution():
    # avalanche sanity: bits of mixed counters are balanced
    vals = rng.mix64(np.arange(1, 100_001, dtype=np.uint64))
    bits = np.unpackbits(vals.view(np.uint8))
    assert abs(bits.mean() - 0.5) < 0.005
    assert np.unique(vals).size == vals.size


def test_stream_keys_distinct_per_vertex_and_iteration():
    a = rng.stream_keys(7, 1, np.arange(1000))
    b = rng.stream_keys(7, 2, np.arange(1000))
    c = rng.stream_keys(8, 1, np.arange(1000))
    assert np.unique(a).size == 1000
    assert not np.array_equal(a, b)
    assert not np.array_equal(a, c)


def test_stream_keys_negative_seed_ok():
    assert np.array_equal(
        rng.stream_keys(-5, 1, [0, 1]), rng.stream_keys(-5, 1, [0, 1])
    )


def test_sample_distinct_shape_and_validity():
    keys = rng.stream_keys(3, 1, np.arange(500))
    out = rng.sample_distinct(keys, pool=40, k=7)
    assert out.shape == (500, 7)
    assert out.min() >= 0 and out.max() < 40
    assert np.all(out[:, 1:] > out[:, :-1])


def test_sample_distinct_full_pool_and_single():
    keys = rng.stream_keys(0, 1, np.arange(10))
    full = rng.sample_distinct(keys, pool=5, k=5)
    assert np.array_equal(full, np.tile(np.arange(5), (10, 1)))
    one = rng.sample_distinct(keys, pool=17, k=1)
    assert one.shape == (10, 1)


def test_sample_distinct_bad_args():
    keys = rng.stream_keys(0, 1, [0])
    with pytest.raises(ValueError):
        rng.sample_distinct(keys, pool=5, k=6)
    with pytest.raises(ValueError):
        rng.sample_distinct(keys, pool=5, k=0)


def test_sample_distinct_row_depends_only_on_key():
    keys = rng.stream_keys(9, 2, np.arange(100))
    batch = rng.sample_distinct(keys, pool=30, k=6)
    for v in (0, 17, 99):
        solo = rng.sample_distinct(keys[v : v + 1], pool=30, k=6)
        assert np.array_equal(solo[0], batch[v])


def test_sample_distinct_chunked_path_consistent():
    # a huge pool forces the row-chunked code path; results must not
    # depend on where chunk boundaries fall
    keys = rng.stream_keys(4, 1, np.arange(20))
    pool = 1 << 22
    batch = rng.sample_distinct(keys, pool=pool, k=3)
    for v in (0, 7, 19):
        solo = rng.sample_distinct(keys[v : v + 1], pool=pool, k=3)
        assert np.array_equal(solo[0], batch[v])


def test_sample_distinct_uniform_subsets():
    # all C(5,2)=10 subsets of a 5-pool should appear near-uniformly
    keys = rng.stream_keys(11, 1, np.arange(50_000))
    out = rng.sample_distinct(keys, pool=5, k=2)
    codes = out[:, 0] * 5 + out[:, 1]
    _, counts = np.unique(codes, return_counts=True)
    assert counts.size == 10
    freq = counts / 50_000
    assert np.all(np.abs(freq - 0.1) < 0.01)
