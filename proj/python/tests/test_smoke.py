import numpy as np
import pytest

sfft = pytest.importorskip("sfft")


@pytest.mark.parametrize("n", [2, 64, 4096, 8192])
def test_fft_matches_numpy(n):
    rng = np.random.default_rng(n)
    x = rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)
    ref = np.fft.fft(x)
    assert np.linalg.norm(sfft.fft(x) - ref) / np.linalg.norm(ref) < 1e-12
    y32 = sfft.fft(x.astype(np.complex64))
    assert y32.dtype == np.complex64
    assert np.linalg.norm(y32 - ref) / np.linalg.norm(ref) < 1e-5


def test_batched_and_inverse():
    rng = np.random.default_rng(1)
    x = rng.uniform(-1, 1, (3, 256)) + 1j * rng.uniform(-1, 1, (3, 256))
    y = sfft.fft(x)
    assert np.allclose(y, np.fft.fft(x, axis=1))
    assert np.allclose(sfft.ifft(y), x)


def test_naive_dft():
    assert np.allclose(sfft.naive_dft(np.array([1, -1], dtype=complex)), [0, 2])


def test_plan_and_capacity():
    p = sfft.plan(4096)
    assert p["kind"] == "single_threadgroup"
    assert p["plan"]["radices"] == [8, 8, 8, 8]
    assert p["plan"]["threads"] == 512
    assert p["plan"]["barrier_count"] == 6
    fs = sfft.plan(8192)
    assert (fs["kind"], fs["n1"], fs["n2"]) == ("four_step", 2, 4096)
    assert sfft.max_local_fft() == 4096
    assert sfft.max_local_fft(strategy="double_buffered") == 2048


def test_cost_and_emitter():
    ranking = [name for name, _ in sfft.rank_designs(4096, 256, ["radix4", "radix8", "shuffle"])]
    assert ranking == ["radix8", "radix4", "shuffle"]
    assert sfft.fft_flops(4096, 256) == 62914560
    assert 3.0 <= sfft.mma_flop_ratio() <= 4.0
    entry, text, ok = sfft.emit_kernel(4096)
    assert entry == "sfft_n4096_r8888"
    assert ok and text.count("threadgroup_barrier(") == 6


def test_errors():
    with pytest.raises(ValueError):
        sfft.fft(np.zeros(6, dtype=complex))
    with pytest.raises(ValueError):
        sfft.plan(64, policy="radix3")
