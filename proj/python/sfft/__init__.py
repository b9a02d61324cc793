"""Python bindings for the sfft Stockham FFT library."""

from ._core import (
    emit_kernel,
    fft,
    fft_flops,
    max_local_fft,
    mma_flop_ratio,
    naive_dft,
    plan,
    rank_designs,
)


def ifft(x, policy="", hw="m1"):
    """Inverse transform scaled by 1/n."""
    return fft(x, inverse=True, policy=policy, hw=hw)


__all__ = [
    "emit_kernel",
    "fft",
    "fft_flops",
    "ifft",
    "max_local_fft",
    "mma_flop_ratio",
    "naive_dft",
    "plan",
    "rank_designs",
]
