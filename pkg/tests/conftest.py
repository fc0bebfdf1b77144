import numpy as np
import pytest

from hardylab import Signal


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def random_signal(rng, max_len=16, offset_span=8, complex_valued=True):
    n = int(rng.integers(1, max_len + 1))
    vals = rng.standard_normal(n)
    if complex_valued:
        vals = vals + 1j * rng.standard_normal(n)
    off = int(rng.integers(-offset_span, offset_span + 1))
    return Signal(vals, offset=off)


def dense_window(sig, lo, hi):
    """Signal values on the inclusive index window [lo, hi]."""
    return np.array([sig.at(n) for n in range(lo, hi + 1)])


def assert_signals_close(a, b, tol=1e-12):
    los, his = [], []
    for s in (a, b):
        if not s.is_zero:
            los.append(s.first_index)
            his.append(s.last_index)
    if not los:
        return
    lo, hi = min(los), max(his)
    va = dense_window(a, lo, hi)
    vb = dense_window(b, lo, hi)
    assert np.max(np.abs(va - vb)) <= tol, f"signals differ by {np.max(np.abs(va - vb))}"
