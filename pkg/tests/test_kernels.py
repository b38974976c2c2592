"""Cross-backend parity: every numba kernel must agree with its numpy
fallback (exactly for discrete outputs, to tight tolerance for floats)."""

import numpy as np
import pytest

from moeapap import _kernels

pytestmark = pytest.mark.skipif(
    not _kernels.NUMBA_KERNELS, reason="numba backend not active"
)


def _random_sets(seed, m, sizes=(1, 2, 7, 40, 150)):
    rng = np.random.default_rng(seed)
    for n in sizes:
        yield np.ascontiguousarray(rng.random((n, m)))
        # clustered values provoke duplicate coordinates
        yield np.ascontiguousarray(np.round(rng.random((n, m)), 1))


@pytest.mark.parametrize("m", [2, 3])
def test_nd_mask_parity(m):
    for F in _random_sets(1, m):
        a = _kernels.NUMBA_KERNELS["nd_mask"](F)
        b = _kernels.NUMPY_KERNELS["nd_mask"](F)
        assert np.array_equal(a, b)


@pytest.mark.parametrize("m", [2, 3])
def test_nds_ranks_parity(m):
    for F in _random_sets(2, m):
        a = _kernels.NUMBA_KERNELS["nds_ranks"](F)
        b = _kernels.NUMPY_KERNELS["nds_ranks"](F)
        assert np.array_equal(a, b)


@pytest.mark.parametrize("m", [2, 3])
def test_crowding_parity(m):
    for F in _random_sets(3, m):
        a = _kernels.NUMBA_KERNELS["crowding"](F)
        b = _kernels.NUMPY_KERNELS["crowding"](F)
        assert np.allclose(a, b, rtol=1e-12, atol=0.0, equal_nan=False)


def test_hv_parity():
    ref2 = np.array([1.2, 1.2])
    ref3 = np.array([1.2, 1.2, 1.2])
    for F in _random_sets(4, 2):
        assert _kernels.NUMBA_KERNELS["hv2d"](F, ref2) == pytest.approx(
            _kernels.NUMPY_KERNELS["hv2d"](F, ref2), rel=1e-12
        )
    for F in _random_sets(5, 3):
        assert _kernels.NUMBA_KERNELS["hv3d"](F, ref3) == pytest.approx(
            _kernels.NUMPY_KERNELS["hv3d"](F, ref3), rel=1e-12
        )


def test_mean_min_dist_parity():
    rng = np.random.default_rng(6)
    A = rng.random((300, 3))
    for F in _random_sets(7, 3):
        assert _kernels.NUMBA_KERNELS["mean_min_dist"](A, F) == pytest.approx(
            _kernels.NUMPY_KERNELS["mean_min_dist"](A, F), rel=1e-12
        )


def test_count_dominated_parity():
    rng = np.random.default_rng(8)
    S = rng.random((5000, 3))
    for F in _random_sets(9, 3, sizes=(1, 5, 30)):
        assert _kernels.NUMBA_KERNELS["count_dominated"](S, F) == _kernels.NUMPY_KERNELS[
            "count_dominated"
        ](S, F)
