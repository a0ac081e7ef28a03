"""Backend selection and numba/numpy kernel agreement on shared inputs."""

import numpy as np
import pytest

from cycle4 import SpectralPoint, _batch_numpy
from cycle4._backend import resolve_backend
from cycle4.angles import build_frame, max_psi_tight
from cycle4.audit import TOLS, _stream

numba_mod = pytest.importorskip("cycle4._batch_numba")


def test_resolve_backend():
    assert resolve_backend("numpy") == "numpy"
    assert resolve_backend("numba") == "numba"
    assert resolve_backend("") in ("numba", "numpy")
    with pytest.raises(ValueError):
        resolve_backend("cython")


def _shared_params(n=20000):
    return _stream(99, 0).random((n, 4)) * (1 - 1e-6)


def test_necessity_kernels_agree():
    params = _shared_params()
    args = (1e-10, TOLS.necessity_a, TOLS.necessity_edge, TOLS.necessity_g, TOLS.solver_residual, 0.0)
    v1, a1, b1 = numba_mod.necessity_block(params, *args)
    v2, a2, b2 = _batch_numpy.necessity_block(params, *args)
    assert np.abs(v1 - v2).max() < 1e-9
    assert np.abs(a1 - a2).max() < 1e-9
    assert np.abs(b1 - b2).max() < 1e-9
    assert (v1 > 0).sum() == (v2 > 0).sum() == 0


def test_identities_kernels_agree():
    samples = _stream(98, 0).random((20000, 10))
    v1, w1 = numba_mod.identities_block(samples, False)
    v2, w2 = _batch_numpy.identities_block(samples, False)
    assert np.abs(v1 - v2).max() < 1e-12
    assert (w1 == w2).mean() > 0.99  # argmax may differ only on near-ties


def test_convexity_kernels_agree():
    samples = _stream(97, 0).random((20000, 3))
    args = (TOLS.convexity_fd_step, TOLS.convexity_fd_step, TOLS.convexity_top_inset, False)
    r1, f1 = numba_mod.convexity_block(samples, *args)
    r2, f2 = _batch_numpy.convexity_block(samples, *args)
    assert np.abs(r1 - r2).max() < 1e-8
    assert np.abs((f1 - f2) / f1).max() < 1e-12


def test_karamata_kernels_agree():
    f = build_frame(SpectralPoint(0.05, 0.4))
    closed = max_psi_tight(f)
    e1, g1, n1 = numba_mod.karamata_scan(f.x, f.y, f.m, f.M, f.U, 40, closed, 0.0)
    e2, g2, n2 = _batch_numpy.karamata_scan(f.x, f.y, f.m, f.M, f.U, 40, closed, 0.0)
    assert n1 == n2
    assert abs(e1 - e2) < 1e-10
    assert abs(g1 - g2) < 1e-12


def test_scalar_matches_batch_single_trial():
    from cycle4 import _scalar

    params = _shared_params(500)
    args = (1e-10, TOLS.necessity_a, TOLS.necessity_edge, TOLS.necessity_g, TOLS.solver_residual, 0.0)
    v, aa, bb = numba_mod.necessity_block(params, *args)
    for i in range(500):
        a, b, resid, has_pair = _scalar.upper_pair_root(*params[i])
        if has_pair and b > 1e-10:
            assert abs(a - aa[i]) < 1e-12 and abs(b - bb[i]) < 1e-12
        else:
            assert v[i] == -1.0
