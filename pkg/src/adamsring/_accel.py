"""Backend selection for the integer kernels.

Set ``ADAMSRING_DISABLE_NUMBA=1`` to force the pure-numpy path.  If numba is
not importable the numpy path is used silently.
"""

from __future__ import annotations

import os

import numpy as np

from . import _kernels

_DISABLE = os.environ.get("ADAMSRING_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes", "on"}

try:
    if _DISABLE:
        raise ImportError
    import numba

    _njit = numba.njit(cache=True, nogil=True)
    # loop kernels resolve _powmod through module globals; rebind it before compiling them
    _kernels._powmod = _njit(_kernels._powmod)
    _impl = {name: _njit(fn) for name, fn in _kernels.LOOP_KERNELS.items()}
    BACKEND = "numba"
except ImportError:  # pragma: no cover - exercised via the env flag in a subprocess
    _impl = dict(_kernels.NUMPY_KERNELS)
    BACKEND = "numpy"


def _i64(a):
    return np.ascontiguousarray(a, dtype=np.int64)


def associativity_failure(mul) -> tuple[int, int, int] | None:
    out = _impl["associativity_failure"](_i64(mul))
    return None if out[0] < 0 else (int(out[0]), int(out[1]), int(out[2]))


def class_constants(mul, inv, class_of, reps, r: int) -> np.ndarray:
    return _impl["class_constants"](_i64(mul), _i64(inv), _i64(class_of), _i64(reps), int(r))


def rref_mod_p(a, p: int) -> tuple[np.ndarray, np.ndarray]:
    return _impl["rref_mod_p"](_i64(a), int(p))


def charpoly_mod_p(a, p: int) -> np.ndarray:
    return _impl["charpoly_mod_p"](_i64(a), int(p))


def pair_sums(X, Y, w) -> np.ndarray:
    return _impl["pair_sums"](_i64(X), _i64(Y), _i64(w))


def products(X, Y) -> np.ndarray:
    return _impl["products"](_i64(X), _i64(Y))


def warmup() -> None:
    """Trigger compilation of every kernel on tiny inputs."""
    m = np.array([[0, 1], [1, 0]], dtype=np.int64)
    associativity_failure(m)
    class_constants(m, np.array([0, 1]), np.array([0, 1]), np.array([0, 1]), 2)
    rref_mod_p(m, 5)
    charpoly_mod_p(m, 5)
    x = np.ones((1, 2, 2), dtype=np.int64)
    pair_sums(x, x, np.array([1, 1]))
    products(x, x)
