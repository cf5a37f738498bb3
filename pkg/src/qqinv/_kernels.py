"""Inner loops of the truncated torus-series product.

The q-degree-truncated product of geometric factors 1/(1 - q x^w) is built
by the in-place recurrence

    S_d += shift(S_{d-1}, w)        d = 1..N, ascending,

applied once per weight w, where each S_d is a dense integer box of Laurent
coefficients.  Degree-d coefficients involve exactly d weight monomials, so
exponents never leave the box and the shift needs no wraparound handling.

Two implementations of the recurrence are provided: a numba @njit kernel
over int64 boxes (default when numba is importable) and a numpy slicing
fallback that also serves the arbitrary-precision object-dtype path.  Set
the environment variable QQINV_NO_NUMBA=1 to force the numpy path.
``benchmarks/bench_molien.py`` compares the two.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLED = os.environ.get("QQINV_NO_NUMBA", "").strip() not in ("", "0")

if not _DISABLED:
    try:
        from numba import njit
        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - environment without numba
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False


def apply_factor_numpy(coeffs: np.ndarray, wx: int, wy: int, wz: int) -> None:
    """Slicing implementation; works for int64 and object dtypes."""
    shape = coeffs.shape[1:]
    src, dst = [], []
    for size, shift in zip(shape, (wx, wy, wz)):
        if shift >= 0:
            src.append(slice(0, size - shift))
            dst.append(slice(shift, size))
        else:
            src.append(slice(-shift, size))
            dst.append(slice(0, size + shift))
    for d in range(1, coeffs.shape[0]):
        coeffs[d][tuple(dst)] += coeffs[d - 1][tuple(src)]


if HAVE_NUMBA:

    @njit(cache=True)
    def _apply_factor_jit(coeffs, wx, wy, wz):  # pragma: no cover - compiled
        nd, bx, by, bz = coeffs.shape
        x0 = max(0, -wx)
        x1 = min(bx, bx - wx)
        y0 = max(0, -wy)
        y1 = min(by, by - wy)
        z0 = max(0, -wz)
        z1 = min(bz, bz - wz)
        for d in range(1, nd):
            for x in range(x0, x1):
                for y in range(y0, y1):
                    for z in range(z0, z1):
                        coeffs[d, x + wx, y + wy, z + wz] += coeffs[d - 1, x, y, z]

    def apply_factor_numba(coeffs: np.ndarray, wx: int, wy: int, wz: int) -> None:
        _apply_factor_jit(coeffs, wx, wy, wz)

else:
    apply_factor_numba = None


def default_engine() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def apply_factor(coeffs: np.ndarray, w, engine: str) -> None:
    """Dispatch one factor update of the truncated product."""
    wx, wy, wz = w
    if engine == "numba":
        if apply_factor_numba is None:
            raise RuntimeError("numba engine requested but numba is unavailable")
        if coeffs.dtype != np.int64:
            raise RuntimeError("numba engine only handles int64 boxes")
        apply_factor_numba(coeffs, wx, wy, wz)
    elif engine == "numpy":
        apply_factor_numpy(coeffs, wx, wy, wz)
    else:
        raise ValueError(f"unknown engine {engine!r}")
