"""Kernel dispatch: the compiled backend when importable, else pure Python.

The compiled kernels work in 64-bit integers and raise OverflowError rather
than wrap; each call then falls back to the arbitrary-precision version.
Set ``PARALLELO_PURE=1`` to force the pure backend.
"""

import os

from . import _pykernels as _py

_c = None
if not os.environ.get("PARALLELO_PURE"):
    try:
        from . import _ckernels as _c
    except ImportError:  # extension not built
        _c = None

BACKEND = "cython" if _c is not None else "python"


def _dispatch(name):
    pure = getattr(_py, name)
    if _c is None:
        return pure
    fast = getattr(_c, name)

    def call(*args):
        try:
            return fast(*args)
        except OverflowError:
            return pure(*args)

    call.__name__ = name
    call.__doc__ = pure.__doc__
    return call


int_rank = _dispatch("int_rank")
int_det = _dispatch("int_det")
int_normal = _dispatch("int_normal")
int_dots = _dispatch("int_dots")
