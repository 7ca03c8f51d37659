"""Kernel backend selection.

The compiled extension is used when it imports and TDRINGS_PURE_PYTHON is
unset; any call it cannot represent in int64 is retried in pure Python.
"""
import os

from . import _pykernels

_compiled = None
if not os.environ.get("TDRINGS_PURE_PYTHON"):
    try:
        from . import _kernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = _compiled.BACKEND if _compiled is not None else _pykernels.BACKEND


def _dispatch(name, *args, **kwargs):
    if _compiled is not None:
        try:
            return getattr(_compiled, name)(*args, **kwargs)
        except OverflowError:
            pass
    return getattr(_pykernels, name)(*args, **kwargs)


def scan_omega0(roots, want_reps=False):
    return _dispatch("scan_omega0", tuple(roots), want_reps)


def canonical_flat(roots, upper):
    return _dispatch("canonical_flat", tuple(roots), list(upper))


def reduce_flat(roots, upper):
    return _dispatch("reduce_flat", tuple(roots), list(upper))


encode = _pykernels.encode
decode = _pykernels.decode
