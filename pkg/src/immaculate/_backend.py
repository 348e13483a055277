"""Select the compiled kernels when available, else the pure-Python ones."""

from __future__ import annotations

import os

from . import _pykernels

NAME = "python"
_impl = _pykernels

if os.environ.get("IMMACULATE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _compiled  # type: ignore[attr-defined]
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        _impl = _compiled
        NAME = "cython"


# the compiled kernel works on a dense copy; beyond this many entries the
# sparse pure-Python path is both leaner and faster
DENSE_LIMIT = 4_000_000


def unit_eliminate(rows, ncols):
    if _impl is _pykernels or len(rows) * ncols > DENSE_LIMIT:
        return _pykernels.unit_eliminate(rows, ncols)
    try:
        return _impl.unit_eliminate(rows, ncols)
    except OverflowError:
        return _pykernels.unit_eliminate(rows, ncols)


def extend_sequences(out, start, length):
    return _impl.extend_sequences(out, start, length)
