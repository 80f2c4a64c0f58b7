"""Kernel backend selection.

The compiled extension is used when importable; otherwise the numpy fallback.
Set ``HETGC_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _pykernels as python

compiled = None
if os.environ.get("HETGC_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as compiled
    except ImportError:
        compiled = None

_impl = compiled if compiled is not None else python
BACKEND = "cython" if compiled is not None else "python"

subset_errors = _impl.subset_errors
min_rotations = _impl.min_rotations
weight_words = _impl.weight_words

__all__ = ["BACKEND", "compiled", "python", "subset_errors", "min_rotations", "weight_words"]
