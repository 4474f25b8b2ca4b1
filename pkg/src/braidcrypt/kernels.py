"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the pure-Python
module is used.  Setting ``BRAIDCRYPT_PURE=1`` forces the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

if os.environ.get("BRAIDCRYPT_PURE", "") not in ("", "0"):
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _kernels_py
        BACKEND = "python"

inverse = _impl.inverse
compose = _impl.compose
tau = _impl.tau
slide = _impl.slide
meet = _impl.meet
normalize = _impl.normalize
word_factors = _impl.word_factors
left_normal_form = _impl.left_normal_form
inversions = _impl.inversions

__all__ = [
    "BACKEND",
    "inverse",
    "compose",
    "tau",
    "slide",
    "meet",
    "normalize",
    "word_factors",
    "left_normal_form",
    "inversions",
]
