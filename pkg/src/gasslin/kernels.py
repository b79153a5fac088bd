"""Kernel selection: compiled SU(2) core when present, numpy otherwise.

Everything downstream imports apply_word / apply_word_jac from here.
BACKEND records which implementation is live so reports and benches can
say so.  Set GASSLIN_FORCE_PYTHON=1 to skip the compiled extension.
"""

from __future__ import annotations

import os

from . import _su2core_py

if os.environ.get("GASSLIN_FORCE_PYTHON"):
    _impl = _su2core_py
else:
    try:
        from . import _su2core as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _su2core_py

BACKEND: str = _impl.BACKEND
apply_word = _impl.apply_word
apply_word_jac = _impl.apply_word_jac

qmul = _su2core_py.qmul
qconj = _su2core_py.qconj
