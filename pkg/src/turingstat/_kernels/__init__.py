"""Bernoulli draw kernels.

The compiled ``_ckernels`` extension is used when it was built; otherwise the
pure-Python ``_pykernels`` module is loaded.  Set ``TURINGSTAT_PURE_PYTHON=1``
to force the fallback.  Both produce identical streams.
"""

import os

from . import _pykernels as python_backend

compiled_backend = None
if not os.environ.get("TURINGSTAT_PURE_PYTHON"):
    try:
        from . import _ckernels as compiled_backend
    except ImportError:  # extension not built
        compiled_backend = None

_active = compiled_backend or python_backend
BACKEND = "cython" if compiled_backend is not None else "python"

next_u64 = _active.next_u64
bernoulli_draws = _active.bernoulli_draws
bernoulli_count = _active.bernoulli_count

__all__ = ["BACKEND", "next_u64", "bernoulli_draws", "bernoulli_count", "python_backend", "compiled_backend"]
