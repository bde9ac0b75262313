"""Hot-loop kernels: compiled extension when available, numpy fallback otherwise.

Set SCDE_PURE_PYTHON=1 before import to force the fallback (the benchmark and
the kernel tests use this to compare both implementations).
"""
import os

from . import _numpy

if os.environ.get("SCDE_PURE_PYTHON"):
    _impl = _numpy
    BACKEND = "numpy"
else:
    try:
        from . import _core as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _numpy
        BACKEND = "numpy"

correlate_window = _impl.correlate_window
correlate_window_back = _impl.correlate_window_back
binomial_tail = _impl.binomial_tail
pchip_eval_uniform = _impl.pchip_eval_uniform
