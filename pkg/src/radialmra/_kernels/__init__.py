"""Hot loops: compiled extension when available, numpy otherwise.

Set ``RADIALMRA_PURE_PYTHON=1`` to force the numpy implementation.
"""
import os

from . import _pykernels as python

BACKEND = "python"
compiled = None
if os.environ.get("RADIALMRA_PURE_PYTHON", "") in ("", "0"):
    try:
        from . import _ckernels as compiled
    except ImportError:  # extension not built
        compiled = None
    else:
        BACKEND = "cython"

_impl = compiled if compiled is not None else python

sine_sum = _impl.sine_sum
qr_decompose = _impl.qr_decompose
qr_reconstruct = _impl.qr_reconstruct
get_threads = _impl.get_threads


def set_threads(n: int) -> None:
    """Cap the worker count of the compiled loops."""
    python.set_threads(n)
    if compiled is not None:
        compiled.set_threads(n)

__all__ = ["BACKEND", "compiled", "python", "sine_sum", "qr_decompose", "qr_reconstruct",
           "set_threads", "get_threads"]
