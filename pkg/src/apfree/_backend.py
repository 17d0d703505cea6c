"""Kernel backend selection.

The compiled ``_kernels`` extension is used when it imports; otherwise, or
when ``APFREE_PURE_PYTHON`` is set to a non-empty value, the pure-Python
``_pykernels`` module is used.  Both expose the same functions.
"""

import os

from . import _pykernels

kernels = _pykernels
if not os.environ.get("APFREE_PURE_PYTHON"):
    try:
        from . import _kernels as kernels
    except ImportError:
        pass

BACKEND = "python" if kernels is _pykernels else "cython"


def use(name):
    """Switch the active backend (``"python"`` or ``"cython"``); returns the previous name."""
    global kernels, BACKEND
    previous = BACKEND
    if name == "python":
        kernels = _pykernels
    elif name == "cython":
        from . import _kernels
        kernels = _kernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    BACKEND = name
    return previous
