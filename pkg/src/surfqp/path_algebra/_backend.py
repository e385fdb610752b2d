"""Pick the compiled elimination kernel when it is importable, else the Python one.

Set ``SURFQP_PURE_PYTHON=1`` to force the fallback.
"""

import os

from . import _kernel_py

compiled = None
if not os.environ.get("SURFQP_PURE_PYTHON"):
    try:
        from . import _kernel as compiled
    except ImportError:  # extension not built
        compiled = None

kernel = compiled if compiled is not None else _kernel_py
BACKEND = "compiled" if compiled is not None else "python"


def get_kernel(name=None):
    """``None`` for the default, ``"python"`` or ``"compiled"``."""
    if name is None:
        return kernel
    if name == "python":
        return _kernel_py
    if name == "compiled":
        if compiled is None:
            raise ImportError("compiled kernel is not available")
        return compiled
    raise ValueError(f"unknown kernel {name!r}")
