"""Select the trace kernel: compiled extension if built, else pure Python.

Both expose ``trace_partial`` with the same signature and exact integer
semantics.  The compiled kernel uses checked 64-bit arithmetic and raises
OverflowError when a coefficient would not fit; callers fall back to the
Python kernel for that chunk.
"""

from . import _trace_kernel_py as python_kernel

try:
    from . import _trace_kernel as compiled_kernel

    HAVE_COMPILED = True
except ImportError:
    compiled_kernel = None
    HAVE_COMPILED = False


def get_kernel(name: str = "auto"):
    """Return a kernel module by name: 'auto', 'compiled' or 'python'."""
    if name == "auto":
        return compiled_kernel if HAVE_COMPILED else python_kernel
    if name == "compiled":
        if not HAVE_COMPILED:
            raise RuntimeError("compiled kernel is not available")
        return compiled_kernel
    if name == "python":
        return python_kernel
    raise ValueError(f"unknown kernel {name!r}")
