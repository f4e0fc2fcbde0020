"""Build script for the optional compiled trace kernel.

The package is pure Python except for ``qhecke._trace_kernel``, a Cython
translation of ``qhecke._trace_kernel_py``.  If Cython or a C compiler is
unavailable the extension is skipped and the pure-Python kernel is used at
runtime; ``qhecke.kernel.HAVE_COMPILED`` reports which one was selected.
"""

import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None and os.path.exists("src/qhecke/_trace_kernel.pyx"):
    ext_modules = cythonize(
        [
            Extension(
                "qhecke._trace_kernel",
                ["src/qhecke/_trace_kernel.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
