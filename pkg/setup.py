"""Build hook for the optional compiled kernel.

The package is pure Python plus one Cython extension for the hot
iteration loops.  When Cython (or a C toolchain) is unavailable, or
CONCAVESKEW_PURE=1 is set, the extension is skipped and the package
falls back to the pure-Python kernels at import time.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("CONCAVESKEW_PURE") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("concaveskew._core", ["src/concaveskew/_core.pyx"],
                       extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
