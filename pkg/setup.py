"""Build script: compiles the optional Cython kernel extension.

The extension (`fivenum._fast`) accelerates the Monte Carlo hot loops;
the package falls back to the pure NumPy kernels when it is missing, so
a failed extension build only costs speed, never results.
"""

import os
import sys

from setuptools import setup

ext_modules = []
if os.environ.get("FIVENUM_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        extra = []
        if sys.platform != "win32":
            # keep C arithmetic bit-for-bit comparable with the NumPy path
            extra = ["-O2", "-ffp-contract=off"]
        ext_modules = cythonize(
            [
                Extension(
                    "fivenum._fast",
                    ["src/fivenum/_fast.pyx"],
                    extra_compile_args=extra,
                )
            ],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        print("Cython not available; building without the compiled kernels",
              file=sys.stderr)

setup(ext_modules=ext_modules)
