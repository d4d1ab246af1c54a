"""Build script: compiles the optional blade-product kernel extension.

The package is fully functional without the extension (a pure-Python
fallback is selected at import time); building it just makes the float
backend faster.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("fermialg._kernels", ["src/fermialg/_kernels.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
        },
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
