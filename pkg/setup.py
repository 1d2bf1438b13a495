"""Build script: compiles the optional Cython kernel core.

The package works without the extension (a pure-Python fallback is selected
at import time), so a missing compiler or Cython only costs speed.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("exlab._kernels._fast", ["src/exlab/_kernels/_fast.pyx"])],
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
