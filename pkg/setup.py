"""Build script: compiles the optional canonicalization kernel.

The package works without the extension (a pure-Python fallback is
selected at import time), so any failure to cythonize or compile is
swallowed and the build proceeds extension-free.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("nommon._speedups", ["src/nommon/_speedups.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except Exception:
    pass

setup(ext_modules=ext_modules)
