"""Build script for the optional compiled subset-scan kernel.

The package works without the extension (a pure-Python fallback is
selected at import time), so any failure to cythonize or compile is
non-fatal.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/galres/_subsetscan.pyx",
        language_level="3",
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
