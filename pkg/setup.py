"""Build script: compiles the optional fast field backend when Cython is present.

The package is fully functional without the extension; the field package
falls back to the pure-Python backend at import time.
"""

from setuptools import setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/silmarils/field/_fast.pyx"],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
