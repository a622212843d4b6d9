"""Build script for the optional compiled subset-scan kernel.

The package works without the extension (a pure-Python scanner is selected
at import time); set OFC_NO_EXT=1 to skip compilation entirely.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("OFC_NO_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("ofc._fastscan", ["src/ofc/_fastscan.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
