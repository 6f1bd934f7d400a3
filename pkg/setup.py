"""Builds the optional compiled point-counting kernel.

If Cython or a C compiler is missing the package still installs and
falls back to the pure-Python kernel.
"""
import os

from setuptools import setup

ext_modules = []
if not os.environ.get("MOTZETA_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("motzeta._kernels", ["src/motzeta/_kernels.pyx"], extra_compile_args=["-O3"], optional=True)],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
