"""Build script for the optional compiled kernel extension.

If Cython or a C compiler is unavailable, the package still installs and
falls back to the pure-Python kernels at import time.
"""
from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize
    ext_modules = cythonize(
        [Extension("regkit._kernels", ["src/regkit/_kernels.pyx"])],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
