"""Builds the optional compiled kernels; the package works without them."""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pragma: no cover
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("nach1._ckernels", ["src/nach1/_ckernels.pyx"], optional=True)],
        language_level=3,
    )

setup(ext_modules=ext_modules)
