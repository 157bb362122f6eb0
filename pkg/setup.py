from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("batchgreedy._kernels", ["src/batchgreedy/_kernels.pyx"])],
        language_level=3,
    )
except ImportError:
    # No Cython available: install pure-Python only; the package falls back
    # to batchgreedy._pykernels at import time.
    extensions = []

setup(ext_modules=extensions)
