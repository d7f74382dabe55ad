import os

from setuptools import setup

ext_modules = []
if not os.environ.get("HSM_PURE_PYTHON"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [Extension("hilbert_sturm._kernels", ["src/hilbert_sturm/_kernels.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # no Cython: the package falls back to the pure-Python kernels
        ext_modules = []

setup(ext_modules=ext_modules)
