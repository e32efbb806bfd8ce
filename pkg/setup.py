"""Builds the optional compiled kernel; the package works without it."""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("carlitz_tate._kernels._ckernel",
                   ["src/carlitz_tate/_kernels/_ckernel.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
