"""Build script: compiles the Gibbs-sweep extension when Cython and a C
compiler are available, otherwise installs the pure-Python package (the
sampler falls back to the interpreted sweep at import time)."""

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "stateopt.dpmm._sweep",
                ["src/stateopt/dpmm/_sweep.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
