"""Build the optional Cython kernel.

If Cython or a C compiler is unavailable the package still installs and
falls back to the pure-Python kernel at import time.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "pearson_bf._kernels",
                ["src/pearson_bf/_kernels.pyx"],
                # bit-identical results with the pure-Python path need plain
                # IEEE double arithmetic: no FMA contraction, no fast-math
                extra_compile_args=["-O2", "-ffp-contract=off"],
                libraries=["m"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
