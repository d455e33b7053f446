import warnings

from setuptools import Extension, setup

# The compiled kernel backend is optional: without Cython (or a compiler)
# the package falls back to the pure-Python kernels at import time.
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "dualconf._fastkernels",
                ["src/dualconf/_fastkernels.pyx"],
                # -ffp-contract=off: no FMA contraction, so the compiled
                # kernels stay bit-identical to the pure-Python backend.
                extra_compile_args=["-O2", "-ffp-contract=off"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    warnings.warn("Cython not available; building without the compiled kernel backend")
    ext_modules = []

setup(ext_modules=ext_modules)
