"""Build script: compiles the orbit kernel extension when Cython and a C
toolchain are available; otherwise the package installs anyway and the
pure-Python kernel is used at runtime."""

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "dynlab.kernel._core",
                ["src/dynlab/kernel/_core.pyx"],
                include_dirs=[numpy.get_include()],
                # no FMA contraction and no cos+sin -> sincos() fusion:
                # results must match the pure-Python kernel bit for bit
                extra_compile_args=["-O3", "-ffp-contract=off",
                                    "-fno-builtin-sin",
                                    "-fno-builtin-cos",
                                    "-fno-builtin-sincos"],
                define_macros=[
                    ("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError as exc:  # pragma: no cover - build environment dependent
    print(f"warning: building without compiled kernel ({exc})",
          file=sys.stderr)

setup(ext_modules=ext_modules)
