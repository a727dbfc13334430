"""Build script: compiles the expression-evaluator kernel when a C toolchain
and Cython are available.  The package works without it (pure-Python fallback
is selected at import time), so any build failure here downgrades to a
warning instead of aborting the install."""

import warnings

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:
            warnings.warn(f"skipping compiled kernel ({exc}); using pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            warnings.warn(f"skipping {ext.name} ({exc}); using pure-Python fallback")


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    return cythonize(
        [Extension("hyperloc._expr_kernel", ["src/hyperloc/_expr_kernel.pyx"])],
        language_level="3",
    )


setup(cmdclass={"build_ext": OptionalBuildExt}, ext_modules=extensions())
