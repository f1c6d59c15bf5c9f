"""Build script: compiles the optional fast kernels when Cython and a C
compiler are available, and degrades to the pure-Python package otherwise.

Force a pure build with MAXDEP_PURE_PYTHON=1.
"""
import os
import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


def _extensions():
    if os.environ.get("MAXDEP_PURE_PYTHON"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("maxdep: Cython not found, building without compiled kernels", file=sys.stderr)
        return []
    ext = Extension(
        "maxdep._speedups",
        ["src/maxdep/_speedups.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize([ext], compiler_directives={"language_level": "3"})


class optional_build_ext(build_ext):
    """Treat a failed extension build as a warning, not an error."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing or broken
            print(f"maxdep: compiled kernels skipped ({exc}); "
                  "the pure-Python fallback will be used", file=sys.stderr)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"maxdep: building {ext.name} failed ({exc}); "
                  "the pure-Python fallback will be used", file=sys.stderr)


setup(
    ext_modules=_extensions(),
    cmdclass={"build_ext": optional_build_ext},
)
