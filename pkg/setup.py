"""Build script for the optional compiled kernel backend.

The package is pure Python plus one Cython extension holding the hot
per-step kernels. If Cython or a C compiler is unavailable the extension
is skipped and the package falls back to the NumPy kernels at import time.
"""

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Build the speedup extension if possible, otherwise continue without it."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            print(f"seqfnn: skipping compiled kernels ({exc}); "
                  "pure NumPy backend will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"seqfnn: failed to build {ext.name} ({exc}); "
                  "pure NumPy backend will be used")


def extensions():
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        return []
    ext = Extension(
        "seqfnn.backend._speedups",
        ["src/seqfnn/backend/_speedups.pyx"],
        include_dirs=[numpy.get_include()],
        extra_compile_args=["-O3"],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
    )
    return cythonize([ext], language_level=3)


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
