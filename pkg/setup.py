import numpy
from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    """Build the speedup extension if possible; fall back silently otherwise.

    The package is fully functional on the numpy backend, so a missing
    compiler should not break installation.
    """

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler or toolchain missing
            print(f"warning: skipping compiled kernels ({exc}); "
                  "the numpy fallback will be used")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            print(f"warning: could not build {ext.name} ({exc}); "
                  "the numpy fallback will be used")


try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "agcodes._kernels._ckernels",
                ["src/agcodes/_kernels/_ckernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules, cmdclass={"build_ext": OptionalBuildExt})
