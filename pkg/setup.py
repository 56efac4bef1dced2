import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [
    Extension(
        "hyperclean._kernels",
        ["src/hyperclean/_kernels.pyx"],
        extra_compile_args=["-O3"],
    )
]

if cythonize is not None and not os.environ.get("HYPERCLEAN_NO_EXT"):
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})
else:
    # Pure-Python install: hyperclean._backend falls back to _kernels_py.
    ext_modules = []

setup(ext_modules=ext_modules)
