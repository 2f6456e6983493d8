from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "mcmullen._kernels",
                ["src/mcmullen/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "initializedcheck": False,
            "cdivision": True,
        },
    )
except ImportError:
    # No Cython: install pure-Python only; the NumPy fallback backend is
    # selected automatically at import time.
    ext_modules = []

setup(ext_modules=ext_modules)
