import os

from setuptools import setup

# The native kernel is optional: without Cython (or with CANDYNIM_PURE=1) the
# package installs pure-Python and the solver falls back automatically.
ext_modules = []
if os.environ.get("CANDYNIM_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/candynim/solver/_kernel.pyx"],
            compiler_directives={
                "language_level": "3",
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
            },
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
