# Builds the optional compiled kernel core.  The package works without it
# (a numpy fallback is selected at import); building just makes the hot
# loops faster:
#
#     python setup.py build_ext --inplace
#
# or simply `pip install -e . --no-build-isolation`.
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "pwhankel._fastcore",
                ["src/pwhankel/_fastcore.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={
            "language_level": 3,
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
