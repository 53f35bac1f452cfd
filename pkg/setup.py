"""Build script: compiles the arithmetic kernel with Cython when available.

The package is fully functional without the compiled extension; ``curvinv._poly``
is plain Python and the import system simply prefers the built .so when present.
Build in place with::

    python setup.py build_ext --inplace
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("curvinv._poly", ["src/curvinv/_poly.py"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
