"""Build glue for the optional compiled LLL kernel.

The package is fully functional without the extension (the pure-Python
kernel is selected at import time), so a missing Cython or a failing C
compiler must not break installation.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/knapcrack/_lll_cy.pyx"],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
