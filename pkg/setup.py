"""Build script: compiles the Cython kernels when Cython is available.

The package works without the extension (a numpy fallback is selected at
import time), so a failed or skipped extension build is not fatal.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "otfading._kernels_cy",
                ["src/otfading/_kernels_cy.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
