"""Build script.  The compiled straightening kernel is optional: if Cython
(or a C toolchain) is unavailable the package installs anyway and falls
back to the pure-Python kernel at import time."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext = Extension(
        "affine_basis._kernel_c",
        ["src/affine_basis/_kernel_c.pyx"],
    )
    ext.optional = True
    ext_modules = cythonize([ext], compiler_directives={"language_level": "3"})
except ImportError:
    pass

setup(ext_modules=ext_modules)
