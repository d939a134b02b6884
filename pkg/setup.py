import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "foamlat._enumcy",
                ["src/foamlat/_enumcy.pyx"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    # Pure-Python kernel is selected at import time when the extension
    # is unavailable; the package stays fully functional.
    ext_modules = []

setup(ext_modules=ext_modules)
