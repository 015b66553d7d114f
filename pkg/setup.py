import os

from setuptools import Extension, setup

# The compiled word kernel is optional: GROWTHLAB_PURE=1 skips it and the
# package falls back to the pure-Python implementation at import time.
ext_modules = []
if os.environ.get("GROWTHLAB_PURE") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("growthlab._fastwords", ["src/growthlab/_fastwords.pyx"])],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
