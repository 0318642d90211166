import os

from setuptools import Extension, setup

# The compiled kernels are an optimization, not a requirement: if Cython (or a
# C compiler) is unavailable the package installs without the extension and
# graphmoments._kernels falls back to the pure-Python implementation.
ext_modules = []
if os.environ.get("GRAPHMOMENTS_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            [Extension("graphmoments._core", ["src/graphmoments/_core.pyx"])],
            language_level="3",
        )
    except Exception as exc:  # pragma: no cover - build-environment dependent
        print("graphmoments: building without compiled kernels (%s)" % exc)
        ext_modules = []

setup(ext_modules=ext_modules)
