"""Build hook for the optional compiled linear-algebra kernel.

The package works without it: when Cython or a C compiler is unavailable the
extension is skipped and the pure-Python kernel is used at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("cybiv._linalg_ext", ["src/cybiv/_linalg_ext.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
