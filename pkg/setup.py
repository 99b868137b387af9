import numpy
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # The package falls back to the pure-numpy kernels at import time.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "ffscale._kernels",
                ["src/ffscale/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
