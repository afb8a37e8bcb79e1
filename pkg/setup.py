import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "pcowave._kernels._fast",
                ["src/pcowave/_kernels/_fast.pyx"],
                include_dirs=[np.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError:
    # pure-Python install: the numpy fallback kernels are used instead
    ext_modules = []

setup(ext_modules=ext_modules)
