import os

import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extra = ["/O2"] if os.name == "nt" else ["-O3"]

ext_modules = []
if cythonize is not None and not os.environ.get("BTL_NO_EXT"):
    ext = Extension(
        "btl._kernels",
        ["src/btl/_kernels.pyx"],
        include_dirs=[np.get_include()],
        extra_compile_args=extra,
        optional=True,
    )
    ext_modules = cythonize(
        [ext],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )

setup(ext_modules=ext_modules)
