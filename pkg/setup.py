import os

import numpy as np
from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to numpy when the
# extension is missing, so a failed Cython import only drops ext_modules.
ext_modules = []
if os.environ.get("QDNSIM_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "qdnsim._ckernels",
                    ["src/qdnsim/_ckernels.pyx"],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3", "-ffp-contract=off"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
