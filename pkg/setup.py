"""Build the optional compiled kernels.

The package works without them: ``radialmra._kernels`` falls back to the
numpy implementation when the extension is missing.
"""
import os

from setuptools import setup

ext_modules = []
if os.environ.get("RADIALMRA_NO_EXT", "") == "":
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:  # pragma: no cover
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "radialmra._kernels._ckernels",
                    [os.path.join("src", "radialmra", "_kernels", "_ckernels.pyx")],
                    include_dirs=[np.get_include()],
                    extra_compile_args=["-O3", "-fopenmp"],
                    extra_link_args=["-fopenmp"],
                )
            ],
            compiler_directives={
                "language_level": 3,
                "boundscheck": False,
                "wraparound": False,
                "cdivision": True,
                "embedsignature": True,
            },
        )

setup(ext_modules=ext_modules)
