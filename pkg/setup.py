import os

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; kernels fall back at import
    cythonize = None

extensions = []
if cythonize is not None and not os.environ.get("LOGENC_NO_EXT"):
    extensions = cythonize(
        [
            Extension(
                "logenc._ckernels",
                ["src/logenc/_ckernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=extensions)
