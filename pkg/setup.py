import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("PARALLELO_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("parallelo._ckernels", ["src/parallelo/_ckernels.pyx"],
                       extra_compile_args=["-O2"])],
            language_level="3",
        )

setup(ext_modules=ext_modules)
