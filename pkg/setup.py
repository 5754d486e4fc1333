import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("SFFBOUND_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        extensions = [
            Extension(
                "sffbound._kernels",
                ["src/sffbound/_kernels.pyx"],
                extra_compile_args=["-O3"],
            )
        ]
        ext_modules = cythonize(
            extensions,
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
