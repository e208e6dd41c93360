import warnings

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

ext_modules = []
if cythonize is not None:
    ext_modules = cythonize(
        [
            Extension(
                "cicproof.kernels._core",
                ["src/cicproof/kernels/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
else:
    warnings.warn(
        "Cython not available; installing with pure-Python kernels only "
        "(slower proving, identical results)"
    )

setup(ext_modules=ext_modules)
