from setuptools import Extension, setup

# The compiled kernels are optional: the package falls back to the pure
# Python implementations in theta_trunc._kernels_py when the extension is
# missing (no compiler, no Cython).
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "theta_trunc._speedups",
                ["src/theta_trunc/_speedups.pyx"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
