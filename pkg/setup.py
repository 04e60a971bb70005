import os

from setuptools import Extension, setup

# The compiled kernels are an optimization, not a requirement: paulicut falls
# back to the NumPy implementation when the extension is missing (see
# paulicut/backend.py). Set PAULICUT_NO_EXT=1 to skip compilation entirely.
ext_modules = []
if not os.environ.get("PAULICUT_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "paulicut._kernels_cy",
                    ["src/paulicut/_kernels_cy.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
