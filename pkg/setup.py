"""Build the optional compiled kernel; qvac falls back to numpy without it."""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("QVAC_NO_EXTENSION", "") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("qvac._ckernels", ["src/qvac/_ckernels.pyx"],
                       include_dirs=[numpy.get_include()],
                       extra_compile_args=["-O3"],
                       define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")])],
            compiler_directives={"language_level": "3"})

setup(ext_modules=ext_modules)
