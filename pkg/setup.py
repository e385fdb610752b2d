import numpy as np
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install, the kernel falls back at import
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "surfqp.path_algebra._kernel",
                ["src/surfqp/path_algebra/_kernel.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
