from setuptools import setup, Extension

try:
    from Cython.Build import cythonize
except ImportError:
    # the package falls back to its pure-Python kernels
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("igusazeta._kernels", ["src/igusazeta/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
