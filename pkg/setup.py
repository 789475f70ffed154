from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # build without the compiled kernel; glc.kernel falls back
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("glc._kernel", ["src/glc/_kernel.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
