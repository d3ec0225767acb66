from setuptools import Extension, setup
from Cython.Build import cythonize

ext = Extension(
    "panelblas._backend.ccore",
    ["src/panelblas/_backend/ccore.pyx"],
    extra_compile_args=["-O3"],
)

setup(ext_modules=cythonize([ext], language_level=3))
