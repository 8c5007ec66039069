from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    # The pure-Python kernel is selected at import time when the compiled
    # module is unavailable, so the build may proceed without Cython.
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "vknots._colorkernel",
                ["src/vknots/_colorkernel.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
