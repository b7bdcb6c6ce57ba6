"""Build script: compiles the path-tracker kernel when a toolchain is present.

The package stays importable without the extension; mlspectra.track falls
back to the pure-Python kernel at import time.
"""

import sys

from setuptools import setup


def extensions():
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        return []
    ext = Extension(
        "mlspectra.track._ckernel",
        ["src/mlspectra/track/_ckernel.pyx"],
    )
    return cythonize([ext], language_level="3")


try:
    setup(ext_modules=extensions())
except SystemExit:
    raise
except Exception as exc:  # no compiler: install pure-Python only
    print(f"warning: extension build failed ({exc}); installing without it", file=sys.stderr)
    setup(ext_modules=[])
