"""Build script.

The package is pure Python plus one optional Cython extension holding the
lattice enumeration kernel.  If Cython or a C compiler is unavailable the
extension is skipped and the package falls back to the numpy kernel at
import time, so installation never fails on a missing toolchain.
"""

import os
import sys

from setuptools import setup
from setuptools.command.build_ext import build_ext


def maybe_cythonize():
    if os.environ.get("PLUMBHF_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        sys.stderr.write("plumbhf: Cython not found, building without the compiled kernel\n")
        return []
    return cythonize(
        ["src/plumbhf/_chi_kernel.pyx"],
        language_level=3,
    )


class OptionalBuildExt(build_ext):
    """Swallow compiler failures; the pure kernel remains available."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001 - any toolchain failure is fine
            sys.stderr.write(f"plumbhf: compiled kernel skipped ({exc})\n")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            sys.stderr.write(f"plumbhf: compiled kernel skipped ({exc})\n")


setup(
    ext_modules=maybe_cythonize(),
    cmdclass={"build_ext": OptionalBuildExt},
)
