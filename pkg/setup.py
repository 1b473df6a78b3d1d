"""Build hook: compile the optional d-separation kernel.

The package is pure Python except for one hot loop (reachability-based
d-separation).  If Cython or a C compiler is unavailable the build falls
back to the pure-Python kernel; kassoc.graph selects whichever import
succeeds at runtime.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/kassoc/_dsep_cy.pyx"], language_level="3"
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
