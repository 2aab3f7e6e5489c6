"""
    Setup file for lorentz_euler_library.
    The project is configured in setup.cfg; the version comes from git tags.
"""
from setuptools import setup

if __name__ == "__main__":
    setup(use_scm_version={"version_scheme": "no-guess-dev", "fallback_version": "0.1.0"})
