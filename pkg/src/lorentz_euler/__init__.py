"""Stationary curves of the Euler energy in the Lorentz-Minkowski plane."""
from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("lorentz_euler_library")
except PackageNotFoundError:  # pragma: no cover
    # running from a source tree that was never installed
    __version__ = "unknown"
finally:
    del version, PackageNotFoundError
