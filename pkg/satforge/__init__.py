"""
satforge: regular saturated graphs from symmetric sets in Z_n.
"""

try:
    from importlib.metadata import PackageNotFoundError, version

    __version__ = version("satforge")
except PackageNotFoundError:
    # Running from a source checkout that was never installed.
    __version__ = "0.0.0"
