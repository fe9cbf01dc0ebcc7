from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("qsymkit")
except PackageNotFoundError:
    __version__ = ''
