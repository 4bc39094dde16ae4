import os
import warnings


try:
    from boxcount._version import version as __version__
except ModuleNotFoundError:
    from pkg_resources import get_distribution, DistributionNotFound
    try:
        __version__ = get_distribution(__name__).version
    except DistributionNotFound:
        from setuptools_scm import get_version
        __version__ = get_version(root="..", relative_to=__file__)


try:
    __numeric_version__ = sum(
        (100 ** n) * int(m)
        for n, m in enumerate(__version__.split(".")[2::-1]))
except ValueError:
    warnings.warn(f"Could not parse version {__version__}")
    __numeric_version__ = 1

# Paths of distributed files, gathered without pkg_resources
_rsc_dir = __path__[0]
_etc_dir = os.path.join(_rsc_dir, "etc")
_defaults_file = os.path.join(_etc_dir, "defaults.yml")


def get_config() -> 'config.ConfigMgr':
    """Access the current boxcount configuration object

    During unit tests the object is unloaded between tests.
    """
    from boxcount.config import ConfigMgr
    return ConfigMgr.instance()
