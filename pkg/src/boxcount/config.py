"""
Configuration manager

Settings are stacked from the package defaults, the user config in
``$XDG_CONFIG_HOME/boxcount/boxcount.yml`` and the first
``boxcount.yml`` found in the working directory or its parents.
"""

import atexit
import logging
import os
from typing import Dict, List, Optional, Tuple

from xdg import xdg_config_home

import boxcount
import boxcount.yaml
from boxcount.common import AttrDict
from boxcount.exceptions import BoxcountConfigError, BoxcountUsageError

log = logging.getLogger(__name__)  # pylint: disable=invalid-name


class ConfigMgr(object):
    """Manages the boxcount configuration

    This is a singleton; use `boxcount.get_config()` to access it.
    """
    CONF_FNAME = "boxcount.yml"
    CONF_DEFAULT_FNAME = boxcount._defaults_file
    JOBS_ENVVAR = "BOXCOUNT_JOBS"

    __instance = None

    @classmethod
    def user_config(cls) -> str:
        return os.path.join(str(xdg_config_home()), "boxcount", cls.CONF_FNAME)

    @classmethod
    def find_config(cls) -> Tuple[str, List[str]]:
        """Locate the config files

        Returns:
          root: directory of the project config, or the working directory
          conffiles: active configuration files, lowest layer first
        """
        conffiles = [cls.CONF_DEFAULT_FNAME]
        user = cls.user_config()
        if os.path.exists(user):
            conffiles.append(user)

        log.debug("Locating '%s'", cls.CONF_FNAME)
        try:
            curpath = os.path.abspath(os.getcwd())
        except FileNotFoundError:
            raise BoxcountUsageError(
                "The current work directory has been deleted")
        root = curpath
        while True:
            candidate = os.path.join(curpath, cls.CONF_FNAME)
            if os.path.exists(candidate):
                log.debug("  Found '%s' in '%s'", cls.CONF_FNAME, curpath)
                conffiles.append(candidate)
                root = curpath
                break
            curpath, removed = os.path.split(curpath)
            if not removed:
                log.debug("  No '%s' found", cls.CONF_FNAME)
                break
        return root, conffiles

    @classmethod
    def instance(cls) -> "ConfigMgr":
        """Returns the active ConfigMgr instance"""
        if cls.__instance is None:
            cls.__instance = cls(*cls.find_config())
        return cls.__instance

    @classmethod
    def unload(cls) -> None:
        log.debug("Unloading ConfigMgr")
        cls.__instance = None

    def __init__(self, root: str, conffiles: List[str]) -> None:
        self.root = root
        self.conffiles = conffiles
        self._config = boxcount.yaml.load(conffiles)

    def _get(self, key: str, default=None):
        return self._config.get(key, default)

    @property
    def jobs(self) -> int:
        """Number of worker processes

        ``BOXCOUNT_JOBS`` in the environment overrides the config.
        """
        value = os.environ.get(self.JOBS_ENVVAR)
        source = self.JOBS_ENVVAR
        if not value:
            value = self._get("jobs", 1)
            source = "jobs"
        try:
            jobs = int(value)
        except (TypeError, ValueError):
            raise BoxcountConfigError(value, f"{source} must be an integer")
        if jobs < 1:
            raise BoxcountConfigError(value, f"{source} must be positive")
        return jobs

    @property
    def seed(self) -> Optional[int]:
        """Seed of random evaluations (null for a fresh seed per run)"""
        return self._get("seed")

    @property
    def random_points(self) -> int:
        """Number of rational points in random evaluation mode"""
        return int(self._get("random_points", 20))

    @property
    def output(self):
        """Output settings"""
        return self._get("output")

    @property
    def fit(self):
        """Search bounds of rational fits"""
        return self._get("fit")

    @property
    def truncation(self):
        """Default truncation orders"""
        return self._get("truncation")

    @property
    def geometries(self) -> AttrDict:
        """User defined geometries, usable by name"""
        return AttrDict(boxcount.yaml.to_plain(self._get("geometries") or {}))

    def geometry(self, name: str):
        """A configured or built-in geometry by name"""
        from boxcount.dtcount.geometry import ToricGraph, builtin
        geometries: Dict = self.geometries
        if name in geometries:
            return ToricGraph.from_json(geometries[name], name)
        return builtin(name)


atexit.register(ConfigMgr.unload)
