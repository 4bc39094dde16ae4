"""
Layered YAML configuration

Configuration files are stacked: a key is looked up in the topmost
layer first. Mappings found in several layers are merged recursively,
sequences are concatenated and scalars come from the topmost layer
defining them.
"""

import io
import logging
from collections.abc import Mapping, Sequence
from typing import Any, Iterator, List, Optional, Tuple

import ruamel.yaml
from ruamel.yaml import YAML, RoundTripRepresenter
from ruamel.yaml.comments import CommentedMap

from boxcount.exceptions import BoxcountConfigError

log = logging.getLogger(__name__)  # pylint: disable=invalid-name

Layer = Tuple[str, Any]


class AttrItemAccessMixin(object):
    """Maps ``obj.key`` to ``obj[key]`` for public names"""
    def __getattr__(self, key):
        if key[0] == "_":
            return self.__getattribute__(key)
        try:
            return self[key]
        except (IndexError, KeyError) as exc:
            raise AttributeError(exc)

    def __setattr__(self, key, value):
        if key[0] == "_":
            object.__setattr__(self, key, value)
        else:
            self[key] = value


class MultiProxy(object):
    """Base class of the layered containers"""
    def __init__(self, maps: List[Layer], parent: "MultiProxy" = None,
                 key: Optional[str] = None) -> None:
        self._maps = list(maps)
        self._parent = parent
        self._key = key

    def _path(self) -> str:
        keys = []
        node = self
        while node._parent is not None:
            keys.append(str(node._key))
            node = node._parent
        return ".".join(reversed(keys))

    def get_files(self) -> List[str]:
        return [fn for fn, _ in self._maps]

    def to_yaml(self, show_source: bool = False) -> str:
        buf = io.StringIO()
        if show_source:
            for fn, layer in self._maps:
                buf.write(f"--- # from '{fn}' # ---\n")
                rt_yaml.dump(layer, buf)
        else:
            rt_yaml.dump(self, buf)
        return buf.getvalue()

    def __str__(self) -> str:
        return self.to_yaml()

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self._maps!r})"


class MultiMapProxy(Mapping, MultiProxy, AttrItemAccessMixin):
    """Mapping merged from all layers"""
    def __contains__(self, key) -> bool:
        return any(key in m for _, m in self._maps)

    def __len__(self) -> int:
        return len(set(k for _, m in self._maps for k in m))

    def __iter__(self) -> Iterator:
        seen = set()
        for _, layer in self._maps:
            for key in layer:
                if key not in seen:
                    seen.add(key)
                    yield key

    def __getitem__(self, key):
        items = [(fn, m[key]) for fn, m in self._maps if key in m]
        if not items:
            raise KeyError(f"key '{key}' not found in any config layer")
        kinds = set(type(value) for _, value in items
                    if value is not None and not isinstance(value, str)
                    and isinstance(value, (Mapping, Sequence)))
        if len(kinds) > 1:
            raise BoxcountConfigError(
                self, f"Config layers disagree on the type of "
                f"'{self._path() + '.' if self._path() else ''}{key}'",
                key)
        value = items[0][1]
        if isinstance(value, Mapping):
            return MultiMapProxy([item for item in items
                                  if isinstance(item[1], Mapping)],
                                 parent=self, key=key)
        if isinstance(value, Sequence) and not isinstance(value, str):
            return MultiSeqProxy([item for item in items
                                  if isinstance(item[1], Sequence)],
                                 parent=self, key=key)
        return value

    def __setitem__(self, key, value):
        # walk up to the root, then down the top layer
        node = self
        keys = []
        while node._parent is not None:
            keys.append(node._key)
            node = node._parent
        target = node._maps[0][1]
        for k in reversed(keys):
            if k not in target:
                target[k] = CommentedMap()
            target = target[k]
        target[key] = value

    def __delitem__(self, key):
        raise NotImplementedError()

    def get(self, key, default=None):
        try:
            return self[key]
        except KeyError:
            return default


class MultiSeqProxy(Sequence, MultiProxy, AttrItemAccessMixin):
    """Sequence concatenated from all layers"""
    def __iter__(self) -> Iterator:
        for _, layer in self._maps:
            yield from layer

    def __len__(self) -> int:
        return sum(len(m) for _, m in self._maps)

    def __getitem__(self, index):
        if isinstance(index, slice):
            return list(self)[index]
        for _, layer in self._maps:
            if index < len(layer):
                return layer[index]
            index -= len(layer)
        raise IndexError(index)

    def __add__(self, other):
        return list(self) + list(other)

    def __radd__(self, other):
        return list(other) + list(self)


class LayeredConfProxy(MultiMapProxy):
    """Layered configuration

    Used as a context manager, adds a temporary top layer that takes
    all writes.
    """
    def __str__(self) -> str:
        try:
            return self.to_yaml()
        except ruamel.yaml.serializer.SerializerError:
            return self.__repr__()

    def __enter__(self) -> "LayeredConfProxy":
        self._maps.insert(0, ("dynamic", CommentedMap()))
        return self

    def __exit__(self, *args) -> None:
        name, _ = self._maps.pop(0)
        if name != "dynamic":
            raise BoxcountConfigError(self, "Config layers out of order")


def to_plain(obj: Any) -> Any:
    """Merged copy of a proxy as plain dicts and lists"""
    if isinstance(obj, Mapping):
        return {key: to_plain(obj[key]) for key in obj}
    if isinstance(obj, Sequence) and not isinstance(obj, str):
        return [to_plain(item) for item in obj]
    return obj


RoundTripRepresenter.add_representer(LayeredConfProxy,
                                     RoundTripRepresenter.represent_dict)
RoundTripRepresenter.add_representer(MultiMapProxy,
                                     RoundTripRepresenter.represent_dict)
RoundTripRepresenter.add_representer(MultiSeqProxy,
                                     RoundTripRepresenter.represent_list)

rt_yaml = YAML(typ="rt")


def load(files: List[str]) -> LayeredConfProxy:
    """Stack configuration files, the last one on top

    Raises:
      BoxcountConfigError: if a file is unreadable or not a mapping
    """
    layers = []
    for fn in reversed(files):
        try:
            with open(fn, "r") as handle:
                data = rt_yaml.load(handle)
        except (OSError, ruamel.yaml.YAMLError) as exc:
            raise BoxcountConfigError(fn, f"Failed to read '{fn}': {exc}",
                                      exc=exc)
        if data is None:
            data = CommentedMap()
        if not isinstance(data, Mapping):
            raise BoxcountConfigError(
                data, f"Malformed config file '{fn}': not a mapping")
        log.debug("Loaded config layer %s", fn)
        layers.append((fn, data))
    return LayeredConfProxy(layers)
