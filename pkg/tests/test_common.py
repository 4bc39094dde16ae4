import logging

import pytest

from boxcount.common import AttrDict, make_bar_format, parallel_map, progress


def square(value):
    return value * value


class AttrDictTest(object):
    def test_attribute_access(self):
        data = AttrDict({"fit": {"max_budget": 6}, "jobs": 2})
        assert data.jobs == 2
        assert data.fit.max_budget == 6
        assert isinstance(data.fit, AttrDict)

    def test_missing(self):
        with pytest.raises(AttributeError):
            AttrDict().nosuch  # pylint: disable=expression-not-assigned

    def test_read_only(self):
        with pytest.raises(NotImplementedError):
            AttrDict().jobs = 3


class ParallelMapTest(object):
    def test_serial(self):
        assert parallel_map(square, range(5)) == [0, 1, 4, 9, 16]

    def test_workers_keep_order(self):
        assert parallel_map(square, range(20), jobs=2) == \
            [n * n for n in range(20)]

    def test_with_progress(self):
        assert parallel_map(square, [3, 4], desc="squares") == [9, 16]

    def test_empty(self):
        assert parallel_map(square, [], jobs=4) == []


def test_progress_hidden_when_quiet():
    logger = logging.getLogger("boxcount.test_common")
    logger.setLevel(logging.WARNING)
    bar = progress(range(3), "quiet", logger=logger)
    assert bar.disable
    assert list(bar) == [0, 1, 2]


def test_bar_format():
    assert make_bar_format(eta=True).endswith("ETA {remaining}")
    assert "{desc:<20}" in make_bar_format()
