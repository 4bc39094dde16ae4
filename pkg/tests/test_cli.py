import importlib
import json
import logging

import click

import pytest

from boxcount.cli.show import ConfigPathParam
from boxcount.cli.z import parse_params, parse_qorder
from boxcount.exceptions import BoxcountParseError, BoxcountUsageError
from boxcount.verify import Report

log = logging.getLogger(__name__)  # pylint: disable=invalid-name

ADJOINT = {"ranks": [1], "matter": [{"i": 1, "j": 1, "mass": "u"}]}


def last_line(result):
    return result.output.strip().splitlines()[-1]


def test_help(invoker):
    res = invoker.call("--help")
    assert "Boxcounting" in res.output
    for name in ("vertex", "z", "verify", "nekrasov", "show", "geometry"):
        assert name in res.output


@pytest.mark.usefixtures("fresh_cache")
class VertexCmdTest(object):
    def test_degree0(self, invoker):
        res = invoker.call("vertex", "--legs", ";;", "-z", "3", "-s", "cy")
        assert last_line(res) == "1 + z + 3z^2 + 6z^3"

    def test_json(self, invoker):
        res = invoker.call("vertex", "-l", ";;", "-z", "2", "-s", "cy",
                           "-f", "json")
        data = json.loads(res.output[res.output.index("{"):])
        assert data["terms"]["1"] == {"0": "1", "1": "1", "2": "3"}

    def test_out_file(self, invoker, saved_tmpdir):
        invoker.call("vertex", "-l", ";;", "-z", "2", "-s", "cy",
                     "-o", "vertex.txt")
        assert saved_tmpdir.join("vertex.txt").read() == "1 + z + 3z^2\n"

    def test_numeric_point(self, invoker):
        res = invoker.call("vertex", "-l", ";;", "-z", "1", "-s", "cy",
                           "-s", "t1=4", "-s", "t2=9")
        assert last_line(res) == "1 + z"

    def test_config_order_is_logged(self, invoker, caplog):
        caplog.set_level(logging.INFO)
        res = invoker.call("vertex", "-v", "-l", ";;", "-s", "cy")
        assert last_line(res) == "1 + z + 3z^2 + 6z^3 + 13z^4"
        assert "Using truncation.zorder = 4 from config" in caplog.text

    def test_explicit_order_is_not_logged(self, invoker, caplog):
        caplog.set_level(logging.INFO)
        invoker.call("vertex", "-v", "-l", ";;", "-z", "1", "-s", "cy")
        assert "from config" not in caplog.text

    def test_order_and_delta_conflict(self, invoker):
        res = invoker.call_raises("vertex", "-l", "1;;", "-z", "2",
                                  "-d", "1")
        assert res.exit_code == 2

    def test_bad_legs(self, invoker):
        with pytest.raises(BoxcountParseError):
            invoker.call("vertex", "-l", "bad")
        assert invoker.call_raises("vertex", "-l", "bad").exit_code == 2

    def test_incomplete_point(self, invoker):
        with pytest.raises(BoxcountUsageError):
            invoker.call("vertex", "-l", ";;", "-s", "t1=4")
        res = invoker.call_raises("vertex", "-l", ";;", "-s", "t1=4")
        assert res.exit_code == 2


class VerifyCmdTest(object):
    def test_pass(self, invoker):
        res = invoker.call_raises("verify", "mcmahon", "-n", "6")
        assert res.exit_code == 0
        assert last_line(res) == "mcmahon through order 6: pass"

    def test_config_order(self, invoker, caplog):
        caplog.set_level(logging.INFO)
        res = invoker.call("verify", "mcmahon", "-v")
        assert last_line(res) == "mcmahon through order 4: pass"
        assert "Using truncation.order = 4 from config" in caplog.text

    def test_json_report(self, invoker, saved_tmpdir):
        invoker.call("verify", "mcmahon", "-n", "4", "-o", "report.json")
        data = json.loads(saved_tmpdir.join("report.json").read())
        assert data["status"] == "pass"
        assert data["order"] == 4

    def test_unknown_suite(self, invoker):
        with pytest.raises(click.UsageError):
            invoker.call("verify", "nosuch")
        assert invoker.call_raises("verify", "nosuch").exit_code == 2

    def test_failure_exit_code(self, invoker, monkeypatch):
        def failing(suite, order, **kwargs):
            return Report(suite, order).fail(n=1)
        monkeypatch.setattr(importlib.import_module("boxcount.cli.verify"),
                            "run_suite", failing)
        res = invoker.call_raises("verify", "mcmahon", "-n", "2")
        assert res.exit_code == 1
        assert "fail" in res.output


class NekrasovCmdTest(object):
    def test_needs_positive_rank(self, invoker):
        assert invoker.call_raises("nekrasov", "--rank", "0").exit_code == 2

    def test_spec_or_rank(self, invoker, saved_tmpdir):
        saved_tmpdir.join("spec.json").write(json.dumps(ADJOINT))
        with pytest.raises(BoxcountUsageError):
            invoker.call("nekrasov", "spec.json", "--rank", "1")
        with pytest.raises(BoxcountUsageError):
            invoker.call("nekrasov")

    def test_massless_adjoint(self, invoker, saved_tmpdir):
        saved_tmpdir.join("spec.json").write(json.dumps(ADJOINT))
        res = invoker.call("nekrasov", "spec.json", "-n", "2", "-s", "u=1")
        assert last_line(res) == "1 + z + 2z^2"

    def test_unknown_variable(self, invoker, saved_tmpdir):
        saved_tmpdir.join("spec.json").write(json.dumps(ADJOINT))
        with pytest.raises(BoxcountUsageError):
            invoker.call("nekrasov", "spec.json", "-s", "m=1")
        with pytest.raises(BoxcountUsageError):
            invoker.call("nekrasov", "spec.json", "-s", "cy")


@pytest.mark.usefixtures("fresh_cache")
class ZCmdTest(object):
    def test_conifold(self, invoker):
        res = invoker.call("z", "conifold", "-Q", "1", "-z", "2", "-s", "cy")
        assert "1: 1 + 2z + 7z^2" in res.output.splitlines()
        assert any(line.startswith("Q1: ")
                   for line in res.output.splitlines())

    def test_json_names_geometry(self, invoker):
        res = invoker.call("z", "C3", "-Q", "0", "-z", "1", "-s", "cy",
                           "-f", "json")
        data = json.loads(res.output[res.output.index("{"):])
        assert data["geometry"] == "C3"
        assert data["terms"]["1"] == {"0": "1", "1": "1"}

    def test_geometry_file(self, invoker, saved_tmpdir):
        res = invoker.call("geometry", "show", "C3")
        saved_tmpdir.join("c3.json").write(res.output)
        res = invoker.call("z", "c3.json", "-z", "2", "-s", "cy")
        assert last_line(res) == "1 + z + 3z^2"

    def test_fit_not_in_csv(self, invoker):
        res = invoker.call_raises("z", "conifold", "-Q", "1", "-z", "2",
                                  "--fit", "-f", "csv")
        assert res.exit_code == 2

    def test_parse_qorder(self):
        assert parse_qorder("2") == 2
        assert parse_qorder("Q1=2, Q2=1") == {"Q1": 2, "Q2": 1}
        with pytest.raises(BoxcountParseError):
            parse_qorder("Q1")
        with pytest.raises(BoxcountParseError):
            parse_qorder("Q1=x")

    def test_parse_params(self):
        assert parse_params(["n=3", "boundary=[\"1\"]", "tag=abc"]) == \
            {"n": 3, "boundary": ["1"], "tag": "abc"}
        with pytest.raises(BoxcountParseError):
            parse_params(["n"])


class GeometryCmdTest(object):
    def test_list(self, invoker):
        res = invoker.call("geometry", "list")
        names = [line.split()[0] for line in res.output.splitlines()]
        assert "conifold" in names
        assert "Xn" in names

    def test_list_includes_config(self, invoker, saved_tmpdir):
        saved_tmpdir.join("boxcount.yml").write(
            "geometries:\n  mine:\n    builtin: C3\n")
        res = invoker.call("geometry", "list")
        assert "(config)" in res.output

    def test_show(self, invoker):
        res = invoker.call("geometry", "show", "conifold")
        assert json.loads(res.output)["name"] == "conifold"

    def test_unknown(self, invoker):
        assert invoker.call_raises("geometry", "show", "P7").exit_code == 2


class ShowCmdTest(object):
    def test_property(self, invoker):
        res = invoker.call("show", "fit.max_budget")
        assert res.output.strip() == "6"

    def test_section(self, invoker):
        res = invoker.call("show", "truncation")
        assert "zorder: 4" in res.output

    def test_unknown(self, invoker):
        with pytest.raises(BoxcountUsageError, match="no 'nosuch' in fit"):
            invoker.call("show", "fit.nosuch")
        assert invoker.call_raises("show", "nosuch").exit_code == 2

    def test_files(self, invoker, saved_tmpdir):
        saved_tmpdir.join("boxcount.yml").write("jobs: 2\n")
        res = invoker.call("show", "--files")
        lines = res.output.strip().splitlines()
        assert lines[0].endswith("defaults.yml")
        assert lines[-1] == str(saved_tmpdir.join("boxcount.yml"))

    def test_complete(self, saved_cwd):
        param = ConfigPathParam()
        assert "truncation" in param.complete(None, "trunc")
        assert set(param.complete(None, "fit.max")) == \
            {"fit.max_budget", "fit.max_numerator"}
        assert param.complete(None, "nosuch.x") == []
        assert param.complete(None, "jobs.x") == []
