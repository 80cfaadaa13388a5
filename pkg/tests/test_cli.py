"""Command-line surface: exit codes, output formats, determinism."""

import io
import json
import re

import pytest

from isbbrauer import cli, dsl
from isbbrauer.brauer import unramified_brauer

INVALID_POINT_PAIR = """\
cover: irreducible
symbols: a

curve left:
  type: I
  cover: ramified
  ext left_t: 0

curve right:
  type: I
  cover: ramified
  ext right_t: 0

point p:
  curves: left, right
  etype: II_II
"""

WARNED_BUT_VALID = """\
cover: irreducible
symbols: a

curve carrier:
  type: II
  cover: inert
  ext carrier_t: a
"""

FAN_OK = """\
ray 1 0 0 0
ray 1 2 0 0
cone 0 1
subdivide 1 1 0 0
"""


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = cli.run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_example_hpt_text_report():
    code, out, err = run("example", "hpt")
    assert code == cli.OK
    assert "h2nr_dim: 1" in out
    assert "kernel_dim: 1" in out
    assert "  p: 6" in out
    assert err == ""


def test_example_emit_matches_builtin_source():
    code, out, _ = run("example", "cubic-quartic", "--emit")
    assert code == cli.OK
    assert out == dsl.builtin_source("cubic-quartic")


def test_unknown_example_is_usage_error():
    code, out, err = run("example", "nope")
    assert code == cli.USAGE
    assert "unknown builtin" in err


def test_validate_clean_file(tmp_path):
    cfg = tmp_path / "good.cfg"
    cfg.write_text(dsl.builtin_source("hpt"))
    code, out, _ = run("validate", str(cfg))
    assert code == cli.OK
    assert "result: ok" in out


def test_validate_reports_warnings_without_failing(tmp_path):
    cfg = tmp_path / "warned.cfg"
    cfg.write_text(WARNED_BUT_VALID)
    code, out, _ = run("validate", str(cfg))
    assert code == cli.OK
    assert "W_CORES_DEFAULTED" in out


def test_forbidden_point_pair_is_semantic_failure(tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(INVALID_POINT_PAIR)
    for cmd in ("validate", "compute"):
        code, out, err = run(cmd, str(cfg))
        assert code == cli.INVALID
        assert "POINT_PAIR" in out + err


def test_parse_error_reports_position(tmp_path):
    cfg = tmp_path / "broken.cfg"
    cfg.write_text("cover: sideways\nsymbols: a\n")
    code, _, err = run("validate", str(cfg))
    assert code == cli.PARSE_ERROR
    assert f"{cfg}:1:8:" in err


def test_missing_file_is_usage_error(tmp_path):
    code, _, err = run("compute", str(tmp_path / "absent.cfg"))
    assert code == cli.USAGE
    assert "absent.cfg" in err


def test_bad_subcommand_is_usage_error():
    code, _, _ = run("frobnicate")
    assert code == cli.USAGE
    code, _, _ = run()
    assert code == cli.USAGE


def test_help_exits_clean(capsys):
    code, _, _ = run("--help")
    assert code == cli.OK
    assert "validate" in capsys.readouterr().out


def test_compute_json_roundtrips_dims(tmp_path):
    cfg = tmp_path / "hpt.cfg"
    cfg.write_text(dsl.builtin_source("hpt"))
    code, out, _ = run("compute", str(cfg), "--json")
    assert code == cli.OK
    doc = json.loads(out)
    assert list(doc) == [
        "dims", "p_labels", "q_labels", "r_labels",
        "m_pr", "m_qp", "m_sp", "generators", "assertions",
    ]
    assert doc["dims"] == {"s": 0, "p": 6, "q": 3, "r": 3, "kernel": 1, "h2nr": 1}
    assert doc["m_pr"] == [[0, 0, 1, 1, 1, 1], [1, 1, 0, 0, 1, 1], [1, 1, 1, 1, 0, 0]]
    assert doc["assertions"] == {"gc1": "ok", "gc2": "ok", "gc3": "ok", "gc4": "ok"}
    (gen,) = doc["generators"]
    assert sorted(gen["ramification"]) == ["x-axis", "y-axis", "z-axis"]

    text_code, text_out, _ = run("compute", str(cfg))
    assert text_code == cli.OK
    for key, value in doc["dims"].items():
        if key in ("kernel", "h2nr"):
            assert f"{key}_dim: {value}" in text_out
        else:
            assert f"  {key}: {value}" in text_out


def test_json_contains_no_floats():
    report = unramified_brauer(dsl.builtin("hpt"))
    out = cli.report_json(report)
    assert not re.search(r"\d\.\d", out)

    def walk(node):
        if isinstance(node, dict):
            for v in node.values():
                walk(v)
        elif isinstance(node, list):
            for v in node:
                walk(v)
        else:
            assert isinstance(node, (int, str))

    walk(json.loads(out))


def test_output_is_byte_deterministic(tmp_path):
    cfg = tmp_path / "hpt.cfg"
    cfg.write_text(dsl.builtin_source("hpt"))
    first = run("compute", str(cfg), "--json")
    second = run("compute", str(cfg), "--json")
    assert first == second
    assert run("example", "hpt") == run("example", "hpt")


def test_explain_describes_local_kernels(tmp_path):
    cfg = tmp_path / "hpt.cfg"
    cfg.write_text(dsl.builtin_source("hpt"))
    code, out, _ = run("explain", str(cfg))
    assert code == cli.OK
    assert "curve x-axis (type II, split)" in out
    assert "restriction kernel (dim 0)" in out


def test_toric_demo_ends_smooth():
    code, out, _ = run("toric", "demo")
    assert code == cli.OK
    assert out.rstrip().splitlines()[-1] == "smooth: true"


def test_toric_check_resolves_fan(tmp_path):
    fan = tmp_path / "quadric.fan"
    fan.write_text(FAN_OK)
    code, out, _ = run("toric", "check", str(fan))
    assert code == cli.OK
    assert "smooth: true" in out
    assert "unimodular" in out


def test_toric_check_parse_error(tmp_path):
    fan = tmp_path / "short.fan"
    fan.write_text("ray 1 0\ncone 0\n")
    code, _, err = run("toric", "check", str(fan))
    assert code == cli.PARSE_ERROR
    assert f"{fan}:1:1:" in err


def test_toric_check_semantic_errors(tmp_path):
    fan = tmp_path / "oob.fan"
    fan.write_text("ray 1 0 0 0\ncone 0 7\n")
    code, _, err = run("toric", "check", str(fan))
    assert code == cli.INVALID
    assert "line 2" in err

    fan.write_text("ray 1 0 0 0\nray 1 2 0 0\ncone 0 1\nsubdivide 0 0 1 0\n")
    code, _, err = run("toric", "check", str(fan))
    assert code == cli.INVALID
    assert "outside the support" in err
