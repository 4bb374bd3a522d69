import json
import math

import pytest
from click.testing import CliRunner

from qclock.cli import ConfigError, main, parse_angle, parse_angle_list, parse_config
from qclock.errors import InvalidArgument


@pytest.fixture
def runner():
    return CliRunner()


@pytest.mark.parametrize(
    "text, value",
    [
        ("pi/4", math.pi / 4),
        ("3pi/4", 3 * math.pi / 4),
        ("3*pi/4", 3 * math.pi / 4),
        ("-pi/2", -math.pi / 2),
        ("pi", math.pi),
        ("2pi", 2 * math.pi),
        ("0.25", 0.25),
        ("1e-3", 1e-3),
        (1, 1.0),
    ],
)
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value, abs=1e-15)


@pytest.mark.parametrize("text", ["pie", "nan", "inf", "pi/x", ""])
def test_parse_angle_rejects(text):
    with pytest.raises(InvalidArgument):
        parse_angle(text)


def test_parse_angle_list():
    assert parse_angle_list("0, pi/2,1") == pytest.approx((0, math.pi / 2, 1))
    assert parse_angle_list(["pi", 0.5]) == pytest.approx((math.pi, 0.5))


def test_config_merge_flags_win(tmp_path):
    cfg_file = tmp_path / "c.json"
    cfg_file.write_text(json.dumps({"command": "census", "params": {"steps": 4, "m": "pi/4"}, "seed": 9}))
    cfg = parse_config("census", {"steps": 5}, str(cfg_file))
    assert cfg.params["steps"] == 5
    assert cfg.params["m"] == pytest.approx(math.pi / 4)
    assert cfg.seed == 9


@pytest.mark.parametrize(
    "doc",
    [
        {"bogus": 1},
        {"params": {"nope": 1}},
        {"command": "walk-compare"},
    ],
)
def test_config_rejects(tmp_path, doc):
    cfg_file = tmp_path / "c.json"
    cfg_file.write_text(json.dumps(doc))
    with pytest.raises(ConfigError):
        parse_config("census", {}, str(cfg_file))


def test_unknown_config_key_exit_code(runner, tmp_path):
    cfg_file = tmp_path / "c.json"
    cfg_file.write_text(json.dumps({"params": {"nope": 1}}))
    res = runner.invoke(main, ["census", "--config", str(cfg_file)])
    assert res.exit_code == 2


@pytest.mark.parametrize(
    "args",
    [
        ["timeline-verify", "--n", "1"],
        ["timeline-verify", "--n", "14"],
        ["timeline-verify", "--m", "0.3"],
        ["protocol-run", "--mode", "sampled"],
        ["census", "--random-tau"],
        ["census", "--m", "pies"],
    ],
)
def test_invalid_configuration_exit_2(runner, args):
    assert runner.invoke(main, args).exit_code == 2


@pytest.mark.parametrize(
    "args",
    [
        ["timeline-verify", "--n", "5"],
        ["protocol-run", "--n", "6"],
        ["protocol-run", "--n", "6", "--mode", "sampled", "--seed", "3"],
        ["entropy-audit", "--samples", "50", "--seed", "1"],
        ["gadget-verify", "--tau", "0,pi/3", "--steps", "2,3"],
        ["census", "--steps", "5"],
        ["census", "--m", "1.0", "--steps", "5", "--random-tau", "--seed", "2"],
        ["walk-compare", "--grid", "3"],
    ],
)
def test_commands_pass(runner, args):
    res = runner.invoke(main, args)
    assert res.exit_code == 0, res.output


def test_violation_exit_1(runner):
    # the boundary generator has eigenvalue -1 at 3 pi/4
    assert runner.invoke(main, ["timeline-verify", "--n", "4", "--m", "3pi/4"]).exit_code == 1


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_output_is_byte_stable(runner, tmp_path, fmt):
    outs = []
    for k in range(2):
        path = tmp_path / f"out{k}.{fmt}"
        args = ["protocol-run", "--n", "5", "--mode", "sampled", "--seed", "4", "--format", fmt, "-o", str(path)]
        assert runner.invoke(main, args).exit_code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    if fmt == "json":
        doc = json.loads(outs[0])
        assert doc["ok"] is True and doc["seed"] == 4


@pytest.mark.parametrize(
    "args, header",
    [
        (["census", "--steps", "3"], "steps,distinct_branches,expected,dedup_tolerance"),
        (["timeline-verify", "--n", "3"], "check,value,relation,target,tolerance,passed"),
    ],
)
def test_csv_header(runner, args, header):
    res = runner.invoke(main, args + ["--format", "csv"])
    assert res.output.splitlines()[0] == header


def test_forced_register_violates_least_entropy(runner):
    # generic m with d_C = 4 cannot hold S(C|Q) at one bit
    assert runner.invoke(main, ["protocol-run", "--m", "1.0", "--d-c", "4"]).exit_code == 1
    assert runner.invoke(main, ["protocol-run", "--n", "99"]).exit_code == 2
