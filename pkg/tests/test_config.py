import pytest

from sleec.config import (CheckConfig, apply_flags, default_bounds,
                          engine_config, load_config, parse_config_text)
from sleec.errors import ConfigError


SAMPLE = """\
# tuning for the small rig
ALARM_DEADLINE = 3
temperature = 0..40   # sensor range
bound-tocks = 650
bound-depth = 40
tock-unit = 2
"""


def test_config_text_parses_constants_ranges_and_bounds():
    cfg = parse_config_text(SAMPLE)
    assert cfg.constant_values == {"ALARM_DEADLINE": 3}
    assert cfg.numeric_domains == {"temperature": (0, 40)}
    assert cfg.bound_tocks == 650
    assert cfg.bound_depth == 40
    assert cfg.tock_unit_factor == 2


def test_blank_lines_and_comments_are_skipped():
    cfg = parse_config_text("\n# only a comment\n\n")
    assert cfg == CheckConfig()


@pytest.mark.parametrize("line,fragment", [
    ("LIMIT = four", "expected an integer"),
    ("temperature = 5..2", "empty range"),
    ("tock-unit = 0", "at least 1"),
    ("just a line", "expected `key = value`"),
])
def test_malformed_entries_are_rejected(line, fragment):
    with pytest.raises(ConfigError) as err:
        parse_config_text(line, where="rig.conf")
    assert fragment in str(err.value)
    assert "rig.conf:1" in str(err.value)


def test_load_config_uses_the_environment_fallback(tmp_path, monkeypatch):
    path = tmp_path / "site.conf"
    path.write_text("bound-tocks = 9\n")
    monkeypatch.setenv("SLEEC_CONFIG", str(path))
    assert load_config().bound_tocks == 9
    monkeypatch.delenv("SLEEC_CONFIG")
    assert load_config() == CheckConfig()


def test_load_config_missing_file_is_a_config_error(tmp_path):
    with pytest.raises(ConfigError) as err:
        load_config(str(tmp_path / "absent.conf"))
    assert "cannot read config" in str(err.value)


def test_flags_override_file_entries():
    cfg = parse_config_text(SAMPLE)
    apply_flags(cfg, consts=["ALARM_DEADLINE=5", "NEW=1"],
                ranges=["temperature=0..10"], bound_tocks=99,
                bound_depth=7, tock_unit=1, as_json=True)
    assert cfg.constant_values == {"ALARM_DEADLINE": 5, "NEW": 1}
    assert cfg.numeric_domains == {"temperature": (0, 10)}
    assert (cfg.bound_tocks, cfg.bound_depth) == (99, 7)
    assert cfg.tock_unit_factor == 1
    assert cfg.output_format == "json"


@pytest.mark.parametrize("kwargs,fragment", [
    (dict(consts=["LIMIT"]), "NAME=VALUE"),
    (dict(consts=["LIMIT=x"]), "expected an integer"),
    (dict(ranges=["temperature"]), "measure=lo..hi"),
    (dict(tock_unit=0), "at least 1"),
])
def test_bad_flag_values_are_rejected(kwargs, fragment):
    with pytest.raises(ConfigError) as err:
        apply_flags(CheckConfig(), **kwargs)
    assert fragment in str(err.value)


def test_default_bounds_follow_the_longest_deadline(firefighter, rad):
    _cfg, wf, _model = firefighter
    # longest deadline is 5 minutes = 300 tocks; nine rules
    assert default_bounds(wf) == (605, 37)
    cfg_r, wf_r, _ = rad
    # longest deadline 2 minutes at 30 s/tock = 4 tocks; four rules
    assert default_bounds(wf_r, cfg_r.tock_unit_factor) == (13, 22)


def test_engine_config_prefers_explicit_bounds(firefighter):
    cfg, wf, _model = firefighter
    auto = engine_config(cfg, wf)
    assert (auto.max_tocks, auto.max_depth) == (605, 37)
    cfg2 = CheckConfig(bound_tocks=50, bound_depth=12)
    manual = engine_config(cfg2, wf)
    assert (manual.max_tocks, manual.max_depth) == (50, 12)
