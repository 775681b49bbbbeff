"""Run configuration: constants, measure domains, bounds.

Config files are flat key-value text, one entry per line, `#` comments:

    ALARM_DEADLINE = 3        # integer value -> a constant
    temperature = 0..40       # range -> a numeric measure's domain
    bound-tocks = 650         # reserved keys tune the exploration
    bound-depth = 40
    tock-unit = 1             # seconds represented by one tock

Command-line flags override file entries; the SLEEC_CONFIG environment
variable supplies a default file path.
"""

import os
from dataclasses import dataclass, field

from .errors import ConfigError
from .semantics.norm import norm_time
from .tockcsp.env import Config as EngineConfig

ENV_VAR = "SLEEC_CONFIG"
_RESERVED = ("bound-tocks", "bound-depth", "tock-unit")


@dataclass
class CheckConfig:
    constant_values: dict = field(default_factory=dict)
    numeric_domains: dict = field(default_factory=dict)  # name -> (lo, hi)
    bound_tocks: int = None   # None -> derived from the spec
    bound_depth: int = None
    tock_unit_factor: int = 1
    output_format: str = "text"


def _int(val, where):
    try:
        return int(val)
    except ValueError:
        raise ConfigError("%s: expected an integer, got %r" % (where, val))


def _range(val, where):
    lo_s, hi_s = val.split("..", 1)
    lo = _int(lo_s.strip(), where)
    hi = _int(hi_s.strip(), where)
    if lo > hi:
        raise ConfigError("%s: empty range %d..%d" % (where, lo, hi))
    return (lo, hi)


def parse_config_text(text, where="<config>"):
    cfg = CheckConfig()
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("%s:%d: expected `key = value`" % (where, ln))
        key, val = (s.strip() for s in line.split("=", 1))
        pos = "%s:%d" % (where, ln)
        if key == "bound-tocks":
            cfg.bound_tocks = _int(val, pos)
        elif key == "bound-depth":
            cfg.bound_depth = _int(val, pos)
        elif key == "tock-unit":
            cfg.tock_unit_factor = _int(val, pos)
            if cfg.tock_unit_factor < 1:
                raise ConfigError("%s: tock-unit must be at least 1" % pos)
        elif ".." in val:
            cfg.numeric_domains[key] = _range(val, pos)
        else:
            cfg.constant_values[key] = _int(val, pos)
    return cfg


def load_config(path=None):
    """Read a config file; falls back to $SLEEC_CONFIG, then to defaults."""
    if path is None:
        path = os.environ.get(ENV_VAR)
    if not path:
        return CheckConfig()
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as err:
        raise ConfigError("cannot read config %s: %s" % (path, err))
    return parse_config_text(text, path)


def apply_flags(cfg, consts=(), ranges=(), bound_tocks=None, bound_depth=None,
                tock_unit=None, as_json=False):
    """Fold command-line flags into a config (flags win)."""
    for item in consts or ():
        if "=" not in item:
            raise ConfigError("--const expects NAME=VALUE, got %r" % item)
        name, val = item.split("=", 1)
        cfg.constant_values[name.strip()] = _int(val.strip(), "--const " + item)
    for item in ranges or ():
        if "=" not in item:
            raise ConfigError("--range expects measure=lo..hi, got %r" % item)
        name, val = item.split("=", 1)
        cfg.numeric_domains[name.strip()] = _range(val.strip(), "--range " + item)
    if bound_tocks is not None:
        cfg.bound_tocks = bound_tocks
    if bound_depth is not None:
        cfg.bound_depth = bound_depth
    if tock_unit is not None:
        if tock_unit < 1:
            raise ConfigError("--tock-unit must be at least 1")
        cfg.tock_unit_factor = tock_unit
    if as_json:
        cfg.output_format = "json"
    return cfg


def _deadlines_of(resp):
    c = resp.constraint
    if c.deadline is not None:
        yield c.deadline
    if c.alternative is not None:
        for d in _deadlines_of(c.alternative):
            yield d
    for df in resp.defeaters:
        if df.response is not None:
            for d in _deadlines_of(df.response):
                yield d


def default_bounds(wf, tock_unit_factor=1):
    """Bounds derived from the spec when none are configured: twice the
    longest deadline window plus slack for tocks, and a few events per rule
    for depth."""
    longest = 0
    for rid in wf.rule_ids():
        for dl in _deadlines_of(wf.rule(rid).response):
            v = dl.value
            amount = v.value if hasattr(v, "value") else wf.constant_value(v.name)
            longest = max(longest, norm_time(amount, dl.unit, tock_unit_factor))
    return (2 * longest + 5, 3 * len(wf.rule_ids()) + 10)


def engine_config(cfg, wf):
    dt, dd = default_bounds(wf, cfg.tock_unit_factor)
    return EngineConfig(
        max_tocks=cfg.bound_tocks if cfg.bound_tocks is not None else dt,
        max_depth=cfg.bound_depth if cfg.bound_depth is not None else dd,
    )
