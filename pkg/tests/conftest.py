"""Shared fixtures: the two rule files with their configs, compiled once."""

import io
import os
import sys

import pytest

from sleec.config import engine_config, load_config
from sleec.frontend import parse, validate
from sleec.semantics import translate_spec
from sleec.tockcsp import parse_tcsp

FIXTURES = os.path.join(os.path.dirname(__file__), os.pardir, "fixtures")


def fixture_path(name):
    return os.path.abspath(os.path.join(FIXTURES, name))


def load_fixture(spec_name, conf_name):
    cfg = load_config(fixture_path(conf_name))
    wf, diags = validate(parse(open(fixture_path(spec_name)).read()), cfg)
    assert wf is not None, [str(d) for d in diags]
    model = translate_spec(wf, cfg.tock_unit_factor)
    return cfg, wf, model


@pytest.fixture(scope="session")
def firefighter():
    return load_fixture("firefighter.sleec", "firefighter.conf")


@pytest.fixture(scope="session")
def rad():
    return load_fixture("rad.sleec", "rad.conf")


@pytest.fixture(scope="session")
def uav_agent():
    return parse_tcsp(open(fixture_path("uav.tcsp")).read())


@pytest.fixture(scope="session")
def rad_agent():
    return parse_tcsp(open(fixture_path("rad.tcsp")).read())


def econf(fixture):
    cfg, wf, _model = fixture
    return engine_config(cfg, wf)


def run_cli(argv):
    """Run the command line in-process; returns (exit code, stdout, stderr)."""
    from sleec.cli import main

    out, err = io.StringIO(), io.StringIO()
    old = sys.stdout, sys.stderr
    sys.stdout, sys.stderr = out, err
    try:
        code = main(list(argv))
    finally:
        sys.stdout, sys.stderr = old
    return code, out.getvalue(), err.getvalue()
