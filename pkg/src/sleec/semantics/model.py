"""The compiled form of a rule file: channels, datatypes, constants and
process equations, plus per-rule metadata the analyses need."""

from dataclasses import dataclass, field

from ..tockcsp.env import ProcEnv


@dataclass
class ChannelDecl:
    name: str
    # None for plain events; ("bool",) / ("range", lo, hi) / ("scale", literals)
    shape: object = None
    domain: tuple = None  # concrete values carried, None for plain events


@dataclass
class RuleInfo:
    rule_id: str
    trigger_event: str
    events: tuple  # whole-rule event alphabet, trigger first
    response_events: tuple
    measures: tuple  # measures the rule reads, in read order


@dataclass
class CspModel:
    channels: list = field(default_factory=list)
    datatypes: dict = field(default_factory=dict)  # scale name -> literal names
    constants: dict = field(default_factory=dict)
    processes: dict = field(default_factory=dict)  # name -> (params, ProcTerm)
    rules: dict = field(default_factory=dict)  # rule id -> RuleInfo
    tock_unit_seconds: int = 1  # wall-clock seconds one tock stands for

    def channel(self, name):
        for c in self.channels:
            if c.name == name:
                return c
        return None

    def define(self, name, body, params=()):
        if name in self.processes:
            raise ValueError("process %r defined twice" % name)
        self.processes[name] = (tuple(params), body)

    def define_if_absent(self, name, body, params=()):
        if name not in self.processes:
            self.processes[name] = (tuple(params), body)

    def build_env(self, check=True):
        """A fresh process environment over this model's channels and
        equations."""
        env = ProcEnv()
        for c in self.channels:
            env.declare_channel(c.name, c.domain)
        for name, (params, body) in self.processes.items():
            env.define(name, params, body)
        if check:
            env.check_guarded()
        return env
