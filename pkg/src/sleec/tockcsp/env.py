"""Process environments: channel declarations, named equations, bounds.

An environment owns the memo tables for reference expansion and transition
computation, so two environments never share cached semantics (they may pin
measure channels differently).
"""

from dataclasses import dataclass, field

from ..errors import SleecError, UnguardedRecursion
from . import terms as T


@dataclass
class Config:
    """Exploration bounds. max_tocks / max_depth bound tocks and non-tock
    events per path; state_limit is a hard cap on distinct states."""

    max_tocks: int = 100
    max_depth: int = 40
    measure_domains: dict = field(default_factory=dict)
    state_limit: int = 1_000_000


class ProcEnv:
    def __init__(self):
        self.channels = {}  # name -> tuple of values, or None for plain events
        self.equations = {}  # name -> (params tuple, body term)
        self.pinned = {}  # channel -> single value forced on inputs
        self._expansions = {}
        self._trans = {}
        self._checked = False

    # -- declarations ---------------------------------------------------------

    def declare_channel(self, name, domain=None):
        if name in self.channels:
            raise SleecError("channel %r declared twice" % name)
        self.channels[name] = tuple(domain) if domain is not None else None

    def define(self, name, params, body):
        if name in self.equations:
            raise SleecError("process %r defined twice" % name)
        self.equations[name] = (tuple(params), body)
        self._checked = False

    def domain(self, chan):
        if chan not in self.channels:
            raise SleecError("channel %r is not declared" % chan)
        return self.channels[chan]

    def channel_index(self, chan):
        for i, name in enumerate(self.channels):
            if name == chan:
                return i
        return len(self.channels)

    def value_index(self, chan, value):
        dom = self.channels.get(chan)
        if dom is None:
            return 0
        try:
            return dom.index(value)
        except ValueError:
            return len(dom)

    # -- expansion --------------------------------------------------------------

    def expand(self, name, args=()):
        key = (name, args)
        got = self._expansions.get(key)
        if got is not None:
            return got
        if name not in self.equations:
            raise SleecError("process %r is not defined" % name)
        params, body = self.equations[name]
        if len(params) != len(args):
            raise SleecError(
                "%s takes %d argument(s), got %d" % (name, len(params), len(args))
            )
        t = body
        for p, a in zip(params, args):
            t = T.tsubst(t, p, a)
        self._expansions[key] = t
        return t

    def with_pinned(self, pinned):
        """A copy of this environment with some channels pinned to one value
        on input; caches are not shared."""
        env = ProcEnv()
        env.channels = dict(self.channels)
        env.equations = dict(self.equations)
        env.pinned = dict(pinned)
        env._checked = self._checked
        return env

    # -- guardedness --------------------------------------------------------------

    def check_guarded(self):
        """Reject mutual recursion that can re-enter a definition without
        consuming an event or letting time pass."""
        nullable = {name: False for name in self.equations}
        changed = True
        while changed:
            changed = False
            for name, (_params, body) in self.equations.items():
                v = _nullable(body, nullable)
                if v and not nullable[name]:
                    nullable[name] = True
                    changed = True
        edges = {
            name: _initial_refs(body, nullable)
            for name, (_params, body) in self.equations.items()
        }
        color = {}  # 1 = on stack, 2 = done

        def visit(name, trail):
            if color.get(name) == 2:
                return
            if color.get(name) == 1:
                cycle = trail[trail.index(name):] + [name]
                raise UnguardedRecursion(
                    "unguarded cycle: %s" % " -> ".join(cycle)
                )
            color[name] = 1
            for succ in edges.get(name, ()):
                if succ in edges:
                    visit(succ, trail + [name])
            color[name] = 2

        for name in edges:
            visit(name, [])
        self._checked = True


def _nullable(t, nmap):
    """Can the term terminate without any event or tock?"""
    k = t.kind
    if k == "skip":
        return True
    if k in ("stop", "wait", "prefix", "output", "input"):
        return False
    if k == "if":
        return _nullable(t.then_p, nmap) or _nullable(t.else_p, nmap)
    if k == "extchoice":
        return any(_nullable(b, nmap) for b in t.branches)
    if k == "seq":
        return _nullable(t.p, nmap) and _nullable(t.q, nmap)
    if k == "hide":
        return _nullable(t.p, nmap)
    if k in ("interleave", "genpar"):
        return _nullable(t.p, nmap) and _nullable(t.q, nmap)
    if k == "interrupt":
        return _nullable(t.p, nmap) or _nullable(t.q, nmap)
    if k == "timedinterrupt":
        return _nullable(t.p, nmap)
    if k == "deadline":
        return _nullable(t.p, nmap)
    if k == "ref":
        return nmap.get(t.name, False)
    raise TypeError(k)


def _initial_refs(t, nmap, out=None):
    """Names reachable from `t` before any event or tock is consumed."""
    if out is None:
        out = set()
    k = t.kind
    if k == "ref":
        out.add(t.name)
    elif k == "if":
        _initial_refs(t.then_p, nmap, out)
        _initial_refs(t.else_p, nmap, out)
    elif k == "extchoice":
        for b in t.branches:
            _initial_refs(b, nmap, out)
    elif k == "seq":
        _initial_refs(t.p, nmap, out)
        if _nullable(t.p, nmap):
            _initial_refs(t.q, nmap, out)
    elif k == "hide":
        _initial_refs(t.p, nmap, out)
    elif k in ("interleave", "genpar", "interrupt"):
        _initial_refs(t.p, nmap, out)
        _initial_refs(t.q, nmap, out)
    elif k in ("timedinterrupt", "deadline"):
        _initial_refs(t.p, nmap, out)
    return out
