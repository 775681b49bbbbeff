"""Check reports: a uniform result record for every analysis."""

from dataclasses import dataclass, field

from .traces import fmt_trace, trace_json

HOLDS = "holds"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"
SKIPPED = "skipped"


@dataclass
class CheckReport:
    kind: str                  # "conflict" | "redundancy" | "conformance"
    rule_ids: tuple
    verdict: str
    witness: tuple = None      # event trace, when the verdict is violated
    states_explored: int = 0
    tocks_bound: int = 0
    depth_bound: int = 0
    truncated: bool = False
    notes: list = field(default_factory=list)

    def to_json(self):
        d = {
            "kind": self.kind,
            "rule_ids": list(self.rule_ids),
            "verdict": self.verdict,
            "witness": trace_json(self.witness) if self.witness is not None else None,
            "states_explored": self.states_explored,
            "bounds": {"tocks": self.tocks_bound, "depth": self.depth_bound},
            "truncated": self.truncated,
            "notes": list(self.notes),
        }
        return d

    def summary_line(self):
        ids = ", ".join(self.rule_ids)
        line = "%s(%s): %s" % (self.kind, ids, self.verdict)
        if self.witness is not None:
            line += "  [%s]" % fmt_trace(self.witness)
        if self.truncated:
            line += "  (bounds reached)"
        return line
