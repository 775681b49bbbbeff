"""Exception types shared across the package."""


class SleecError(Exception):
    """Base class for all errors raised by this package."""


class LexError(SleecError):
    """Raised when the scanner hits a character it cannot tokenize."""

    def __init__(self, message, line, col):
        super().__init__("%d:%d: %s" % (line, col, message))
        self.line = line
        self.col = col


class ParseError(SleecError):
    """Raised on a syntax error; carries the position and what was expected."""

    def __init__(self, message, line, col, expected=None):
        super().__init__("%d:%d: %s" % (line, col, message))
        self.line = line
        self.col = col
        self.expected = tuple(expected) if expected else ()


class ConfigError(SleecError):
    """Bad or missing configuration value (constants, domains, bounds)."""


class UnguardedRecursion(SleecError):
    """A process reference can recurse without consuming an event or a tock."""


class StateLimitExceeded(SleecError):
    """Exploration hit the hard cap on distinct states."""

    def __init__(self, limit, states_explored):
        super().__init__(
            "state limit of %d exceeded after %d states" % (limit, states_explored)
        )
        self.limit = limit
        self.states_explored = states_explored


class ChannelMismatch(SleecError):
    """An agent model does not declare the channels a rule relies on."""
