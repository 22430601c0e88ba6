"""Exception hierarchy.

Errors raised while reading a scenario file derive from :class:`ScenarioError`;
everything else raised by the numeric pipeline derives from
:class:`ComputationError`. The CLI maps the two families to distinct exit codes.
"""


class VlcError(Exception):
    pass


class ComputationError(VlcError, ValueError):
    pass


class DegenerateLink(ComputationError):
    """LED not strictly above the receiver plane, so link angles are undefined."""


class InvalidCount(ComputationError):
    pass


class InvalidResolution(ComputationError):
    pass


class InvalidAngle(ComputationError):
    pass


class InfiniteLoss(ComputationError):
    """Channel gain is zero; path loss in dB is unbounded."""


class ZeroSignal(ComputationError):
    """Received power is zero; SNR is minus infinity."""


class ZeroNoise(ComputationError):
    pass


class InvalidSweepValue(ComputationError):
    pass


class PositionOutOfRoom(ComputationError):
    def __init__(self, index, position):
        self.index = index
        self.position = position
        super().__init__(f"position {index} {tuple(position)} lies outside the room footprint")


class ScenarioError(VlcError, ValueError):
    pass


class ParseError(ScenarioError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class UnknownKey(ParseError):
    def __init__(self, line, key):
        self.key = key
        super().__init__(line, f"unknown key {key!r}")


class DuplicateKey(ParseError):
    def __init__(self, line, key):
        self.key = key
        super().__init__(line, f"duplicate key {key!r}")


class DomainError(ParseError):
    """A scenario value parsed cleanly but is outside its physical range."""
