"""Exception hierarchy shared by every module."""


class GreedoidError(ValueError):
    pass


class AxiomViolation(GreedoidError):
    """An explicit family lacks the empty set or fails the exchange axiom.

    ``pair`` holds the offending ``(X, Y)`` masks; for a missing empty set
    it is ``(None, None)``.
    """

    def __init__(self, message, pair=(None, None)):
        super().__init__(message)
        self.pair = pair


class SizeLimit(GreedoidError):
    pass


class BadParams(GreedoidError):
    pass


class BadArgs(GreedoidError):
    pass


class NotFeasible(GreedoidError):
    pass


class NoWitness(GreedoidError):
    pass


class ContractNotFeasible(GreedoidError):
    pass


class NotInterval(GreedoidError):
    pass


class NotLocalPoset(GreedoidError):
    pass


class NotLocalForest(GreedoidError):
    pass


class NotSubfeasible(GreedoidError):
    pass


class NotAPath(GreedoidError):
    pass


class ObjectiveUndefined(GreedoidError):
    pass


class NotAViolation(GreedoidError):
    pass


class NegativeWeight(GreedoidError):
    pass


class Disconnected(GreedoidError):
    pass


class ParseError(GreedoidError):
    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ValidationError(GreedoidError):
    pass
