"""Exception hierarchy shared by every module."""


class CornerError(Exception):
    """Base class for all errors raised by the library."""


# value terms and signatures
class UnknownSort(CornerError):
    pass


class UnknownVariable(CornerError):
    pass


class UnknownOp(CornerError):
    pass


class ArityMismatch(CornerError):
    pass


class SortMismatch(CornerError):
    pass


class ContextMismatch(CornerError):
    pass


class UnboundVariable(CornerError):
    pass


# process terms
class AmbiguousVariable(CornerError):
    """A free variable whose sort cannot be read off the term."""


class ProtocolMismatch(CornerError):
    pass


class BinderPositionError(CornerError):
    pass


class SplitError(CornerError):
    pass


# rewriting
class InvalidRedex(CornerError):
    pass


class JudgmentMismatch(CornerError):
    pass


class NotEffectful(CornerError):
    pass


class EmptyContext(CornerError):
    pass


# composition and cells
class ProtocolChainError(CornerError):
    pass


class IllFormedComposite(CornerError):
    pass


class BoundaryMismatch(CornerError):
    pass


# generation and front end
class Unsatisfiable(CornerError):
    pass


class UnknownTerm(CornerError):
    pass


class ParseError(CornerError):
    def __init__(self, message, line=0, col=0):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col
