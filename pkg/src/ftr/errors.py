"""Exception hierarchy shared by every module."""


class FtrError(Exception):
    """Base class for all errors raised by ftr."""


class DimensionMismatch(FtrError, ValueError):
    """Two quantities with different dimension signatures were combined."""


class NegativeBase(FtrError, ValueError):
    pass


class MissingConstant(FtrError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"missing constant {self.name!r}"


class ParseError(FtrError, ValueError):
    def __init__(self, message, line=None, source=None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)


class DuplicateName(ParseError):
    pass


class NonPositiveInput(FtrError, ValueError):
    pass


class DomainError(FtrError, ValueError):
    pass


class OutOfRange(DomainError):
    pass


class Singular(DomainError):
    pass


class ZeroFunction(DomainError):
    pass


class NonOscillatory(DomainError):
    pass


class GridMismatch(FtrError, ValueError):
    pass


class SameAxis(FtrError, ValueError):
    pass


class NotHermitian(FtrError, ValueError):
    pass


class NotNormalized(FtrError, ValueError):
    pass


class ZeroL(FtrError, ValueError):
    pass


class ZeroMultiplicity(FtrError, ValueError):
    pass


class NonPositiveMultiplicity(FtrError, ValueError):
    pass


class ComplexRoots(FtrError, ValueError):
    pass


class UnknownClass(FtrError, KeyError):
    pass


class NotMateRespecting(FtrError, ValueError):
    pass


class ConfigError(FtrError, ValueError):
    pass
