class DilatorForgeError(Exception):
    pass


class AmbientComparisonUndefined(DilatorForgeError, ValueError):
    pass


class NotASubset(DilatorForgeError, ValueError):
    pass


class DomainViolation(DilatorForgeError, ValueError):
    pass


class InvalidElement(DilatorForgeError, ValueError):
    pass


class NotNormal(DilatorForgeError):
    pass


class Unsupported(DilatorForgeError, NotImplementedError):
    pass


class MalformedCnf(DilatorForgeError, ValueError):
    pass


class FiberMismatch(DilatorForgeError, ValueError):
    pass


class EntryNotInOrder(DilatorForgeError, ValueError):
    pass


class NotMember(DilatorForgeError, ValueError):
    pass


class CodingViolation(DilatorForgeError, ArithmeticError):
    pass


class DecodeFailure(DilatorForgeError, ValueError):
    pass


class InvalidTerm(DilatorForgeError, ValueError):
    pass


class InvalidWitness(DilatorForgeError, ValueError):
    pass


class StageViolation(DilatorForgeError, ValueError):
    pass


class UnknownSuite(DilatorForgeError, KeyError):
    pass


class ParseError(DilatorForgeError, ValueError):
    pass
