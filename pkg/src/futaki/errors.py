"""Exception hierarchy.

Two families matter to the CLI: input problems (``InputError``, exit 2) and
mathematical failures (``MathError``, exit 1).
"""


class FutakiError(Exception):
    pass


class InputError(FutakiError):
    pass


class ParseError(InputError):
    def __init__(self, reason, text="", position=None):
        self.reason = reason
        self.text = text
        self.position = position
        if position is None:
            msg = reason
        else:
            msg = "%s at position %d" % (reason, position)
            if text:
                msg += "\n  %s\n  %s^" % (text, " " * position)
        super().__init__(msg)


class ValidationError(InputError):
    """Carries every failed invariant, not just the first one."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class MathError(FutakiError):
    pass


class DimensionMismatch(MathError, ValueError):
    pass


class ZeroPolynomial(MathError, ValueError):
    pass


class NonHomogeneous(MathError, ValueError):
    def __init__(self, degrees):
        self.degrees = sorted(degrees)
        super().__init__("polynomial is not homogeneous (monomial degrees %s)" % self.degrees)


class NotFano(MathError):
    pass


class NotEigenvector(MathError):
    def __init__(self, witness, message):
        self.witness = witness
        super().__init__(message)


class NotInSpan(MathError):
    def __init__(self, index, message):
        self.index = index
        super().__init__(message)


class LinearlyDependent(MathError):
    """Defining polynomials of one degree are linearly dependent."""


class NotTangent(MathError):
    def __init__(self, index, witness, message):
        self.index = index
        self.witness = witness
        super().__init__(message)


class DuplicateWeights(MathError):
    pass
