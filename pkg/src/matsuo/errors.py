"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class MatsuoError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(MatsuoError, ValueError):
    """Input failed a structural check (exit code 2 on the command line)."""


class UnsupportedError(MatsuoError):
    """Computation is well posed but outside what the methods handle (exit code 3)."""


class DenominatorDivisibleByP(ValidationError):
    def __init__(self, value, p: int):
        super().__init__(f"cannot reduce {value} modulo {p}: denominator divisible by {p}")
        self.value = value
        self.p = p


class InvalidConjugation(ValidationError):
    """A conjugation table violates one of the 3-transposition axioms."""

    def __init__(self, axiom: str, witness: tuple[int, ...], detail: str = ""):
        msg = f"{axiom} fails at {witness}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.axiom = axiom
        self.witness = witness


class NonUniformClasses(ValidationError):
    pass


class QuotientIllDefined(ValidationError):
    pass


class NotIdempotent(ValidationError):
    pass


class NotSemisimple(ValidationError):
    pass


class DegenerateFusionLaw(ValidationError):
    pass


class NotInvolution(ValidationError):
    pass


class NotAutomorphism(ValidationError):
    def __init__(self, witness: tuple[int, int], detail: str = ""):
        super().__init__(f"permutation does not preserve conjugation at {witness} {detail}".rstrip())
        self.witness = witness


class NonIntegralSpectrum(UnsupportedError):
    def __init__(self, residual, partial=None):
        super().__init__(f"collinearity spectrum has a non-integral factor {residual}")
        self.residual = residual
        self.partial = partial


class Underdetermined(UnsupportedError):
    pass


class NonIntegralSolution(ValidationError):
    pass


class Irreducible(UnsupportedError):
    pass


class WrongFlipKind(ValidationError):
    pass
