"""Exception hierarchy shared by every module."""


class Fin2CatError(Exception):
    """Base class for all engine errors."""


class CategoryError(Fin2CatError):
    """Raised when raw tables do not describe a category."""


class MalformedTable(CategoryError):
    pass


class NonComposablePair(CategoryError):
    def __init__(self, g, f, reason="not composable"):
        self.pair = (g, f)
        super().__init__(f"composition table entry ({g}, {f}): {reason}")


class AssociativityViolation(CategoryError):
    def __init__(self, h, g, f, left, right):
        self.triple = (h, g, f)
        super().__init__(
            f"({h}∘{g})∘{f} = {left} but {h}∘({g}∘{f}) = {right}")


class IdentityViolation(CategoryError):
    def __init__(self, morphism, detail):
        self.morphism = morphism
        super().__init__(f"identity law fails at {morphism}: {detail}")


class FunctorError(Fin2CatError):
    pass


class NaturalityError(Fin2CatError):
    pass


class NotParallel(Fin2CatError):
    pass


class SizeBudgetExceeded(Fin2CatError):
    """A search or construction outgrew its configured budget."""


class UniversalPropertyFailure(Fin2CatError):
    """A constructed limit failed its own universal-property check.

    This always signals a bug in the engine, never bad input.
    """


class InternalConsistencyError(Fin2CatError):
    """Two independent decision procedures disagreed."""


class NotAFibration(Fin2CatError):
    pass


class NoChosenLimits(Fin2CatError):
    pass


class NotACategory(Fin2CatError):
    def __init__(self, witness, detail=""):
        self.witness = witness
        super().__init__(f"not a category: fails {witness}" + (f" ({detail})" if detail else ""))


class FuelExhausted(Fin2CatError):
    def __init__(self, partial, outstanding, trace):
        self.partial = partial
        self.outstanding = outstanding
        self.trace = trace
        super().__init__(
            f"fuel exhausted after {len(trace)} cells; "
            f"{len(outstanding)} lifting problems outstanding")


class IllTypedExpression(Fin2CatError):
    pass


class NotPointwiseEquivalence(Fin2CatError):
    pass


class NotInImage(Fin2CatError):
    pass


class NotCloven(Fin2CatError):
    pass


class NotRelated(Fin2CatError):
    pass


class MonoidalError(Fin2CatError):
    pass


class PentagonViolation(MonoidalError):
    def __init__(self, a, b, c, d):
        self.quadruple = (a, b, c, d)
        super().__init__(f"pentagon fails at ({a}, {b}, {c}, {d})")


class TriangleViolation(MonoidalError):
    def __init__(self, a, b):
        self.pair = (a, b)
        super().__init__(f"triangle fails at ({a}, {b})")


class NaturalityViolation(MonoidalError):
    def __init__(self, what, witness):
        self.witness = witness
        super().__init__(f"{what} is not natural at {witness}")
