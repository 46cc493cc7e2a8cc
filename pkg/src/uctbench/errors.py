"""Exception types shared across the workbench."""


class WorkbenchError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGroupTable(WorkbenchError):
    """A multiplication table fails a structural precondition (shape, range)."""


class NonAssociative(InvalidGroupTable):
    """Associativity fails; carries the offending triple of element indices."""

    def __init__(self, triple):
        self.triple = tuple(triple)
        a, b, c = self.triple
        super().__init__(f"(a*b)*c != a*(b*c) for (a, b, c) = ({a}, {b}, {c})")


class NoIdentity(InvalidGroupTable):
    def __init__(self):
        super().__init__("table has no two-sided identity element")


class NoInverse(InvalidGroupTable):
    """Some element has no two-sided inverse; carries the element index."""

    def __init__(self, element):
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class UnsupportedSize(WorkbenchError):
    """A preset was requested at a size outside its supported range."""


class UnknownPreset(WorkbenchError):
    """The preset name cannot be parsed."""


class NotADivisor(WorkbenchError):
    """An operation required k | n and received a non-divisor."""


class NotAUnit(WorkbenchError):
    """An operation required gcd(k, n) = 1 and received a non-unit."""


class ModulusMismatch(WorkbenchError):
    """Binary ring operation on elements with different (n, N) parameters."""


class PrimeNotInverted(WorkbenchError):
    """A denominator needs a prime that does not divide the inverted integer N."""


class DescentFailure(WorkbenchError):
    """A cyclotomic value does not lie in the requested smaller subring."""


class CharacterSolveError(WorkbenchError):
    """Inverting the character map failed; indicates invalid input or a bug."""


class InsufficientInversion(WorkbenchError):
    """Building a crossed product requires all primes of |G| to divide N."""


class RingMismatch(WorkbenchError):
    """Binary module/ring-element operation across different rings."""


class FamilyMismatch(WorkbenchError):
    """Module families do not live over the same target-category report."""


class FreePartError(WorkbenchError):
    """Hom/Ext requested for a module with free (order-0) summands."""


class InputError(WorkbenchError):
    """Malformed user input (files, CLI arguments)."""
