"""Exception types shared across the package."""


class KCompleteError(Exception):
    """Base class for all package errors."""


class InvalidInstance(KCompleteError, ValueError):
    """Malformed matrix description or out-of-range parameter."""


class HypothesisError(KCompleteError):
    """The zero set does not satisfy the operation's matching precondition."""


class LatticeError(KCompleteError):
    """The cover poset violated a lattice property. Always a bug."""


class SingularError(KCompleteError, ZeroDivisionError):
    """An interval function has a vanishing diagonal value."""

    def __init__(self, element):
        super().__init__(f"interval function is singular at element {element!r}")
        self.element = element


class NonGenericError(KCompleteError):
    """Comparable critical rectangles share a rate; closed-form Laplace coefficients are undefined."""

    def __init__(self, report):
        pairs = ", ".join(f"({a}, {b})" for a, b in report.violations)
        super().__init__(
            f"instance is not generic: comparable elements with equal rate: {pairs}; "
            "use the recursion method instead"
        )
        self.report = report


class RepeatedPoleError(KCompleteError):
    """A rational function has a repeated root in its denominator."""

    def __init__(self, root):
        super().__init__(f"denominator has a repeated root at t = {root}")
        self.root = root
