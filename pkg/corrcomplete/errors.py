class CorrCompleteError(Exception):
    """Base class for every error raised by corrcomplete."""


class InvalidInput(CorrCompleteError, ValueError):
    pass


class NotChordal(CorrCompleteError, ValueError):
    """The pattern graph has a chordless cycle of length four or more.

    `cycle` holds vertex indices in cycle order, `labels` the matching labels
    when the caller knows them.
    """

    def __init__(self, cycle, labels=None):
        self.cycle = list(cycle)
        self.labels = list(labels) if labels is not None else None
        shown = self.labels if self.labels is not None else self.cycle
        super().__init__(f"pattern graph is not chordal, chordless cycle: {' - '.join(map(str, shown))}")


class NotPositiveDefinite(CorrCompleteError, ArithmeticError):
    def __init__(self, pivot, value=None, message=None):
        self.pivot = pivot
        self.value = value
        if message is None:
            message = f"matrix is not positive definite, pivot {pivot} failed"
            if value is not None:
                message += f" (value {value!r})"
        super().__init__(message)


class CliqueBlockNotPD(NotPositiveDefinite):
    """A fully specified clique block of the input is not positive definite."""

    def __init__(self, labels, pivot, value=None):
        self.labels = list(labels)
        super().__init__(
            pivot,
            value,
            message=f"specified block on clique {{{', '.join(self.labels)}}} is not positive definite",
        )


class SeparatorMismatch(CorrCompleteError, ValueError):
    def __init__(self, labels, difference):
        self.labels = list(labels)
        self.difference = difference
        super().__init__(
            f"shared block on {{{', '.join(map(str, self.labels))}}} disagrees "
            f"between the two matrices (max difference {difference!r})"
        )


class NoFeasiblePoint(CorrCompleteError, ArithmeticError):
    pass
