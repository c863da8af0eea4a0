"""Exception hierarchy shared by all layers."""


class TermTypeError(TypeError):
    """Ill-typed map term. ``path`` lists child indices from the root."""

    def __init__(self, message, path=()):
        self.path = list(path)
        where = "/".join(str(i) for i in self.path) or "<root>"
        super().__init__(f"{message} at {where}")
        self.reason = message

    def within(self, index):
        return TermTypeError(self.reason, [index] + self.path)


class DomainError(ValueError):
    """A value does not inhabit the object it was handed to."""


class SamplingError(RuntimeError):
    """Rejection sampling found no inhabitant (object may be empty)."""


class NotAPredicate(ValueError):
    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class NotIncluded(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class RightUniquenessViolation(ValueError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedObject(ValueError):
    pass


class Indeterminate(RuntimeError):
    """A fueled probe ran out before deciding."""

    def __init__(self, message, probe=None):
        super().__init__(message)
        self.probe = probe
