"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed input: bad JSON, out-of-range indices, invalid arguments."""


class PreconditionError(InputError):
    """A mathematical precondition of an operation is not satisfied."""


class GenerationError(RuntimeError):
    """A random-function generator could not meet its target constraints."""
