"""Exception types shared by all modules."""


class InvalidInputError(ValueError):
    """A user-supplied value violates a documented invariant.

    The message always names the violated invariant (CLI exit code 1).
    """


class InternalInconsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree.

    This signals an implementation bug, never user error (CLI exit code 2).
    """
