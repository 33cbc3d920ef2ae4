class SubspaceCodesError(Exception):
    """Base class for every error raised by the subspace_codes library."""


class ParameterError(SubspaceCodesError, ValueError):
    pass


class AmbientMismatchError(ParameterError):
    def __init__(self, left, right):
        super().__init__(f'ambient dimensions differ: {left} != {right}')
        self.left = left
        self.right = right


class FieldRangeError(ParameterError):
    pass


class CodeFormatError(SubspaceCodesError):
    """Malformed code, generator or multiset file; carries the offending line."""

    def __init__(self, message, line_no=None, source=None):
        location = ''
        if source is not None:
            location = f'{source}:'
        if line_no is not None:
            location = f'{location}{line_no}: '
        elif location:
            location = f'{location} '
        super().__init__(f'{location}{message}')
        self.line_no = line_no
        self.source = source


class GroupError(SubspaceCodesError):
    pass


class SingularGeneratorError(GroupError):
    pass


class GroupTooLargeError(GroupError):
    pass


class OutOfScopeError(SubspaceCodesError):
    pass


class IncompatibleBoundsError(SubspaceCodesError, ValueError):
    pass


class ModelError(SubspaceCodesError):
    pass


class UnsupportedModelError(ModelError):
    pass


class SolverError(ModelError):
    pass


class PreconditionError(SubspaceCodesError):
    pass


class MultiplicityError(PreconditionError):
    """A point multiplicity exceeds the complement level."""
