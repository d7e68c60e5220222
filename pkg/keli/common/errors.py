"""Exception hierarchy.

Every error is a ``ValueError`` so callers that only guard against bad input
keep working; ``code`` is the stable machine-readable name the CLI prints.
"""


class KeliError(ValueError):
    code = 'keli-error'


class UsageError(KeliError):
    code = 'usage'


class PrecisionError(KeliError):
    code = 'precision'


class InsufficientPrecisionError(PrecisionError):
    code = 'insufficient-precision'


class InsufficientTruncationError(KeliError):
    code = 'insufficient-truncation'


class PoleError(KeliError):
    code = 'pole'


class BranchCutError(KeliError):
    code = 'branch-cut'


class ParameterValidationError(KeliError):
    code = 'parameter-validation'


class UnwrapError(KeliError):
    code = 'unwrap-failure'


class AliasingError(KeliError):
    code = 'aliasing'


class NodeTableError(KeliError):
    code = 'node-table'


class NodeTableVersionError(NodeTableError):
    code = 'node-table-version'


class NodeTableTruncatedError(NodeTableError):
    code = 'node-table-truncated'


class NodeTableParseError(NodeTableError):
    code = 'node-table-parse'


class IntegerCheckError(KeliError):
    code = 'integer-check'


class CMatrixMismatchError(KeliError):
    code = 'c-matrix-mismatch'


class NonConvergenceError(KeliError):
    code = 'non-convergence'


class DerivativeUnderflowError(KeliError):
    code = 'derivative-underflow'


class OutOfRadiusError(KeliError):
    code = 'out-of-radius'


class SymmetryError(KeliError):
    code = 'symmetry'


class VerificationError(KeliError):
    code = 'verification'


class InsufficientDataError(KeliError):
    code = 'insufficient-data'


class SequenceLengthError(KeliError):
    code = 'length'


class ZeroListError(KeliError):
    code = 'zero-list'
