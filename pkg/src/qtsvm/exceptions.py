"""Error types raised by the qtsvm library.

Every failure mode that callers are expected to handle gets its own class.
The CLI maps these onto process exit codes; library users can catch the
base class ``QtsvmError`` to intercept everything at once.
"""


class QtsvmError(Exception):
    """Base class for all qtsvm errors."""


class EmptyMatrix(QtsvmError):
    """A matrix or vector argument has a zero-sized dimension."""


class DimensionMismatch(QtsvmError):
    """Operands have incompatible shapes."""


class NonHermitianInput(QtsvmError):
    """A matrix required to be Hermitian deviates beyond tolerance."""


class SingularSystem(QtsvmError):
    """A linear system is singular or indefinite beyond tolerance."""


class InvalidPenalty(QtsvmError):
    """A penalty parameter is not strictly positive."""


class DegenerateHyperplane(QtsvmError):
    """A hyperplane normal vector is indistinguishable from zero."""


class ZeroVector(QtsvmError):
    """A vector that must be normalizable has (near-)zero norm."""


class NonUnitaryOperator(QtsvmError):
    """An operator applied to a state is not unitary within tolerance."""


class InvalidProjectorSet(QtsvmError):
    """Measurement projectors do not form a valid complete orthogonal set."""


class UnknownRegister(QtsvmError):
    """A register name is not present in the state's layout."""


class ZeroColumnSum(QtsvmError):
    """Postselection target has zero amplitude: the column sums all vanish."""


class PhaseWraparound(QtsvmError):
    """An eigenphase would exceed 2*pi and alias onto a smaller clock value."""


class SingularOnSupport(QtsvmError):
    """The operator is not invertible on the support of the input state."""


class PaddingLeakage(QtsvmError):
    """A state carries non-negligible amplitude on padding basis states."""


class InvalidSpec(QtsvmError):
    """A synthetic dataset recipe is inconsistent."""


class CsvFormatError(QtsvmError):
    """A dataset or sample CSV file is malformed; the message carries the line."""


class QubitCapExceeded(QtsvmError):
    """A requested simulation needs more qubits than the configured cap."""
