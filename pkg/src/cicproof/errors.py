"""Domain exceptions, one per contract-violation kind.

Everything raised on purpose by this package derives from CicproofError so
the CLI can map domain failures to a single exit code.
"""


class CicproofError(Exception):
    """Base class for all errors raised by this package."""


# -- field / polynomial algebra ------------------------------------------

class ModulusMismatch(CicproofError):
    """Operands belong to fields with different moduli."""


class InversionOfZero(CicproofError):
    """Multiplicative inverse of the zero element requested."""


class DuplicateEvaluationPoint(CicproofError):
    """Interpolation points contain a repeated x value."""


class DivisionByZeroPolynomial(CicproofError):
    """Polynomial division by the zero polynomial."""


# -- circuits and constraint systems --------------------------------------

class InputArityMismatch(CicproofError):
    """Supplied input vector lengths do not match the circuit declaration."""


class MalformedCircuit(CicproofError):
    """Circuit violates a structural invariant (ordering, wire reuse, ...)."""


class WidthTooLarge(CicproofError):
    """Requested bit width does not fit the field modulus."""


# -- quadratic programs ----------------------------------------------------

class EmptySystem(CicproofError):
    """A constraint system with zero constraints cannot become a QAP."""


class NotDivisible(CicproofError):
    """Quotient computation left a nonzero remainder (unsatisfied system)."""


# -- proof system ----------------------------------------------------------

class DegenerateTrapdoor(CicproofError):
    """Sampled evaluation trapdoor collided with a QAP evaluation point."""


class UnsatisfyingWitness(CicproofError):
    """Witness does not satisfy the constraint system being proven."""


class MalformedProof(CicproofError):
    """Proof bytes are structurally invalid."""


class BadMagic(MalformedProof):
    """Serialized blob does not start with the expected magic."""


class BadVersion(MalformedProof):
    """Serialized blob has an unsupported format version."""


class LengthMismatch(MalformedProof):
    """A length disagrees with the declared one.

    Shared by wire-format truncation checks and witness/IO length checks.
    """


# -- benchmark applications -------------------------------------------------

class KernelLargerThanImage(CicproofError):
    """Template kernel dimensions exceed the image dimensions."""


class WeightOutOfRange(CicproofError):
    """Application input value outside the documented honest range."""


class InvalidParameters(CicproofError):
    """Parameter combination rejected (zero/negative fees, bad sizes, ...)."""


# -- broker -----------------------------------------------------------------

class InsufficientBalance(CicproofError):
    """Account balance cannot cover the requested escrow."""


class JobNotOpen(CicproofError):
    """Operation requires the job to be in the OPEN state."""


class JobNotRegistered(CicproofError):
    """Operation requires the job to be in the REGISTERED state."""


class NotTheWorker(CicproofError):
    """Caller is not the worker registered for this job."""


class NotTheClient(CicproofError):
    """Caller is not the client that created this job."""


class DeadlineNotPassed(CicproofError):
    """Timeout claim attempted at or before the job deadline."""


# -- content servers / scenarios ---------------------------------------------

class NotFound(CicproofError):
    """No content published under the requested path."""


class PathAlreadyPublished(CicproofError):
    """Content paths are write-once; the path is taken."""


class HashMismatch(CicproofError):
    """Fetched bytes do not hash to the recorded digest."""


class MalformedScript(CicproofError):
    """Scenario script line cannot be parsed."""
