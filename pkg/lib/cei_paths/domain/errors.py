"""Domain-level exceptions."""


class CEIPathError(ValueError):
    """Base class for all errors raised by the cei_paths library."""


class NonZeroStartError(CEIPathError):
    """Raised when a grid path does not start at 0."""

    def __init__(self, start: float):
        """Initialize with the offending first value.

        Args:
            start: The value found at grid index 0
        """
        self.start = start
        super().__init__(f"Grid path must start at 0, found {start!r}")


class NonFiniteError(CEIPathError):
    """Raised when a grid path contains NaN or infinite entries."""

    def __init__(self, index: int):
        """Initialize with the first non-finite index.

        Args:
            index: Grid index of the first NaN/infinite entry
        """
        self.index = index
        super().__init__(f"Grid path has a non-finite value at index {index}")


class TooShortError(CEIPathError):
    """Raised when fewer than three grid values are supplied."""

    def __init__(self, length: int):
        """Initialize with the supplied length.

        Args:
            length: Number of values supplied
        """
        self.length = length
        super().__init__(f"Grid path needs at least 3 values, got {length}")


class IndexOutOfRangeError(CEIPathError):
    """Raised when a shift index falls outside 0..n."""

    def __init__(self, index: int, n: int):
        """Initialize with the index and grid resolution.

        Args:
            index: The requested grid index
            n: Grid resolution of the path
        """
        self.index = index
        self.n = n
        super().__init__(f"Grid index {index} outside 0..{n}")


class NegativeEndpointError(CEIPathError):
    """Raised when a path or bridge endpoint must be nonnegative but is not."""

    def __init__(self, endpoint: float):
        """Initialize with the endpoint value.

        Args:
            endpoint: The value of the path at time 1
        """
        self.endpoint = endpoint
        super().__init__(f"Endpoint must be >= 0, found {endpoint!r}")


class InvalidIntervalError(CEIPathError):
    """Raised when interval endpoints do not describe a subset of (-inf, 0]."""

    def __init__(self, reason: str):
        """Initialize with the reason the interval is rejected.

        Args:
            reason: Description of the violated constraint
        """
        self.reason = reason
        super().__init__(f"Invalid interval: {reason}")


class EmptyOccupationError(CEIPathError):
    """Raised when no shift puts the minimum in the conditioning interval."""

    def __init__(self, interval: str):
        """Initialize with the interval description.

        Args:
            interval: Human readable interval
        """
        self.interval = interval
        super().__init__(f"No shifted minimum falls in {interval}")


class EmptyLocalTimeError(CEIPathError):
    """Raised when the local-time estimate vanishes at the requested level."""

    def __init__(self, level: float, epsilon: float):
        """Initialize with the level and band width.

        Args:
            level: Level of the reflected process
            epsilon: Band half-width of the estimate
        """
        self.level = level
        self.epsilon = epsilon
        super().__init__(f"Local time at level {level} (epsilon={epsilon}) is zero")


class NoPassageError(CEIPathError):
    """Raised when no cyclic shift of a path stays nonnegative."""

    def __init__(self, endpoint: float):
        """Initialize with the endpoint that rules every shift out.

        Args:
            endpoint: The value of the path at time 1, below 0
        """
        self.endpoint = endpoint
        super().__init__(f"No nonnegative cyclic shift for a path ending at {endpoint!r}")


class MaxAttemptsExceededError(CEIPathError):
    """Raised when rejection sampling exhausts its attempt budget."""

    def __init__(self, attempts: int, accepted: int = 0):
        """Initialize with the attempt count.

        Args:
            attempts: Number of candidates drawn without an acceptance
            accepted: Number of paths accepted before the budget ran out
        """
        self.attempts = attempts
        self.accepted = accepted
        super().__init__(
            f"Rejection sampling gave up after {attempts} attempts "
            f"({accepted} accepted so far); raise max_attempts or epsilon"
        )


class EmptySampleError(CEIPathError):
    """Raised when a statistical test receives an empty sample."""

    def __init__(self, which: str):
        """Initialize with the name of the empty sample.

        Args:
            which: Which argument was empty
        """
        self.which = which
        super().__init__(f"Sample {which!r} is empty")


class OutOfRangeError(CEIPathError):
    """Raised when values fall outside the support of the reference law."""

    def __init__(self, low: float, high: float):
        """Initialize with the observed extremes.

        Args:
            low: Smallest observed value
            high: Largest observed value
        """
        self.low = low
        self.high = high
        super().__init__(f"Sample range [{low}, {high}] is not inside [0, 1]")


class LengthMismatchError(CEIPathError):
    """Raised when paired samples have different lengths."""

    def __init__(self, left: int, right: int):
        """Initialize with both lengths.

        Args:
            left: Length of the first sample
            right: Length of the second sample
        """
        self.left = left
        self.right = right
        super().__init__(f"Paired samples differ in length: {left} vs {right}")


class TooFewSamplesError(CEIPathError):
    """Raised when a test receives fewer samples than it requires."""

    def __init__(self, required: int, actual: int):
        """Initialize with the required and actual sizes.

        Args:
            required: Minimum number of samples
            actual: Number of samples received
        """
        self.required = required
        self.actual = actual
        super().__init__(f"Need at least {required} samples, got {actual}")


class UnnormalizedError(CEIPathError):
    """Raised when a probability map does not sum to 1."""

    def __init__(self, total: float):
        """Initialize with the total mass.

        Args:
            total: Sum of the probabilities
        """
        self.total = total
        super().__init__(f"Distribution sums to {total}, not 1")


class UnknownExperimentError(CEIPathError):
    """Raised when an experiment name is not in the registry."""

    def __init__(self, name: str):
        """Initialize with the unknown name.

        Args:
            name: Requested experiment name
        """
        self.name = name
        super().__init__(f"Unknown experiment: {name}")


class ArtifactIOError(CEIPathError):
    """Raised when an artifact cannot be written or read."""

    def __init__(self, path: str, reason: str):
        """Initialize with the path and underlying reason.

        Args:
            path: File system path of the artifact
            reason: Description of the failure
        """
        self.path = path
        self.reason = reason
        super().__init__(f"Artifact I/O failed for {path}: {reason}")


class ValidationFailedError(CEIPathError):
    """Raised when a configuration document fails JSON Schema validation."""

    def __init__(self, errors: list):
        """Initialize with validation error details.

        Args:
            errors: List of validation error details
        """
        self.errors = errors
        super().__init__(f"Validation failed with {len(errors)} error(s)")
