"""Exception and warning types shared across the package."""


class PairliftError(Exception):
    """Base class for all package errors."""


# --- dataset construction ---

class InsufficientSource(PairliftError):
    """The source corpus cannot supply the requested disjoint pairs."""


class NonIntegralPairCount(PairliftError):
    """alpha * n_per_domain is not an integer."""


class ManifestMismatch(PairliftError):
    """Files on disk contradict the manifest."""


class MalformedManifest(PairliftError):
    """The manifest file is missing or cannot be parsed."""


# --- synthesis ---

class InvalidLandmarks(PairliftError):
    """Eye landmarks are outside the image or in the wrong order."""


class InsufficientDonors(PairliftError):
    """Not enough donor samples to reach the requested pairing ratio."""


class InvalidSpec(PairliftError):
    """A procedural domain spec is inconsistent."""


class EllipseOutOfBounds(UserWarning):
    """A sampled ellipse exceeds the image and was clipped."""


# --- divergence ---

class SupportMismatch(PairliftError):
    """The two distributions are defined over different supports."""


class UndefinedLimit(PairliftError):
    """The generator has no declared rule for the p -> 0 limit."""


class InvalidMassMove(PairliftError):
    """A probability mass move would leave the simplex or overshoot."""


# --- models ---

class UnknownToken(PairliftError):
    """A layer notation token does not match the grammar."""


class InvalidScale(PairliftError):
    """Width multiplier outside the supported set."""


class ResolutionTooSmall(PairliftError):
    """Input resolution too small for the requested encoder depth."""


class CheckpointMismatch(PairliftError):
    """Checkpoint notation or shape does not match the target network."""


# --- training ---

class DivergenceDetected(PairliftError):
    """A training loss became non-finite.

    Carries ``checkpoint``, the last finite-loss state, so callers can
    salvage the run.
    """

    def __init__(self, message, checkpoint=None):
        super().__init__(message)
        self.checkpoint = checkpoint


class RequiresFullyPaired(PairliftError):
    """Supervised training needs every A sample paired in B."""


class ResolutionMismatch(PairliftError):
    """Inference images do not match the training resolution."""


# --- metrics ---

class ShapeMismatch(PairliftError):
    """Two image or embedding lists disagree in length or shape."""


class ClassOutOfRange(PairliftError):
    """A label grid contains a class id outside [0, K)."""


class DegenerateCovariance(PairliftError):
    """A group has too few points to fit a covariance ellipse."""


# --- experiments ---

class EmptyQuery(PairliftError):
    """A report query matched no records in the results store."""


class ConfigError(PairliftError):
    """Experiment configuration is invalid."""
