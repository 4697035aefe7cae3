"""Interval-arithmetic certification of periodic isolating segments for the
forced Boussinesq equation ``u_tt = u_xx + beta u_xxxx + sigma (u^2)_xx + eps f``."""

__version__ = "0.1.0"

from .errors import DomainError, ParseError, SegcertError, ValidationError  # noqa: E402
from .interval import Interval, from_decimal, two_pi  # noqa: E402
from .model import Forcing, Problem, family_forcing, lambda_k, lambda_sq  # noqa: E402
from .segment import Segment  # noqa: E402
from .isolation import VerificationReport, verify  # noqa: E402
from .refinement import initial_guess, refine, refine_step, rescale_for_epsilon  # noqa: E402
from .certificate import Certificate, build_certificate  # noqa: E402
from .estimator import SegmentRefiner  # noqa: E402

__all__ = [
    "__version__",
    "SegcertError",
    "DomainError",
    "ParseError",
    "ValidationError",
    "Interval",
    "from_decimal",
    "two_pi",
    "Forcing",
    "Problem",
    "family_forcing",
    "lambda_k",
    "lambda_sq",
    "Segment",
    "VerificationReport",
    "verify",
    "initial_guess",
    "refine",
    "refine_step",
    "rescale_for_epsilon",
    "Certificate",
    "build_certificate",
    "SegmentRefiner",
]
