"""Built-in reference configurations with their published values.

Each entry carries the forcing family and epsilon range, the published
low-mode bounds ``u_k^r = -u_k^l`` and tail amplitude ``C`` (five
significant digits, ``M = 6``, ``s = 6``), the published norm bounds, and
the starting tail amplitude ``c_tilde`` used by ``segcert table``.

The published ``c_tilde`` is not known. The values below were chosen so
that two refinement steps land on the published ``C``; the final ``C``
scales almost linearly with ``c_tilde``, so it is a free gauge rather than
a property of the solution.
"""

from __future__ import annotations

from dataclasses import dataclass

from .interval import Interval, from_decimal
from .model import Problem, family_forcing
from .segment import Segment

__all__ = ["ReferenceConfig", "REFERENCE_CONFIGS", "SIGMA", "M"]

SIGMA = "3"
M = 6


@dataclass(frozen=True)
class ReferenceConfig:
    name: str
    family: str
    beta: str
    eps: str
    c_tilde: str
    boxes_r: tuple[str, ...]
    C: str
    l2_u: str
    c0_u: str
    l2_ut: str
    c0_ut: str

    def problem(self) -> Problem:
        eps = from_decimal(self.eps)
        return Problem(
            beta=from_decimal(self.beta),
            sigma=from_decimal(SIGMA),
            forcing=family_forcing(self.family, Interval(-eps.hi, eps.hi)),
        )

    def published_segment(self) -> Segment:
        boxes = []
        for r in self.boxes_r:
            ri = from_decimal(r)
            boxes.append((-ri, ri))
        return Segment(M=M, s=6, C=from_decimal(self.C), boxes=tuple(boxes))

    @property
    def eps_range(self) -> tuple[str, str]:
        return ("-" + self.eps, self.eps)


REFERENCE_CONFIGS: tuple[ReferenceConfig, ...] = (
    ReferenceConfig(
        "A-1.5", "A", "1.5", "0.05", "3.1",
        ("0.05743", "0.004018", "0.00022427", "1.1242e-5", "5.7862e-7", "5.5904e-7"),
        "4.6941", "0.28862115", "0.12440683", "0.24610779", "0.2143523",
    ),
    ReferenceConfig(
        "A-1.75", "A", "1.75", "0.1", "3.7",
        ("0.082489", "0.0069984", "0.0004798", "2.9597e-5", "1.9415e-6", "1.9328e-6"),
        "13.039", "0.41504192", "0.1820825", "0.39340084", "0.42461205",
    ),
    ReferenceConfig(
        "A-2.5", "A", "2.5", "0.3", "7.5",
        ("0.16777", "0.020237", "0.0019934", "0.00017727", "1.8646e-5", "2.1631e-5"),
        "100.64", "0.84724825", "0.38676747", "0.96839709", "1.4795576",
    ),
    ReferenceConfig(
        "B-1.5", "B", "1.5", "0.05", "3.0",
        ("0.059242", "0.0055667", "0.00054628", "9.3307e-5", "2.9174e-6", "7.7255e-7"),
        "4.8878", "0.29831987", "0.13194161", "0.25703095", "0.24099758",
    ),
    ReferenceConfig(
        "B-1.75", "B", "1.75", "0.1", "3.7",
        ("0.085611", "0.0097091", "0.0010739", "0.000179", "7.6705e-6", "2.596e-6"),
        "13.613", "0.43198386", "0.19524766", "0.41478653", "0.47720834",
    ),
    ReferenceConfig(
        "B-2.5", "B", "2.5", "0.3", "7.5",
        ("0.17515", "0.026475", "0.0035043", "0.00055121", "4.3434e-5", "2.6004e-5"),
        "102.99", "0.88825406", "0.41784158", "1.0309512", "1.637095",
    ),
)
