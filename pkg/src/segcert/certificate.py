"""Certificate assembly and its JSON form.

All reals are written as decimal strings. Interval endpoints use the
shortest repr that round-trips to the same binary64 value, so
``Certificate.from_dict(c.to_dict())`` reproduces ``c`` exactly and the
JSON text is byte-stable for identical inputs.
"""

from __future__ import annotations

import json
import platform
from dataclasses import dataclass, field

from . import __version__
from .errors import ParseError
from .interval import Interval
from .isolation import HighModeRecord, LowModeRecord, VerificationReport, verify
from .model import Forcing, Problem
from .nonlinearity import NEnclosures
from .norms import CONVENTIONS, NormBounds, decay_constants, norm_bounds
from .reference import ReferenceConfig
from .segment import Segment

__all__ = ["SCHEMA_VERSION", "Certificate", "build_certificate", "reference_deltas"]

SCHEMA_VERSION = 1


def _f(x: float) -> str:
    return repr(float(x))


def _iv(x: Interval) -> list[str]:
    return [_f(x.lo), _f(x.hi)]


def _parse_float(text) -> float:
    if not isinstance(text, str):
        raise ParseError(f"expected a decimal string, got {text!r}")
    try:
        return float(text)
    except ValueError as exc:
        raise ParseError(f"malformed real {text!r}") from exc


def _parse_iv(pair) -> Interval:
    if not isinstance(pair, list) or len(pair) != 2:
        raise ParseError(f"expected an interval [lo, hi], got {pair!r}")
    return Interval(_parse_float(pair[0]), _parse_float(pair[1]))


def problem_to_dict(problem: Problem) -> dict:
    return {
        "beta": _iv(problem.beta),
        "sigma": _iv(problem.sigma),
        "forcing": [_iv(b) for b in problem.forcing.bounds],
    }


def problem_from_dict(d: dict) -> Problem:
    return Problem(
        beta=_parse_iv(d["beta"]),
        sigma=_parse_iv(d["sigma"]),
        forcing=Forcing(tuple(_parse_iv(b) for b in d["forcing"])),
    )


def segment_to_dict(seg: Segment) -> dict:
    return {
        "M": seg.M,
        "s": seg.s,
        "C": _iv(seg.C),
        "boxes": [{"lo": _iv(l), "hi": _iv(r)} for l, r in seg.boxes],
    }


def segment_from_dict(d: dict) -> Segment:
    return Segment(
        M=d["M"],
        s=d["s"],
        C=_parse_iv(d["C"]),
        boxes=tuple((_parse_iv(b["lo"]), _parse_iv(b["hi"])) for b in d["boxes"]),
    )


def _enclosures_to_dict(e: NEnclosures) -> dict:
    return {"n_low": [_iv(x) for x in e.n_low], "D1": _iv(e.d1), "D2": _iv(e.d2), "D": _iv(e.d)}


def _enclosures_from_dict(d: dict) -> NEnclosures:
    return NEnclosures(
        n_low=tuple(_parse_iv(x) for x in d["n_low"]),
        d1=_parse_iv(d["D1"]),
        d2=_parse_iv(d["D2"]),
        d=_parse_iv(d["D"]),
    )


def report_to_dict(rep: VerificationReport) -> dict:
    h = rep.high_mode
    return {
        "passed": rep.passed,
        "s_ok": rep.s_ok,
        "forcing_support_ok": rep.forcing_support_ok,
        "high_mode": {"lhs": _iv(h.lhs), "rhs": _iv(h.rhs), "margin": _f(h.margin), "passed": h.passed},
        "low_modes": [
            {
                "k": r.k,
                "rhs_enclosure": _iv(r.rhs_enclosure),
                "upper_margin": _f(r.upper_margin),
                "lower_margin": _f(r.lower_margin),
                "passed": r.passed,
            }
            for r in rep.low_modes
        ],
        "enclosures": _enclosures_to_dict(rep.enclosures),
        "diagnostics": list(rep.diagnostics),
    }


def report_from_dict(d: dict) -> VerificationReport:
    h = d["high_mode"]
    return VerificationReport(
        passed=d["passed"],
        high_mode=HighModeRecord(
            lhs=_parse_iv(h["lhs"]), rhs=_parse_iv(h["rhs"]),
            margin=_parse_float(h["margin"]), passed=h["passed"],
        ),
        low_modes=tuple(
            LowModeRecord(
                k=r["k"],
                rhs_enclosure=_parse_iv(r["rhs_enclosure"]),
                upper_margin=_parse_float(r["upper_margin"]),
                lower_margin=_parse_float(r["lower_margin"]),
                passed=r["passed"],
            )
            for r in d["low_modes"]
        ),
        s_ok=d["s_ok"],
        forcing_support_ok=d["forcing_support_ok"],
        enclosures=_enclosures_from_dict(d["enclosures"]),
        diagnostics=tuple(d["diagnostics"]),
    )


def _norms_to_dict(nb: NormBounds) -> dict:
    return {"L2_u": _iv(nb.l2_u), "C0_u": _iv(nb.c0_u), "L2_ut": _iv(nb.l2_ut), "C0_ut": _iv(nb.c0_ut)}


def _norms_from_dict(d: dict, convention: str) -> NormBounds:
    return NormBounds(
        l2_u=_parse_iv(d["L2_u"]), c0_u=_parse_iv(d["C0_u"]),
        l2_ut=_parse_iv(d["L2_ut"]), c0_ut=_parse_iv(d["C0_ut"]),
        convention=convention,
    )


def toolchain_metadata() -> dict:
    return {
        "package": "segcert",
        "version": __version__,
        "endpoint_format": "binary64",
        "rounding": "outward, exact-residual directed",
        "python": platform.python_version(),
    }


@dataclass(frozen=True)
class Certificate:
    problem: Problem
    segment: Segment
    report: VerificationReport
    norms: dict[str, NormBounds] | None = None
    decay: tuple[Interval, Interval] | None = None
    comparison: dict | None = None
    metadata: dict = field(default_factory=toolchain_metadata)

    @property
    def passed(self) -> bool:
        return self.report.passed

    def to_dict(self) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "passed": self.passed,
            "problem": problem_to_dict(self.problem),
            "segment": segment_to_dict(self.segment),
            "verification": report_to_dict(self.report),
        }
        if self.norms is not None:
            out["norms"] = {c: _norms_to_dict(self.norms[c]) for c in CONVENTIONS}
        if self.decay is not None:
            out["decay"] = {
                "u": {"constant": _iv(self.decay[0]), "exponent": 6},
                "v": {"constant": _iv(self.decay[1]), "exponent": 4},
            }
        if self.comparison is not None:
            out["reference_comparison"] = self.comparison
        out["toolchain"] = dict(self.metadata)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> Certificate:
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ParseError(f"unsupported certificate schema version {d.get('schema_version')!r}")
        norms = None
        if "norms" in d:
            norms = {c: _norms_from_dict(d["norms"][c], c) for c in CONVENTIONS}
        decay = None
        if "decay" in d:
            decay = (_parse_iv(d["decay"]["u"]["constant"]), _parse_iv(d["decay"]["v"]["constant"]))
        return cls(
            problem=problem_from_dict(d["problem"]),
            segment=segment_from_dict(d["segment"]),
            report=report_from_dict(d["verification"]),
            norms=norms,
            decay=decay,
            comparison=d.get("reference_comparison"),
            metadata=d["toolchain"],
        )

    @classmethod
    def from_json(cls, text: str) -> Certificate:
        return cls.from_dict(json.loads(text))


def _rel(computed: float, published: str) -> str:
    ref = float(published)
    return f"{computed / ref - 1:+.6f}"


def reference_deltas(ref: ReferenceConfig, seg: Segment, norms: NormBounds | None) -> dict:
    """Relative deviations ``computed / published - 1`` (informational only)."""
    out = {
        "name": ref.name,
        "u1_r": _rel(seg.right(1).hi, ref.boxes_r[0]),
        "C": _rel(seg.C.hi, ref.C),
    }
    if norms is not None:
        out.update(
            L2_u=_rel(norms.l2_u.hi, ref.l2_u),
            C0_u=_rel(norms.c0_u.hi, ref.c0_u),
            L2_ut=_rel(norms.l2_ut.hi, ref.l2_ut),
            C0_ut=_rel(norms.c0_ut.hi, ref.c0_ut),
        )
    return out


def build_certificate(
    problem: Problem, seg: Segment, reference: ReferenceConfig | None = None
) -> Certificate:
    """Verify ``seg`` and, on success, attach norm and decay bounds.

    A failing verification yields a certificate with ``passed=False``
    carrying margins only.
    """
    report = verify(seg, problem)
    norms = decay = None
    if report.passed:
        norms = {c: norm_bounds(seg, problem, c) for c in CONVENTIONS}
        if seg.s == 6:
            decay = decay_constants(seg, problem)
    comparison = None
    if reference is not None:
        comparison = reference_deltas(reference, seg, norms["table"] if norms else None)
    return Certificate(problem, seg, report, norms, decay, comparison)
