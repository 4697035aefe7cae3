"""Command-line front end.

Exit codes: 0 certified, 1 verification failed on a well-formed run,
2 malformed input or runtime error. Every real in a config file is a
decimal string (or a ``[lo, hi]`` pair of them) and is converted with
outward rounding; bare JSON numbers are refused so that no value is
silently rounded to nearest on the way in.
"""

from __future__ import annotations

import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import click

from .certificate import (
    SCHEMA_VERSION,
    build_certificate,
    report_to_dict,
    segment_to_dict,
)
from .errors import ParseError, SegcertError, ValidationError
from .interval import Interval, from_decimal
from .isolation import VerificationReport, verify
from .model import FAMILY_MODES, Forcing, Problem, family_forcing
from .norms import norm_bounds
from .reference import REFERENCE_CONFIGS, ReferenceConfig
from .refinement import (
    DEFAULT_C_TILDE,
    DEFAULT_ENVELOPE_FACTOR,
    DEFAULT_FLOOR,
    DEFAULT_INFLATION,
    RefinementDiverged,
    refine,
)
from .sandbox import boundary_sample
from .segment import Segment

__all__ = ["RunOptions", "parse_config", "parse_config_dict", "main", "run"]

logger = logging.getLogger(__name__)

EXIT_OK, EXIT_FAILED, EXIT_ERROR = 0, 1, 2

_TOP_KEYS = {"schema_version", "beta", "sigma", "epsilon", "forcing", "M", "segment", "refine"}
_REQUIRED = ("beta", "sigma", "forcing", "M")
_REFINE_KEYS = {"iterations", "c_tilde", "floor", "inflation", "envelope_factor"}


@dataclass(frozen=True)
class RunOptions:
    M: int
    iterations: int = 2
    c_tilde: Interval = field(default_factory=lambda: Interval(DEFAULT_C_TILDE))
    floor: float = DEFAULT_FLOOR
    inflation: float = DEFAULT_INFLATION
    envelope_factor: float = DEFAULT_ENVELOPE_FACTOR
    reference: ReferenceConfig | None = None


def _err(key: str, msg: str) -> ValidationError:
    return ValidationError(f"{key}: {msg}", key=key)


def _real(value, key: str) -> Interval:
    """Decimal string, or ``[lo, hi]`` pair of decimal strings, to an enclosure."""
    if isinstance(value, str):
        try:
            return from_decimal(value)
        except ParseError as exc:
            raise _err(key, str(exc)) from exc
    if isinstance(value, list):
        if len(value) != 2:
            raise _err(key, "interval must be a [lo, hi] pair")
        lo, hi = _real(value[0], f"{key}[0]"), _real(value[1], f"{key}[1]")
        if lo.lo > hi.hi:
            raise _err(key, f"reversed endpoints {value[0]} > {value[1]}")
        return Interval(lo.lo, hi.hi)
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        raise _err(key, f"reals must be decimal strings, got bare number {value!r}")
    raise _err(key, f"expected a decimal string, got {type(value).__name__}")


def _int(value, key: str, minimum: int) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise _err(key, f"expected an integer, got {value!r}")
    if value < minimum:
        raise _err(key, f"must be >= {minimum}, got {value}")
    return value


def _obj(value, key: str, allowed: set[str]) -> dict:
    if not isinstance(value, dict):
        raise _err(key, f"expected an object, got {type(value).__name__}")
    for k in value:
        if k not in allowed:
            raise _err(f"{key}.{k}", "unknown key")
    return value


def _forcing(cfg: dict) -> tuple[Forcing, str | None]:
    f = _obj(cfg["forcing"], "forcing", {"family", "modes"})
    if ("family" in f) == ("modes" in f):
        raise _err("forcing", "give exactly one of 'family' or 'modes'")
    if "family" in f:
        family = f["family"]
        if family not in FAMILY_MODES:
            raise _err("forcing.family", f"unknown family {family!r}, expected one of {sorted(FAMILY_MODES)}")
        if "epsilon" not in cfg:
            raise _err("epsilon", "required when forcing.family is given")
        if not isinstance(cfg["epsilon"], list):
            raise _err("epsilon", "must be a [lo, hi] pair")
        eps = _real(cfg["epsilon"], "epsilon")
        return family_forcing(family, eps), family
    if "epsilon" in cfg:
        raise _err("epsilon", "only meaningful together with forcing.family")
    modes = f["modes"]
    if not isinstance(modes, list) or not modes:
        raise _err("forcing.modes", "expected a nonempty list")
    bounds: dict[int, Interval] = {}
    for i, m in enumerate(modes):
        key = f"forcing.modes[{i}]"
        m = _obj(m, key, {"k", "lo", "hi"})
        for req in ("k", "lo", "hi"):
            if req not in m:
                raise _err(f"{key}.{req}", "missing")
        k = _int(m["k"], f"{key}.k", 1)
        if k in bounds:
            raise _err(f"{key}.k", f"mode {k} given twice")
        lo, hi = _real(m["lo"], f"{key}.lo"), _real(m["hi"], f"{key}.hi")
        if lo.lo > hi.hi:
            raise _err(key, "reversed endpoints")
        bounds[k] = Interval(lo.lo, hi.hi)
    n = max(bounds)
    zero = Interval(0.0)
    return Forcing(tuple(bounds.get(k, zero) for k in range(1, n + 1))), None


def _segment(value, M: int) -> Segment:
    d = _obj(value, "segment", {"s", "C", "boxes"})
    for req in ("s", "C", "boxes"):
        if req not in d:
            raise _err(f"segment.{req}", "missing")
    s = _int(d["s"], "segment.s", 2)
    C = _real(d["C"], "segment.C")
    boxes = d["boxes"]
    if not isinstance(boxes, list):
        raise _err("segment.boxes", "expected a list")
    if len(boxes) != M:
        raise _err("segment.boxes", f"expected M={M} boxes, got {len(boxes)}")
    out = []
    for i, b in enumerate(boxes):
        key = f"segment.boxes[{i}]"
        b = _obj(b, key, {"lo", "hi"})
        for req in ("lo", "hi"):
            if req not in b:
                raise _err(f"{key}.{req}", "missing")
        out.append((_real(b["lo"], f"{key}.lo"), _real(b["hi"], f"{key}.hi")))
    try:
        return Segment(M=M, s=s, C=C, boxes=tuple(out))
    except ValueError as exc:
        raise _err("segment", str(exc)) from exc


def _match_reference(cfg: dict, family: str | None) -> ReferenceConfig | None:
    if family is None:
        return None
    eps = cfg["epsilon"]
    for ref in REFERENCE_CONFIGS:
        if (
            ref.family == family
            and cfg["beta"] == ref.beta
            and list(eps) == list(ref.eps_range)
            and cfg["M"] == 6
        ):
            return ref
    return None


def parse_config_dict(cfg) -> tuple[Problem, Segment | None, RunOptions]:
    cfg = _obj(cfg, "config", _TOP_KEYS)
    if "schema_version" in cfg and cfg["schema_version"] != SCHEMA_VERSION:
        raise _err("schema_version", f"unsupported value {cfg['schema_version']!r}, expected {SCHEMA_VERSION}")
    for req in _REQUIRED:
        if req not in cfg:
            raise _err(req, "missing required key")
    beta = _real(cfg["beta"], "beta")
    sigma = _real(cfg["sigma"], "sigma")
    M = _int(cfg["M"], "M", 1)
    forcing, family = _forcing(cfg)
    try:
        problem = Problem(beta=beta, sigma=sigma, forcing=forcing)
    except ValueError as exc:
        raise _err("beta", str(exc)) from exc
    seg = _segment(cfg["segment"], M) if "segment" in cfg else None

    opts = {}
    if "refine" in cfg:
        r = _obj(cfg["refine"], "refine", _REFINE_KEYS)
        if "iterations" in r:
            opts["iterations"] = _int(r["iterations"], "refine.iterations", 1)
        if "c_tilde" in r:
            opts["c_tilde"] = _real(r["c_tilde"], "refine.c_tilde")
        for key in ("floor", "inflation", "envelope_factor"):
            if key in r:
                opts[key] = _real(r[key], f"refine.{key}").hi
        if "floor" in opts and not opts["floor"] > 0:
            raise _err("refine.floor", "must be positive")
        if "inflation" in opts and not opts["inflation"] >= 1:
            raise _err("refine.inflation", "must be >= 1")
        if "envelope_factor" in opts and not opts["envelope_factor"] >= 0:
            raise _err("refine.envelope_factor", "must be >= 0")
    return problem, seg, RunOptions(M=M, reference=_match_reference(cfg, family), **opts)


def parse_config(path) -> tuple[Problem, Segment | None, RunOptions]:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc.strerror}") from exc
    try:
        cfg = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"config {path} is not valid JSON: {exc}") from exc
    return parse_config_dict(cfg)


# ---------------------------------------------------------------- rendering


def _emit(payload: dict, text: str, fmt: str) -> None:
    if fmt == "json":
        click.echo(json.dumps(payload, indent=2))
    else:
        click.echo(text, nl=False)


def _report_text(seg: Segment, rep: VerificationReport) -> str:
    lines = [f"verdict: {'CERTIFIED' if rep.passed else 'FAILED'}"]
    lines.append(f"segment: M={seg.M} s={seg.s} C={seg.C.hi:.6g}")
    for k in range(1, seg.M + 1):
        lines.append(f"  u_{k}: [{seg.left(k).lo:.6g}, {seg.right(k).hi:.6g}]")
    h = rep.high_mode
    lines.append(f"high modes: C > {h.rhs.hi:.6g}  margin {h.margin:.3e}  {'ok' if h.passed else 'FAIL'}")
    for r in rep.low_modes:
        lines.append(
            f"low mode {r.k}: margins {r.lower_margin:.3e} / {r.upper_margin:.3e}  "
            f"{'ok' if r.passed else 'FAIL'}"
        )
    for d in rep.diagnostics:
        lines.append(f"diagnostic: {d}")
    return "\n".join(lines) + "\n"


def _run_payload(seg: Segment, rep: VerificationReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "passed": rep.passed,
        "segment": segment_to_dict(seg),
        "verification": report_to_dict(rep),
    }


def _refine(problem: Problem, opts: RunOptions, iterations: int | None = None):
    return refine(
        problem,
        opts.M,
        iterations if iterations is not None else opts.iterations,
        c_tilde=opts.c_tilde,
        floor=opts.floor,
        inflation=opts.inflation,
        envelope_factor=opts.envelope_factor,
    )


def _threads() -> int:
    raw = os.environ.get("SEGCERT_THREADS")
    if raw is None:
        return min(len(REFERENCE_CONFIGS), os.cpu_count() or 1)
    try:
        n = int(raw)
    except ValueError as exc:
        raise ValidationError(f"SEGCERT_THREADS must be an integer, got {raw!r}", key="SEGCERT_THREADS") from exc
    if n < 1:
        raise ValidationError("SEGCERT_THREADS must be >= 1", key="SEGCERT_THREADS")
    return n


def _table_row(ref: ReferenceConfig) -> dict:
    problem = ref.problem()
    seg, rep = refine(problem, 6, 2, c_tilde=from_decimal(ref.c_tilde))
    cert = build_certificate(problem, seg, reference=ref)
    published = norm_bounds(ref.published_segment(), problem, "table")
    return {
        "name": ref.name,
        "family": ref.family,
        "beta": ref.beta,
        "epsilon": list(ref.eps_range),
        "passed": rep.passed,
        "s": seg.s,
        "refined": {
            "u_r": [repr(seg.right(k).hi) for k in range(1, 7)],
            "C": repr(seg.C.hi),
            "norms": cert.to_dict().get("norms", {}).get("table"),
        },
        "from_published_segment": {
            "L2_u": repr(published.l2_u.hi),
            "C0_u": repr(published.c0_u.hi),
            "L2_ut": repr(published.l2_ut.hi),
            "C0_ut": repr(published.c0_ut.hi),
        },
        "published": {
            "u_r": list(ref.boxes_r),
            "C": ref.C,
            "L2_u": ref.l2_u,
            "C0_u": ref.c0_u,
            "L2_ut": ref.l2_ut,
            "C0_ut": ref.c0_ut,
        },
        "deltas": cert.comparison,
    }


def _table_text(rows: list[dict]) -> str:
    out = ["Norm bounds (table convention). computed = from refined segment; pub.seg = from printed segment",
           f"{'config':8} {'eps':>6} {'cert':>5} | {'L2(u)':>10} {'pub.seg':>10} {'printed':>10} "
           f"| {'C0(u)':>10} {'pub.seg':>10} {'printed':>10} | {'L2(ut)':>9} {'printed':>9} "
           f"| {'C0(ut)':>9} {'printed':>9}"]
    for r in rows:
        n = r["refined"]["norms"] or {}
        p, ps = r["published"], r["from_published_segment"]

        def g(d, k, w=10):
            return f"{float(d[k][1]):{w}.6g}" if k in d else f"{'-':>{w}}"

        out.append(
            f"{r['name']:8} {r['epsilon'][1]:>6} {'yes' if r['passed'] else 'NO':>5} | "
            f"{g(n, 'L2_u')} {float(ps['L2_u']):10.6g} {float(p['L2_u']):10.6g} | "
            f"{g(n, 'C0_u')} {float(ps['C0_u']):10.6g} {float(p['C0_u']):10.6g} | "
            f"{g(n, 'L2_ut', 9)} {float(p['L2_ut']):9.6g} | {g(n, 'C0_ut', 9)} {float(p['C0_ut']):9.6g}"
        )
    out.append("")
    out.append("Segments after two refinement steps (s = 6), computed vs printed")
    for r in rows:
        cu, pu = r["refined"]["u_r"], r["published"]["u_r"]
        out.append(f"{r['name']:8} C {float(r['refined']['C']):10.5g} ({float(r['published']['C']):.5g})")
        out.append("         r_k " + " ".join(f"{float(c):.5g}({float(q):.5g})" for c, q in zip(cu, pu)))
    return "\n".join(out) + "\n"


# ------------------------------------------------------------------- click

_format_opt = click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True
)
_config_opt = click.option(
    "--config", "config", required=True, type=click.Path(dir_okay=False), help="JSON configuration file."
)


def _guarded(fn):
    """Map library exceptions onto the exit-code contract."""

    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except RefinementDiverged as exc:
            click.echo(f"FAILED: refinement diverged: {exc}", err=True)
            sys.exit(EXIT_FAILED)
        except (SegcertError, ValueError, OSError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_ERROR)

    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


@click.group()
@click.version_option(package_name="segcert")
@click.option("-v", "--verbose", is_flag=True, help="Log progress to stderr.")
def main(verbose: bool) -> None:
    """Certify isolating segments for the forced Boussinesq equation."""
    logging.basicConfig(level=logging.INFO if verbose else logging.WARNING, stream=sys.stderr)


@main.command("verify")
@_config_opt
@_format_opt
@_guarded
def verify_cmd(config, fmt):
    """Verify the segment given in the config."""
    problem, seg, _ = parse_config(config)
    if seg is None:
        raise _err("segment", "verify needs an explicit segment block")
    rep = verify(seg, problem)
    _emit(_run_payload(seg, rep), _report_text(seg, rep), fmt)
    sys.exit(EXIT_OK if rep.passed else EXIT_FAILED)


@main.command("refine")
@_config_opt
@click.option("--iterations", type=click.IntRange(min=1), default=None, help="Refinement steps [default: 2].")
@_format_opt
@_guarded
def refine_cmd(config, iterations, fmt):
    """Build the initial guess, refine it and verify the result."""
    problem, _, opts = parse_config(config)
    seg, rep = _refine(problem, opts, iterations)
    _emit(_run_payload(seg, rep), _report_text(seg, rep), fmt)
    sys.exit(EXIT_OK if rep.passed else EXIT_FAILED)


@main.command("certify")
@_config_opt
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Certificate path (stdout if omitted).")
@_format_opt
@_guarded
def certify_cmd(config, out, fmt):
    """Refine (unless a segment is given), verify and emit a certificate."""
    problem, seg, opts = parse_config(config)
    if seg is None:
        seg, _ = _refine(problem, opts)
    cert = build_certificate(problem, seg, reference=opts.reference)
    text = cert.to_json()
    if out is not None:
        Path(out).write_text(text)
        summary = _report_text(seg, cert.report) + f"certificate written to {out}\n"
        _emit({"passed": cert.passed, "out": str(out)}, summary, fmt)
    elif fmt == "json":
        click.echo(text, nl=False)
    else:
        click.echo(_report_text(seg, cert.report), nl=False)
    sys.exit(EXIT_OK if cert.passed else EXIT_FAILED)


@main.command("table")
@_format_opt
@_guarded
def table_cmd(fmt):
    """Run the six built-in configurations and compare with the printed tables."""
    workers = _threads()
    logger.info("table: %d worker threads", workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(pool.map(_table_row, REFERENCE_CONFIGS))
    _emit({"schema_version": SCHEMA_VERSION, "rows": rows}, _table_text(rows), fmt)
    sys.exit(EXIT_OK if all(r["passed"] for r in rows) else EXIT_FAILED)


@main.command("sample")
@_config_opt
@click.option("--points", type=click.IntRange(min=1), default=1000, show_default=True, help="Samples per face family.")
@click.option("--modes", type=click.IntRange(min=1), default=24, show_default=True, help="Galerkin dimension n.")
@click.option("--seed", type=int, default=0, show_default=True)
@_format_opt
@_guarded
def sample_cmd(config, points, modes, seed, fmt):
    """Floating-point boundary sampling of the (given or refined) segment."""
    problem, seg, opts = parse_config(config)
    if seg is None:
        seg, _ = _refine(problem, opts)
    if modes < seg.M:
        raise _err("--modes", f"must be at least M={seg.M}")
    rep = boundary_sample(seg, modes, problem, samples=points, seed=seed)
    payload = {
        "seed": seed,
        "n": modes,
        "all_positive": rep.all_positive,
        "faces": [
            {"family": f.family, "samples": f.samples, "min_margin": repr(f.min_margin), "worst_mode": f.worst_mode}
            for f in rep.faces
        ],
    }
    text = "".join(
        f"{f.family:4} min margin {f.min_margin: .3e} (mode {f.worst_mode}, {f.samples} samples)\n" for f in rep.faces
    )
    text += f"seed {seed}, n = {modes}: {'no contradictions' if rep.all_positive else 'NEGATIVE MARGIN FOUND'}\n"
    _emit(payload, text, fmt)
    sys.exit(EXIT_OK if rep.all_positive else EXIT_FAILED)


def run(argv: list[str]) -> int:
    """Invoke the CLI in-process and return its exit code."""
    try:
        main.main(args=list(argv), prog_name="segcert", standalone_mode=False)
    except SystemExit as exc:
        return int(exc.code or 0)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_ERROR
    return EXIT_OK
