"""Batch command-line interface with deterministic machine-readable reports.

Spec files
----------
Plain text, one ``key = value`` per line; lines whose first non-blank
character is ``#`` are comments.  Keys:

    class        Y | L | Y_tilde | L_bar                (required)
    xi           real center line (symmetric classes)
    q            complex rate constant, default 0       (genus 1 only)
    s0           complex value at the origin            } exactly one
    s_at_xi      complex value at the center line       } of these two
    zeros_format complex_pairs | tau_only               (default complex_pairs)
    zeros_file   path to a zero table, relative to the spec file

A line consisting of ``zeros_inline:`` switches the rest of the file to
inline zero-table rows in the declared format.

Zero tables
-----------
``complex_pairs``: two floats per line (real and imaginary part).
``tau_only``: one float per line (offset along the center line; needs xi).
``#`` comment lines and blank lines are ignored; parse errors carry 1-based
line numbers.  Ingested sequences are normalized to modulus order with the
deterministic tie-break.

Reports
-------
One record per numeric output:

    record quantity=<name> value=<number> truncation=<N> tolerance=<tol>

``meta`` lines carry the command echo and input digests, and a trailing
``meta report_digest`` line hashes everything above it.  The only
non-deterministic line is the final ``time wall_s`` line, which is excluded
from the digest: identical argv and input files reproduce every other byte.

Exit codes: 0 success, 1 validation or data error (including a failed
identity check), 2 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import sys
import time
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from ._numeric import complex_sum
from .analysis import estimate_exponent, estimate_order, verify_multiplicity
from .core_types import (
    ClassTag,
    EntireFunctionSpec,
    Ordering,
    Pairing,
    ZeroSequence,
    make_symmetric_spec,
)
from .critical_line import critical_line_profile, even_product_form, scan_real_zeros
from .product_engine import (
    eval_product,
    eval_shifted_product,
    shift_constant_residual,
)
from .series_engine import even_series, taylor_coefficients

__all__ = [
    "TableFormat",
    "ZeroTableFile",
    "Record",
    "RunReport",
    "parse_complex",
    "format_complex",
    "ingest_zero_table",
    "write_zero_table",
    "load_spec_file",
    "write_spec_file",
    "run_command",
    "main",
]

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2

DEFAULT_TERMS = 10_000
DEFAULT_TOLERANCE = 1e-6
DEFAULT_SEED = 20240801
DEFAULT_SAMPLES_PER_UNIT = 64
IDENTITY_TAGS = tuple(f"T{i}" for i in range(1, 10))
# Cap on per-zero winding audits in the identity suite (T8/T9).
MAX_AUDITED_ZEROS = 8


class TableFormat(str, Enum):
    COMPLEX_PAIRS = "complex_pairs"
    TAU_ONLY = "tau_only"


@dataclass(frozen=True)
class ZeroTableFile:
    """Provenance of one ingested zero table."""

    path: str
    table_format: TableFormat
    xi: float | None
    count: int
    sha256: str


def parse_complex(text: str) -> complex:
    """Parse '1+2i', '1+2j', '-0.5', 'i', or '(1+2j)' into a complex number."""
    cleaned = text.strip().replace(" ", "")
    if not cleaned:
        raise ValueError("empty complex literal")
    try:
        value = complex(cleaned)
    except ValueError:
        # engineering notation: retry with i as the imaginary unit, but only
        # after the plain parse fails so words like 'inf' keep their meaning
        if "i" not in cleaned or "j" in cleaned:
            raise ValueError(f"malformed complex literal {text!r}") from None
        try:
            value = complex(cleaned.replace("i", "j"))
        except ValueError as exc:
            raise ValueError(f"malformed complex literal {text!r}") from exc
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValueError(f"non-finite complex literal {text!r}")
    return value


def format_complex(z: complex) -> str:
    sign = "+" if (z.imag >= 0 or math.isnan(z.imag)) else "-"
    return f"{z.real!r}{sign}{abs(z.imag)!r}j"


def _format_value(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, complex):
        return format_complex(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass(frozen=True)
class Record:
    quantity: str
    value: object
    truncation: int
    tolerance: float

    def render(self) -> str:
        return (
            f"record quantity={self.quantity} value={_format_value(self.value)} "
            f"truncation={self.truncation} tolerance={self.tolerance!r}"
        )


@dataclass(frozen=True)
class RunReport:
    """Full result of one CLI invocation.

    Rendered output is byte-identical across runs for identical argv and
    input files, except for the trailing wall-time line (excluded from the
    report digest).
    """

    argv: tuple[str, ...]
    input_digests: tuple[tuple[str, str], ...]
    records: tuple[Record, ...]
    errors: tuple[str, ...]
    exit_code: int
    wall_time_s: float

    def deterministic_lines(self) -> list[str]:
        lines = [f"meta command = {' '.join(self.argv)}"]
        for name, digest in self.input_digests:
            lines.append(f"meta input {name} = sha256:{digest}")
        for err in self.errors:
            lines.append(f"meta error = {err}")
        lines.extend(record.render() for record in self.records)
        lines.append(f"meta exit_code = {self.exit_code}")
        return lines

    @property
    def digest(self) -> str:
        body = "\n".join(self.deterministic_lines()) + "\n"
        return hashlib.sha256(body.encode()).hexdigest()

    def render(self) -> str:
        lines = self.deterministic_lines()
        lines.append(f"meta report_digest = sha256:{self.digest}")
        lines.append(f"time wall_s = {self.wall_time_s:.6f}")
        return "\n".join(lines) + "\n"


# ----------------------------------------------------------------- tables --


def _parse_table_lines(
    lines: Sequence[tuple[int, str]],
    table_format: TableFormat,
    xi: float | None,
    origin: str,
) -> np.ndarray:
    if table_format is TableFormat.TAU_ONLY and xi is None:
        raise ValueError(f"{origin}: tau_only format requires xi")
    zeros: list[complex] = []
    for lineno, raw in lines:
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        parts = text.split()
        if table_format is TableFormat.COMPLEX_PAIRS:
            if len(parts) != 2:
                raise ValueError(f"{origin} line {lineno}: expected two floats, got {text!r}")
            try:
                re_part, im_part = float(parts[0]), float(parts[1])
            except ValueError as exc:
                raise ValueError(f"{origin} line {lineno}: malformed float in {text!r}") from exc
            if not (math.isfinite(re_part) and math.isfinite(im_part)):
                raise ValueError(f"{origin} line {lineno}: non-finite zero")
            z = complex(re_part, im_part)
            if z == 0:
                raise ValueError(f"{origin} line {lineno}: zero must be nonzero")
        else:
            if len(parts) != 1:
                raise ValueError(f"{origin} line {lineno}: expected one float, got {text!r}")
            try:
                tau = float(parts[0])
            except ValueError as exc:
                raise ValueError(f"{origin} line {lineno}: malformed float in {text!r}") from exc
            if not math.isfinite(tau):
                raise ValueError(f"{origin} line {lineno}: non-finite tau")
            if tau == 0.0:
                raise ValueError(
                    f"{origin} line {lineno}: tau must be nonzero (line zeros sit off the center)"
                )
            z = complex(xi, tau)  # type: ignore[arg-type]
        zeros.append(z)
    return np.asarray(zeros, dtype=np.complex128)


def ingest_zero_table(
    path: str | Path,
    table_format: TableFormat | str,
    xi: float | None = None,
) -> ZeroSequence:
    """Read a zero table and normalize it to modulus order.

    ``complex_pairs`` rows are grouped as conjugate pairs; ``tau_only`` rows
    (which require ``xi``) as symmetric pairs about the center line.
    """
    table_format = TableFormat(table_format)
    path = Path(path)
    raw_lines = path.read_text().splitlines()
    zeros = _parse_table_lines(
        list(enumerate(raw_lines, start=1)), table_format, xi, str(path)
    )
    pairing = (
        Pairing.SYMMETRIC_ABOUT_CENTER
        if table_format is TableFormat.TAU_ONLY
        else Pairing.CONJUGATE_PAIRS
    )
    seq = ZeroSequence(
        zeros=zeros,
        ordering=Ordering.AS_GIVEN,
        pairing=pairing,
        source=f"{path}:{table_format.value}",
    )
    return seq.sorted_by_modulus()


def write_zero_table(
    path: str | Path,
    seq: ZeroSequence,
    table_format: TableFormat | str,
    xi: float | None = None,
) -> ZeroTableFile:
    """Write a zero table that ingests back to the same multiset exactly."""
    table_format = TableFormat(table_format)
    path = Path(path)
    lines = []
    if table_format is TableFormat.TAU_ONLY:
        if xi is None:
            raise ValueError("tau_only format requires xi")
        if not np.all(seq.zeros.real == float(xi)):
            raise ValueError("tau_only table requires every zero to sit on Re z = xi")
        lines.extend(repr(float(t)) for t in seq.zeros.imag)
    else:
        lines.extend(f"{float(z.real)!r} {float(z.imag)!r}" for z in seq.zeros)
    body = "\n".join(lines) + "\n"
    path.write_text(body)
    return ZeroTableFile(
        path=str(path),
        table_format=table_format,
        xi=None if xi is None else float(xi),
        count=len(seq),
        sha256=hashlib.sha256(body.encode()).hexdigest(),
    )


# ------------------------------------------------------------- spec files --


def load_spec_file(path: str | Path) -> tuple[EntireFunctionSpec, tuple[tuple[str, str], ...]]:
    """Load an EntireFunctionSpec from a spec file.

    Returns the spec plus (name, sha256) digests of every file read.
    """
    path = Path(path)
    text = path.read_text()
    digests = [(f"spec:{path.name}", hashlib.sha256(text.encode()).hexdigest())]

    keys: dict[str, str] = {}
    inline: list[tuple[int, str]] = []
    in_inline = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if in_inline:
            inline.append((lineno, raw))
            continue
        if not stripped or stripped.startswith("#"):
            continue
        if stripped == "zeros_inline:":
            in_inline = True
            continue
        if "=" not in stripped:
            raise ValueError(f"{path} line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if key in keys:
            raise ValueError(f"{path} line {lineno}: duplicate key {key!r}")
        keys[key] = value

    known = {"class", "xi", "q", "s0", "s_at_xi", "zeros_format", "zeros_file"}
    unknown = set(keys) - known
    if unknown:
        raise ValueError(f"{path}: unknown keys {sorted(unknown)}")
    if "class" not in keys:
        raise ValueError(f"{path}: 'class' is required")
    try:
        tag = ClassTag(keys["class"])
    except ValueError:
        raise ValueError(f"{path}: unknown class {keys['class']!r}") from None

    xi = float(keys["xi"]) if "xi" in keys else None
    q = parse_complex(keys["q"]) if "q" in keys else 0j
    if ("s0" in keys) == ("s_at_xi" in keys):
        raise ValueError(f"{path}: exactly one of s0 / s_at_xi is required")
    fmt = TableFormat(keys.get("zeros_format", TableFormat.COMPLEX_PAIRS.value))

    if "zeros_file" in keys and inline:
        raise ValueError(f"{path}: zeros_file and zeros_inline are mutually exclusive")
    if "zeros_file" in keys:
        table_path = (path.parent / keys["zeros_file"]).resolve()
        table_text = table_path.read_text()
        digests.append(
            (f"zeros:{table_path.name}", hashlib.sha256(table_text.encode()).hexdigest())
        )
        zeros = _parse_table_lines(
            list(enumerate(table_text.splitlines(), start=1)), fmt, xi, str(table_path)
        )
    else:
        zeros = _parse_table_lines(inline, fmt, xi, f"{path}:zeros_inline")

    pairing = (
        Pairing.SYMMETRIC_ABOUT_CENTER if fmt is TableFormat.TAU_ONLY else Pairing.CONJUGATE_PAIRS
    )
    seq = ZeroSequence(
        zeros=zeros, ordering=Ordering.AS_GIVEN, pairing=pairing, source=str(path)
    ).sorted_by_modulus()

    if "s_at_xi" in keys:
        if not tag.symmetric:
            raise ValueError(f"{path}: s_at_xi requires class Y_tilde or L_bar")
        if xi is None:
            raise ValueError(f"{path}: s_at_xi requires xi")
        spec = make_symmetric_spec(
            xi=xi,
            taus=seq.zeros.imag,
            value_at_center=parse_complex(keys["s_at_xi"]),
            class_tag=tag,
            q_constant=q,
        )
    else:
        spec = EntireFunctionSpec(
            class_tag=tag,
            value_at_zero=parse_complex(keys["s0"]),
            zero_sequence=seq,
            q_constant=q,
            center_xi=xi if tag.symmetric else None,
        )
    return spec, tuple(digests)


def write_spec_file(
    path: str | Path,
    spec: EntireFunctionSpec,
    zeros_file: str | None = None,
) -> None:
    """Write a spec file, inlining the zero table unless a path is given."""
    path = Path(path)
    symmetric = spec.class_tag.symmetric
    fmt = TableFormat.TAU_ONLY if symmetric else TableFormat.COMPLEX_PAIRS
    lines = [f"class = {spec.class_tag.value}"]
    if symmetric:
        lines.append(f"xi = {spec.center_xi!r}")
    if spec.q_constant != 0:
        lines.append(f"q = {format_complex(spec.q_constant)}")
    lines.append(f"s0 = {format_complex(spec.value_at_zero)}")
    lines.append(f"zeros_format = {fmt.value}")
    if zeros_file is not None:
        write_zero_table(path.parent / zeros_file, spec.zero_sequence, fmt, spec.center_xi)
        lines.append(f"zeros_file = {zeros_file}")
    else:
        lines.append("zeros_inline:")
        if fmt is TableFormat.TAU_ONLY:
            lines.extend(repr(float(t)) for t in spec.zero_sequence.zeros.imag)
        else:
            lines.extend(
                f"{float(z.real)!r} {float(z.imag)!r}" for z in spec.zero_sequence.zeros
            )
    path.write_text("\n".join(lines) + "\n")


# ------------------------------------------------------------ subcommands --


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entirefn",
        description="Evaluate order-one entire functions from their zero data.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--spec", required=True, help="path to a spec file")
        p.add_argument("--terms", type=int, default=DEFAULT_TERMS, help="product truncation N")
        p.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE)

    p = sub.add_parser("eval", help="evaluate the truncated product at a point")
    common(p)
    p.add_argument("--s", type=parse_complex, required=True)

    p = sub.add_parser("series", help="Taylor coefficients about a center")
    common(p)
    p.add_argument("--center", type=parse_complex, default=None)
    p.add_argument("--kmax", type=int, default=10)
    p.add_argument("--even", action="store_true", help="even-series form about the center line")

    p = sub.add_parser("shift", help="recentered product and its residuals")
    common(p)
    p.add_argument("--alpha", type=parse_complex, required=True)
    p.add_argument("--s", type=parse_complex, required=True)

    p = sub.add_parser("line", help="sample the center-line restriction")
    common(p)
    p.add_argument("--x-min", type=float, required=True)
    p.add_argument("--x-max", type=float, required=True)
    p.add_argument("--samples", type=int, default=None)

    p = sub.add_parser("scan", help="recover real line zeros by sign changes")
    common(p)
    p.add_argument("--x-min", type=float, required=True)
    p.add_argument("--x-max", type=float, required=True)
    p.add_argument("--samples", type=int, default=None)

    p = sub.add_parser("order", help="growth-order estimate")
    common(p)
    p.add_argument("--v-min", type=float, required=True)
    p.add_argument("--v-max", type=float, required=True)
    p.add_argument("--radii", type=int, default=16)
    p.add_argument("--angular-samples", type=int, default=64)

    p = sub.add_parser("exponent", help="zero-counting exponent estimate")
    common(p)
    p.add_argument("--r-min", type=float, required=True)
    p.add_argument("--r-max", type=float, required=True)

    p = sub.add_parser("mult", help="winding-number multiplicity check")
    common(p)
    p.add_argument("--center", type=parse_complex, required=True)
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--nodes", type=int, default=512)

    p = sub.add_parser("verify-identity", help="run one built-in identity check")
    common(p)
    p.add_argument("--theorem", choices=IDENTITY_TAGS, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--draws", type=int, default=20)
    p.add_argument("--x-min", type=float, default=-3.0)
    p.add_argument("--x-max", type=float, default=3.0)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--kmax", type=int, default=15)

    return parser


def _auto_samples(x_min: float, x_max: float, samples: int | None) -> int:
    if samples is not None:
        return samples
    return max(2, math.ceil(DEFAULT_SAMPLES_PER_UNIT * (x_max - x_min)))


def _cmd_eval(spec, ns) -> tuple[list[Record], int]:
    ev = eval_product(spec, ns.s, ns.terms)
    tol = ns.tolerance
    records = [
        Record("value", ev.value, ev.terms_used, tol),
        Record(
            "tail_bound",
            "indeterminate" if ev.tail_bound is None else ev.tail_bound,
            ev.terms_used,
            tol,
        ),
        Record("nearest_zero_distance", ev.nearest_zero_distance, ev.terms_used, tol),
        Record("near_zero", ev.near_zero, ev.terms_used, tol),
    ]
    return records, EXIT_OK


def _cmd_series(spec, ns) -> tuple[list[Record], int]:
    if ns.even:
        expansion = even_series(spec, ns.kmax, ns.terms)
    else:
        if ns.center is None:
            raise ValueError("series requires --center unless --even is given")
        expansion = taylor_coefficients(spec, ns.center, ns.kmax, ns.terms)
    records = [
        Record(f"c[{k}]", c, expansion.terms_used, ns.tolerance)
        for k, c in enumerate(expansion.coefficients)
    ]
    if expansion.odd_residuals is not None:
        records.append(
            Record(
                "odd_residual_max",
                max(expansion.odd_residuals, default=0.0),
                expansion.terms_used,
                ns.tolerance,
            )
        )
    return records, EXIT_OK


def _cmd_shift(spec, ns) -> tuple[list[Record], int]:
    shifted = eval_shifted_product(spec, ns.alpha, ns.s, ns.terms)
    direct = eval_product(spec, ns.s, ns.terms)
    disagreement = abs(shifted.value - direct.value) / (1.0 + abs(direct.value))
    residual = shift_constant_residual(spec, ns.alpha, ns.terms)
    tol = ns.tolerance
    return [
        Record("shifted_value", shifted.value, shifted.terms_used, tol),
        Record("direct_value", direct.value, direct.terms_used, tol),
        Record("disagreement", disagreement, shifted.terms_used, tol),
        Record("constant_residual", residual, shifted.terms_used, tol),
    ], EXIT_OK


def _cmd_line(spec, ns) -> tuple[list[Record], int]:
    samples = _auto_samples(ns.x_min, ns.x_max, ns.samples)
    profile = critical_line_profile(spec, ns.x_min, ns.x_max, samples, ns.terms)
    tol = ns.tolerance
    records = [
        Record("v0", profile.v0, profile.truncation, tol),
        Record("imag_max", profile.imag_max, profile.truncation, tol),
    ]
    for j, (x, v) in enumerate(zip(profile.grid, profile.values)):
        records.append(Record(f"x[{j}]", float(x), profile.truncation, tol))
        records.append(Record(f"V[{j}]", complex(v), profile.truncation, tol))
    return records, EXIT_OK


def _cmd_scan(spec, ns) -> tuple[list[Record], int]:
    samples = _auto_samples(ns.x_min, ns.x_max, ns.samples)
    profile = critical_line_profile(spec, ns.x_min, ns.x_max, samples, ns.terms)
    found = scan_real_zeros(profile, spec)
    tol = ns.tolerance
    records = [Record("n_zeros", len(found.estimates), found.truncation, tol)]
    for j, est in enumerate(found.estimates):
        records.append(Record(f"tau_hat[{j}]", est.tau, found.truncation, tol))
        records.append(Record(f"residual[{j}]", est.residual, found.truncation, tol))
    return records, EXIT_OK


def _cmd_order(spec, ns) -> tuple[list[Record], int]:
    est = estimate_order(
        spec, ns.v_min, ns.v_max, ns.radii, ns.terms, angular_samples=ns.angular_samples
    )
    tol = ns.tolerance
    return [
        Record("order", est.order, est.truncation, tol),
        Record("rms_residual", est.rms_residual, est.truncation, tol),
        Record("radii_used", len(est.radii), est.truncation, tol),
    ], EXIT_OK


def _cmd_exponent(spec, ns) -> tuple[list[Record], int]:
    est = estimate_exponent(spec.zero_sequence, ns.r_min, ns.r_max)
    tol = ns.tolerance
    return [
        Record("exponent", est.exponent, ns.terms, tol),
        Record("rms_residual", est.rms_residual, ns.terms, tol),
        Record("counting_points", len(est.counting_pairs), ns.terms, tol),
    ], EXIT_OK


def _cmd_mult(spec, ns) -> tuple[list[Record], int]:
    res = verify_multiplicity(spec, ns.center, ns.radius, ns.nodes, ns.terms)
    tol = ns.tolerance
    return [
        Record("winding", res.winding, ns.terms, tol),
        Record("raw_integral", res.raw_integral, ns.terms, tol),
        Record("nodes", res.nodes, ns.terms, tol),
    ], EXIT_OK


# -------------------------------------------------------- identity checks --


def _draw_points(rng: np.random.Generator, spec, count: int, avoid_origin: bool) -> list[complex]:
    """Deterministic points in the |Re|,|Im| <= 2 box, clear of zeros."""
    zeros = spec.zero_sequence.zeros
    points: list[complex] = []
    while len(points) < count:
        z = complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
        if avoid_origin and abs(z) < 1e-2:
            continue
        if zeros.size and float(np.min(np.abs(z - zeros))) < 1e-2:
            continue
        points.append(z)
    return points


def _shift_identity_records(spec, ns, rng) -> tuple[list[Record], bool]:
    expected_genus = 1 if ns.theorem in ("T1", "T3") else 0
    if ns.theorem in ("T1", "T2") and spec.genus != expected_genus:
        raise ValueError(f"{ns.theorem} requires a genus-{expected_genus} spec")
    if ns.theorem == "T3" and spec.class_tag is not ClassTag.L_BAR:
        raise ValueError("T3 requires an L_bar spec")
    if ns.theorem == "T4" and spec.class_tag is not ClassTag.Y_TILDE:
        raise ValueError("T4 requires a Y_tilde spec")
    tol = ns.tolerance
    at_center = ns.theorem in ("T3", "T4")
    s_points = _draw_points(rng, spec, ns.draws, avoid_origin=False)
    if at_center:
        alphas = [complex(spec.center_xi)] * ns.draws
    else:
        alphas = _draw_points(rng, spec, ns.draws, avoid_origin=True)
    disagreement = 0.0
    residual = 0.0
    for s, alpha in zip(s_points, alphas):
        shifted = eval_shifted_product(spec, alpha, s, ns.terms).value
        direct = eval_product(spec, s, ns.terms).value
        disagreement = max(disagreement, abs(shifted - direct) / (1.0 + abs(direct)))
        residual = max(residual, shift_constant_residual(spec, alpha, ns.terms))
    ok = disagreement <= tol and residual <= tol
    records = [
        Record("disagreement_max", disagreement, ns.terms, tol),
        Record("constant_residual_max", residual, ns.terms, tol),
    ]
    return records, ok


def _even_series_records(spec, ns, rng) -> tuple[list[Record], bool]:
    expansion = even_series(spec, ns.kmax, ns.terms)
    assert expansion.odd_residuals is not None
    worst = max(expansion.odd_residuals, default=0.0)
    scale = max(abs(c) for c in expansion.coefficients[0::2])
    records = [
        Record("odd_residual_max", worst, expansion.terms_used, ns.tolerance),
        Record("even_magnitude_max", scale, expansion.terms_used, ns.tolerance),
    ]
    return records, True


def _line_form_records(spec, ns, rng) -> tuple[list[Record], bool]:
    if ns.theorem == "T6" and spec.class_tag is not ClassTag.L_BAR:
        raise ValueError("T6 requires an L_bar spec")
    if ns.theorem == "T7" and spec.class_tag is not ClassTag.Y_TILDE:
        raise ValueError("T7 requires a Y_tilde spec")
    samples = _auto_samples(ns.x_min, ns.x_max, ns.samples)
    profile = critical_line_profile(spec, ns.x_min, ns.x_max, samples, ns.terms)
    zeros = spec.zero_sequence.zeros[: profile.truncation]
    taus = zeros.imag
    tol = ns.tolerance
    residual = 0.0
    even_residual = 0.0
    for x, direct in zip(profile.grid, profile.values):
        factors = (1.0 - x / taus).astype(np.complex128)
        if np.any(factors == 0):
            literal = 0j
        else:
            exponent = complex_sum(np.log(factors))
            if spec.genus == 1:
                exponent += 1j * x * spec.q_constant + 1j * x * complex_sum(1.0 / zeros)
            literal = profile.v0 * np.exp(exponent)
        residual = max(residual, abs(literal - direct) / (1.0 + abs(direct)))
        if ns.theorem == "T7":
            even_value = even_product_form(spec, float(x), profile.truncation)
            even_residual = max(even_residual, abs(even_value - direct) / (1.0 + abs(direct)))
    records = [Record("line_form_residual_max", residual, profile.truncation, tol)]
    ok = residual <= tol
    if ns.theorem == "T7":
        reality = profile.imag_max / max(float(np.max(np.abs(profile.values))), 1e-300)
        records.append(Record("reality_ratio", reality, profile.truncation, tol))
        records.append(Record("even_form_residual_max", even_residual, profile.truncation, tol))
        ok = ok and reality <= tol and even_residual <= tol
    return records, ok


def _simplicity_records(spec, ns, rng) -> tuple[list[Record], bool]:
    if ns.theorem == "T8" and spec.class_tag is not ClassTag.Y_TILDE:
        raise ValueError("T8 requires a Y_tilde spec")
    if ns.theorem == "T9" and spec.class_tag is not ClassTag.L_BAR:
        raise ValueError("T9 requires an L_bar spec")
    tol = ns.tolerance
    zeros = spec.zero_sequence.zeros[: ns.terms if ns.terms is not None else None]
    if ns.theorem == "T8":
        samples = _auto_samples(ns.x_min, ns.x_max, ns.samples)
        profile = critical_line_profile(spec, ns.x_min, ns.x_max, samples, ns.terms)
        found = scan_real_zeros(profile, spec)
        centers = [complex(profile.xi, est.tau) for est in found.estimates]
    else:
        in_range = [complex(z) for z in zeros if ns.x_min <= z.imag <= ns.x_max]
        centers = []
        for z in in_range:
            if all(abs(z - c) > 1e-9 for c in centers):
                centers.append(z)
    centers = centers[:MAX_AUDITED_ZEROS]
    records = [Record("audited_zeros", len(centers), ns.terms, tol)]
    ok = len(centers) > 0
    for j, center in enumerate(centers):
        others = zeros[np.abs(zeros - center) > 1e-9]
        gap = float(np.min(np.abs(others - center))) if others.size else 1.0
        radius = 0.4 * min(gap, 1.0)
        result = verify_multiplicity(spec, center, radius, 512, ns.terms)
        records.append(Record(f"winding[{j}]", result.winding, ns.terms, tol))
        ok = ok and result.winding == 1
    return records, ok


_IDENTITY_HANDLERS: dict[str, Callable] = {
    "T1": _shift_identity_records,
    "T2": _shift_identity_records,
    "T3": _shift_identity_records,
    "T4": _shift_identity_records,
    "T5": _even_series_records,
    "T6": _line_form_records,
    "T7": _line_form_records,
    "T8": _simplicity_records,
    "T9": _simplicity_records,
}


def _cmd_verify(spec, ns) -> tuple[list[Record], int]:
    rng = np.random.default_rng(ns.seed)
    records, ok = _IDENTITY_HANDLERS[ns.theorem](spec, ns, rng)
    ok = bool(ok)
    records.append(Record("pass", ok, ns.terms, ns.tolerance))
    return records, EXIT_OK if ok else EXIT_VALIDATION


_COMMANDS = {
    "eval": _cmd_eval,
    "series": _cmd_series,
    "shift": _cmd_shift,
    "line": _cmd_line,
    "scan": _cmd_scan,
    "order": _cmd_order,
    "exponent": _cmd_exponent,
    "mult": _cmd_mult,
    "verify-identity": _cmd_verify,
}


def run_command(argv: Sequence[str]) -> RunReport:
    """Execute one CLI invocation and return its report (never raises)."""
    argv = tuple(str(a) for a in argv)
    start = time.perf_counter()
    parser = _build_parser()
    try:
        ns = parser.parse_args(list(argv))
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else EXIT_USAGE
        return RunReport(
            argv=argv,
            input_digests=(),
            records=(),
            errors=() if code == 0 else ("usage error",),
            exit_code=code,
            wall_time_s=time.perf_counter() - start,
        )
    digests: tuple[tuple[str, str], ...] = ()
    try:
        spec, digests = load_spec_file(ns.spec)
        # --terms is a cap, not a demand: small inputs use every zero they have
        ns.terms = min(ns.terms, spec.n_zeros)
        records, code = _COMMANDS[ns.command](spec, ns)
    except (ValueError, OSError) as exc:
        return RunReport(
            argv=argv,
            input_digests=digests,
            records=(),
            errors=(str(exc),),
            exit_code=EXIT_VALIDATION,
            wall_time_s=time.perf_counter() - start,
        )
    return RunReport(
        argv=argv,
        input_digests=digests,
        records=tuple(records),
        errors=(),
        exit_code=code,
        wall_time_s=time.perf_counter() - start,
    )


def main(argv: Sequence[str] | None = None) -> int:
    report = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(report.render())
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
