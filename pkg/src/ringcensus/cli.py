"""Command-line front end.

Subcommands: census (spectrum of one cell or a config-driven campaign),
metrics (grids of derived statistics), verify (theorem sweeps), probe
(random divisibility checks), image / intersect (slice multisets), expsum
(Boolean-cube exponential sums) and bound (closed-form divisors).

Exit codes: 0 success or verified, 1 divisibility violation found, 2 usage
error, 3 budget refusal.  All output is deterministic given the flags.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import __version__
from .budget import BudgetError, budget_limit
from .bounds import ax_bound, marshall_ramage_bound, theorem1_bound, theorem2_bound
from .census import (
    Spectrum,
    derive_metrics,
    format_percent,
    metrics_to_json,
    random_divisibility_probe,
    run_census,
    spectrum_from_csv,
    spectrum_to_csv,
    spectrum_to_json,
    spectrum_to_markdown,
)
from .expsum import amplitude_sum, exponential_sum
from .image_multiset import (
    image_quadratic,
    image_quadratic_restricted,
    intersection_size,
    intersection_with_S,
)
from .poly import parse_poly
from .theorem_check import verify_corollary1, verify_theorem1, verify_theorem2

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _parse_range(spec: str) -> list[int]:
    """'2..8' -> [2..8]; '2,5,7' -> [2, 5, 7]; '4' -> [4]."""
    out: list[int] = []
    for part in spec.split(","):
        part = part.strip()
        if ".." in part:
            lo, _, hi = part.partition("..")
            out.extend(range(int(lo), int(hi) + 1))
        elif part:
            out.append(int(part))
    if not out:
        raise ValueError(f"empty range spec: {spec!r}")
    return out


def _parse_cell(token: str) -> tuple[int, int, int]:
    parts = token.split(":")
    if len(parts) != 3:
        raise ValueError(f"cell must be m:n:d, got {token!r}")
    return int(parts[0]), int(parts[1]), int(parts[2])


@dataclass
class CampaignConfig:
    """Multi-cell census configuration, parsed from a key=value file."""

    cells: list[tuple[int, int, int]]
    worker_count: int = 1
    budget: int | None = None
    out_dir: Path = Path(".")
    formats: list[str] = field(default_factory=lambda: ["csv"])
    seed: int | None = None
    forced: set[tuple[int, int, int]] = field(default_factory=set)

    @classmethod
    def load(cls, path: Path) -> "CampaignConfig":
        values: dict[str, str] = {}
        for raw in path.read_text().splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, val = line.partition("=")
            if not sep:
                raise ValueError(f"bad config line: {raw!r}")
            values[key.strip()] = val.strip()
        if "cells" not in values:
            raise ValueError("config needs a 'cells = m:n:d, ...' line")
        cells = [_parse_cell(tok) for tok in values["cells"].split(",") if tok.strip()]
        cfg = cls(cells)
        if "workers" in values:
            cfg.worker_count = int(values["workers"])
        if "budget" in values:
            cfg.budget = int(values["budget"])
        if "out" in values:
            cfg.out_dir = Path(values["out"])
        if "formats" in values:
            cfg.formats = [f.strip() for f in values["formats"].split(",") if f.strip()]
        if "seed" in values:
            cfg.seed = int(values["seed"])
        if "force" in values:
            cfg.forced = {
                _parse_cell(tok) for tok in values["force"].split(",") if tok.strip()
            }
        return cfg


_FORMATTERS = {
    "csv": (spectrum_to_csv, "csv"),
    "md": (spectrum_to_markdown, "md"),
    "json": (spectrum_to_json, "json"),
}


def _write_spectrum(spectrum: Spectrum, fmt: str, out: Path | None) -> None:
    render, ext = _FORMATTERS[fmt]
    text = render(spectrum)
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)
        print(f"wrote {out}")


def cmd_census(args: argparse.Namespace) -> int:
    if args.config:
        cfg = CampaignConfig.load(Path(args.config))
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        for cell in cfg.cells:
            m, n, d = cell
            spectrum = run_census(
                m, n, d, cfg.worker_count,
                budget=cfg.budget, force=cell in cfg.forced or args.force,
            )
            for fmt in cfg.formats:
                render, ext = _FORMATTERS[fmt]
                path = cfg.out_dir / f"spectrum_m{m}_n{n}_d{d}.{ext}"
                path.write_text(render(spectrum))
                print(f"wrote {path}")
        return EXIT_OK

    if args.ring is None or args.vars is None:
        print("error: census needs --ring and --vars (or --config)", file=sys.stderr)
        return EXIT_USAGE
    spectrum = run_census(
        args.ring, args.vars, args.degree, args.workers,
        budget=args.budget, force=args.force,
    )
    _write_spectrum(spectrum, args.format, Path(args.out) if args.out else None)
    print(
        f"census ({args.ring},{args.vars},{args.degree}): "
        f"{len(spectrum.entries)} distinct counts over "
        f"{spectrum.total_polynomials()} polynomials"
    )
    return EXIT_OK


_METRIC_FIELDS = {
    "min-div": ("minimum divisibility", lambda r: str(r.min_divisibility)),
    "pct-min-div": (
        "percent of polynomials at minimum divisibility",
        lambda r: format_percent(r.pct_min_div),
    ),
    "slots": ("number of possible numbers of solutions", lambda r: str(r.slots_used)),
    "pct-slots": (
        "percent of allowed slots used",
        lambda r: format_percent(r.pct_slots_used),
    ),
    "first-gap": ("size of the first gap", lambda r: str(r.first_gap)),
    "last-gap": (
        "size of the last gap",
        lambda r: "undefined" if r.last_gap is None else str(r.last_gap),
    ),
}


def cmd_metrics(args: argparse.Namespace) -> int:
    rings = _parse_range(args.rings)
    var_counts = _parse_range(args.vars)
    reports: dict[tuple[int, int], object] = {}
    for m in rings:
        for n in var_counts:
            spectrum = None
            if args.spectra_dir:
                path = Path(args.spectra_dir) / f"spectrum_m{m}_n{n}_d{args.degree}.csv"
                if path.exists():
                    spectrum = spectrum_from_csv(path.read_text(), m, n, args.degree)
            if spectrum is None:
                if args.no_compute:
                    print(
                        f"error: no stored spectrum for ({m},{n},{args.degree}) "
                        "and --no-compute given",
                        file=sys.stderr,
                    )
                    return EXIT_USAGE
                spectrum = run_census(
                    m, n, args.degree, args.workers,
                    budget=args.budget, force=args.force,
                )
            reports[m, n] = derive_metrics(spectrum)

    wanted = _METRIC_FIELDS if args.metric == "all" else {
        args.metric: _METRIC_FIELDS[args.metric]
    }
    lines = []
    if args.format == "json":
        for (m, n), rep in sorted(reports.items()):
            lines.append(metrics_to_json(rep).rstrip())
    else:
        for key, (title, getter) in wanted.items():
            lines.append(f"### degree {args.degree}: {title}")
            header = "| r\\n | " + " | ".join(str(n) for n in var_counts) + " |"
            lines.append(header)
            lines.append("| ---: |" + " ---: |" * len(var_counts))
            for m in rings:
                row = [getter(reports[m, n]) for n in var_counts]
                lines.append(f"| {m} | " + " | ".join(row) + " |")
            lines.append("")
    text = "\n".join(lines).rstrip() + "\n"
    if args.out:
        Path(args.out).write_text(text)
        print(f"wrote {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    samples = None if args.exhaustive else args.samples
    if not args.exhaustive and samples is None:
        print("error: pass --exhaustive or --samples N", file=sys.stderr)
        return EXIT_USAGE
    common = dict(
        samples=samples,
        seed=args.seed,
        divisor_scale=args.divisor_scale,
        divisor_override=args.divisor_override,
    )
    if args.theorem == "1":
        if args.ring is None:
            print("error: --theorem 1 needs --ring", file=sys.stderr)
            return EXIT_USAGE
        report = verify_theorem1(args.ring, args.vars, args.degree, **common)
    else:
        if args.ring_exp is None:
            print(f"error: --theorem {args.theorem} needs --ring-exp", file=sys.stderr)
            return EXIT_USAGE
        if args.theorem == "2":
            report = verify_theorem2(args.ring_exp, args.vars, **common)
        else:
            report = verify_corollary1(args.theorem[-1], args.ring_exp, args.vars, **common)

    print(
        f"{report.theorem} [{report.mode}] cell={report.cell}: "
        f"{report.instances} instances, divisors {report.divisors_used}, "
        f"{report.violations_total} violations"
    )
    for violation in report.violations[:10]:
        print(
            f"  VIOLATION coeffs={violation.coeffs} const={violation.constant} "
            f"params={violation.params} lhs={violation.lhs} "
            f"divisor={violation.divisor} remainder={violation.remainder}"
        )
    if len(report.violations) > 10:
        print(f"  ... {len(report.violations) - 10} more")
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_probe(args: argparse.Namespace) -> int:
    violations = random_divisibility_probe(
        args.ring, args.vars, args.degree, args.divisor, args.tries, args.seed
    )
    for violation in violations:
        print(f"remainder: {violation.remainder}")
    print(
        f"probe ({args.ring},{args.vars},{args.degree}) divisor={args.divisor} "
        f"tries={args.tries}: {len(violations)} nonzero remainders"
    )
    return EXIT_VIOLATION if violations else EXIT_OK


def cmd_image(args: argparse.Namespace) -> int:
    if args.domain_exp is None:
        ms = image_quadratic(args.a, args.b, args.c, args.ring_exp)
    else:
        ms = image_quadratic_restricted(
            args.a, args.b, args.c, args.ring_exp, args.offset, args.domain_exp
        )
    print(
        f"image of {args.a}*x^2 + {args.b}*x + {args.c} over Z_{2 ** args.ring_exp}"
        + (
            ""
            if args.domain_exp is None
            else f" on {{ {args.offset} + {2 ** (args.ring_exp - args.domain_exp)}*j }}"
        )
    )
    for s in ms.normalized():
        print(f"  {s.multiplicity} x {{ {s.offset} + {s.period}*i }}")
    if args.expand:
        counter = ms.as_counter()
        print("  expanded:", " ".join(f"{v}:{c}" for v, c in sorted(counter.items())))
    return EXIT_OK


def cmd_intersect(args: argparse.Namespace) -> int:
    p_coeffs = tuple(int(x) for x in args.p.split(","))
    if len(p_coeffs) != 3:
        print("error: --p needs a,b,c", file=sys.stderr)
        return EXIT_USAGE
    if args.with_s:
        check = intersection_with_S(
            p_coeffs, args.lx, args.domain_exp_x, args.e, args.v, args.ring_exp
        )
    else:
        q_coeffs = tuple(int(x) for x in args.q.split(","))
        if len(q_coeffs) != 3:
            print("error: --q needs a,b,c", file=sys.stderr)
            return EXIT_USAGE
        check = intersection_size(
            p_coeffs, args.lx, args.domain_exp_x,
            q_coeffs, args.ly, args.domain_exp_y, args.free_exp, args.ring_exp,
        )
    verdict = "divisible" if check.ok else "VIOLATION"
    print(f"intersection size {check.count}, divisor {check.divisor}: {verdict}")
    return EXIT_OK if check.ok else EXIT_VIOLATION


def cmd_expsum(args: argparse.Namespace) -> int:
    P = parse_poly(args.poly, n_vars=args.vars, degree=args.degree)
    if args.full:
        total = exponential_sum(P, restrict_to_cube=False)
        counts = P.value_histogram().counts
    else:
        amp = amplitude_sum(P, args.normalizer)
        total, counts = amp.sum, amp.counts
    print("counts:", " ".join(str(c) for c in counts))
    print(f"sum: {total.real:+.12g}{total.imag:+.12g}j")
    if not args.full and args.normalizer != 1.0:
        scaled = total / args.normalizer
        print(f"amplitude: {scaled.real:+.12g}{scaled.imag:+.12g}j")
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    if args.marshall_ramage:
        bound = marshall_ramage_bound(args.ring, args.vars, args.degree)
    elif args.ax:
        bound = ax_bound(args.prime, args.r_exp, args.vars, args.degree)
    elif args.theorem1:
        q_list = [int(x) for x in args.q_list.split(",")]
        bound = theorem1_bound(args.ring, args.vars, args.degree, q_list)
    elif args.theorem2:
        bound = theorem2_bound(args.ring_exp, args.vars, args.q, args.v)
    else:
        print("error: pick one of --marshall-ramage/--ax/--theorem1/--theorem2",
              file=sys.stderr)
        return EXIT_USAGE
    print(bound.formula())
    print(bound.value)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringcensus",
        description="Censuses and divisibility checks for polynomial solution "
        "counts over Z_m",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("census", help="exhaustive spectrum of one (m, n, d) cell")
    p.add_argument("--ring", type=int, help="ring size m")
    p.add_argument("--vars", type=int, help="number of variables")
    p.add_argument("--degree", type=int, choices=(1, 2, 3), default=2)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("csv", "md", "json"), default="csv")
    p.add_argument("--out", help="output file (stdout when omitted)")
    p.add_argument("--force", action="store_true", help="run over-budget cells")
    p.add_argument("--budget", type=int, default=None,
                   help=f"evaluation budget (default {budget_limit()})")
    p.add_argument("--config", help="campaign config file (key = value lines)")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("metrics", help="derived-statistics grids for many cells")
    p.add_argument("--rings", required=True, help="e.g. 2..8 or 2,3,5")
    p.add_argument("--vars", required=True, help="e.g. 1..3")
    p.add_argument("--degree", type=int, choices=(1, 2, 3), default=2)
    p.add_argument("--metric", default="all",
                   choices=("all", *_METRIC_FIELDS.keys()))
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("md", "json"), default="md")
    p.add_argument("--out")
    p.add_argument("--force", action="store_true")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--spectra-dir", help="load stored spectrum CSV files from here")
    p.add_argument("--no-compute", action="store_true",
                   help="fail instead of computing missing spectra")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("verify", help="sweep a divisibility theorem")
    p.add_argument("--theorem", required=True, choices=("1", "2", "c1a", "c1b", "c1c"))
    p.add_argument("--ring", type=int, help="ring size m (theorem 1)")
    p.add_argument("--ring-exp", type=int, help="exponent r of 2^r (theorem 2, corollaries)")
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--degree", type=int, choices=(1, 2, 3), default=2,
                   help="degree bound (theorem 1 only)")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--divisor-override", type=int, default=None)
    p.add_argument("--divisor-scale", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("probe", help="random divisibility probe (prints remainders)")
    p.add_argument("--ring", type=int, required=True)
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--degree", type=int, choices=(1, 2, 3), default=3)
    p.add_argument("--divisor", type=int, required=True)
    p.add_argument("--tries", type=int, default=50)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_probe)

    p = sub.add_parser("image", help="slice decomposition of a quadratic image")
    p.add_argument("--ring-exp", type=int, required=True)
    p.add_argument("-a", type=int, required=True)
    p.add_argument("-b", type=int, required=True)
    p.add_argument("-c", type=int, required=True)
    p.add_argument("--offset", type=int, default=0, help="domain coset offset l")
    p.add_argument("--domain-exp", type=int, default=None,
                   help="domain ladder exponent v (full ring when omitted)")
    p.add_argument("--expand", action="store_true")
    p.set_defaults(func=cmd_image)

    p = sub.add_parser("intersect", help="multiplicative-intersection divisibility check")
    p.add_argument("--ring-exp", type=int, required=True)
    p.add_argument("--p", required=True, help="a,b,c of P")
    p.add_argument("--lx", type=int, default=0)
    p.add_argument("--domain-exp-x", type=int, required=True)
    p.add_argument("--q", help="a,b,c of Q (pairwise mode)")
    p.add_argument("--ly", type=int, default=0)
    p.add_argument("--domain-exp-y", type=int)
    p.add_argument("--free-exp", type=int, default=0, help="exponent d of the free term ladder")
    p.add_argument("--with-s", action="store_true",
                   help="intersect with the ladder-weighted multiset S instead")
    p.add_argument("-e", type=int, default=0)
    p.add_argument("-v", type=int, default=0)
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("expsum", help="Boolean-cube counts and exponential sum")
    p.add_argument("--poly", required=True, help='e.g. "poly mod 4: 1 + x1*x1 + 2*x1*x2"')
    p.add_argument("--vars", type=int, default=None)
    p.add_argument("--degree", type=int, default=None)
    p.add_argument("--full", action="store_true", help="sum over all of Z_m^n")
    p.add_argument("--normalizer", type=float, default=1.0)
    p.set_defaults(func=cmd_expsum)

    p = sub.add_parser("bound", help="closed-form divisibility bounds")
    p.add_argument("--marshall-ramage", action="store_true")
    p.add_argument("--ax", action="store_true")
    p.add_argument("--theorem1", action="store_true")
    p.add_argument("--theorem2", action="store_true")
    p.add_argument("--ring", type=int)
    p.add_argument("--vars", type=int, required=True)
    p.add_argument("--degree", type=int, default=2)
    p.add_argument("--prime", type=int)
    p.add_argument("--r-exp", type=int, default=1)
    p.add_argument("--ring-exp", type=int)
    p.add_argument("--q-list")
    p.add_argument("--q", type=int, default=0)
    p.add_argument("--v", type=int, default=0)
    p.set_defaults(func=cmd_bound)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"budget refusal: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
