"""Command line interface: config ingestion, dispatch, report emission.

Commands operate on a JSON job configuration (from --config, or one of
the embedded examples via --example / the `example` command) and emit a
report either as JSON or as plain text.  Reports echo a canonicalized
copy of their configuration; re-running a report from its own echo is
byte-identical.

Exit codes: 0 success, 1 configuration/validation error, 2 mathematical
precondition failure (class not in the kernel, vanishing hypothesis
violated, no monomial basis), 3 enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from . import __version__
from .ambient import Ambient, LineBundle
from .cohomology import cohomology_dims
from .construction import (
    PRNG_ID,
    CechClass,
    base_locus_membership,
    emit_equations,
    random_section,
    singular_scan_mod_p,
    verify_syzygy,
)
from .errors import (
    BudgetExceededError,
    ConfigError,
    GciError,
    ParseError,
)
from .multmap import assemble_mult_map, cokernel_dim, kernel_basis, matrix_rank
from .poly import MultiPoly, parse
from .presets import example_config, example_names
from .topology import moduli_parameter_count, quotient_hodge

SCHEMA_VERSION = 1
INT64_MAX = 2**63 - 1


# -- JSON-safe rendering -------------------------------------------------


def jsonable(value):
    """Recursively convert report values to JSON-safe data.  Integers
    beyond 64 bits and non-integral rationals become strings, so nothing
    is ever rounded."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return jsonable(int(value))
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, int):
        return str(value) if abs(value) > INT64_MAX else value
    if isinstance(value, float):
        raise ConfigError("reports never contain floats")
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    return str(value)


# -- config validation ---------------------------------------------------


@dataclass
class Job:
    """A validated configuration, with parsed mathematical objects."""

    echo: dict
    ambient: Ambient | None = None
    L: LineBundle | None = None
    M: LineBundle | None = None
    d: int | None = None
    e: int | None = None
    F: MultiPoly | None = None
    q: CechClass | None = None
    options: dict | None = None
    seed: int | None = None


def _expect(condition, message):
    if not condition:
        raise ConfigError(message)


def _as_int(value, where, minimum=None):
    if isinstance(value, str):
        try:
            value = int(value)
        except ValueError:
            raise ConfigError(f"{where}: {value!r} is not an integer") from None
    _expect(isinstance(value, int) and not isinstance(value, bool),
            f"{where}: expected an integer, got {value!r}")
    if minimum is not None:
        _expect(value >= minimum, f"{where}: {value} < {minimum}")
    return value


def _validate_ambient(raw) -> Ambient:
    _expect(isinstance(raw, dict), "ambient: expected an object")
    factors = raw.get("factors")
    _expect(isinstance(factors, list) and factors, "ambient.factors: expected a nonempty list")
    dims, names = [], []
    for i, item in enumerate(factors):
        _expect(isinstance(item, dict), f"ambient.factors[{i}]: expected an object")
        dims.append(_as_int(item.get("dim"), f"ambient.factors[{i}].dim", 1))
        vars_ = item.get("vars")
        if vars_ is not None:
            _expect(
                isinstance(vars_, list) and all(isinstance(v, str) for v in vars_),
                f"ambient.factors[{i}].vars: expected a list of strings",
            )
        names.append(vars_)
    distinguished = raw.get("distinguished")
    if distinguished is not None:
        distinguished = _as_int(distinguished, "ambient.distinguished", 0)
    try:
        return Ambient.product(dims, names, distinguished)
    except GciError as exc:
        raise ConfigError(f"ambient: {exc}") from None


def _full_degrees(ambient: Ambient, q_degrees, twist: int) -> tuple[int, ...]:
    """Insert the P^1 twist into a base-degree vector at the
    distinguished slot."""
    out = []
    it = iter(q_degrees)
    for i in range(ambient.num_factors):
        out.append(twist if i == ambient.distinguished else next(it))
    return tuple(out)


def _validate_options(raw) -> dict:
    if raw is None:
        return {}
    _expect(isinstance(raw, dict), "options: expected an object")
    options = {}
    for key in sorted(raw):
        value = raw[key]
        if key == "primes":
            _expect(isinstance(value, list) and value, "options.primes: nonempty list")
            options[key] = [_as_int(v, "options.primes[]", 3) for v in value]
        elif key == "seed":
            options[key] = _as_int(value, "options.seed", 0)
        elif key == "expected_codim":
            options[key] = _as_int(value, "options.expected_codim", 1)
        elif key == "budget":
            options[key] = _as_int(value, "options.budget", 1)
        elif key == "scan_target":
            _expect(value in ("system", "hypersurface"),
                    "options.scan_target: 'system' or 'hypersurface'")
            options[key] = value
        elif key == "hodge":
            _expect(isinstance(value, dict), "options.hodge: expected an object")
            hodge = {
                "h2": _as_int(value.get("h2"), "options.hodge.h2", 0),
                "h3": _as_int(value.get("h3"), "options.hodge.h3", 0),
                "genera": [
                    _as_int(g, "options.hodge.genera[]", 0)
                    for g in value.get("genera", [])
                ],
            }
            options[key] = hodge
        elif key == "extra_bundles":
            _expect(isinstance(value, list), "options.extra_bundles: expected a list")
            options[key] = [[_as_int(v, "options.extra_bundles[][]") for v in row]
                            for row in value]
        elif key == "note":
            _expect(isinstance(value, str), "options.note: expected a string")
            options[key] = value
        else:
            raise ConfigError(f"options.{key}: unknown option")
    return options


def build_job(config, need_bundles=True, need_sections=False, need_q=False) -> Job:
    """Validate a raw configuration dict and construct the mathematical
    objects it describes.  Every defect raises ConfigError."""
    _expect(isinstance(config, dict), "config: expected a JSON object")
    version = config.get("schema_version")
    _expect(version == SCHEMA_VERSION,
            f"schema_version: expected {SCHEMA_VERSION}, got {version!r}")
    for key in config:
        _expect(key in ("schema_version", "ambient", "bundles", "sections", "options"),
                f"config.{key}: unknown key")
    options = _validate_options(config.get("options"))
    job = Job(echo={"schema_version": SCHEMA_VERSION}, options=options,
              seed=options.get("seed"))
    if not need_bundles:
        job.echo["options"] = options
        return job

    ambient = _validate_ambient(config.get("ambient"))
    _expect(ambient.distinguished is not None,
            "ambient.distinguished: required for this command")
    bundles = config.get("bundles")
    _expect(isinstance(bundles, dict), "bundles: expected an object")
    n_q = len(ambient.q_factor_indices())
    L_deg = bundles.get("L")
    M_deg = bundles.get("M")
    _expect(isinstance(L_deg, list) and len(L_deg) == n_q,
            f"bundles.L: expected {n_q} base degrees")
    _expect(isinstance(M_deg, list) and len(M_deg) == n_q,
            f"bundles.M: expected {n_q} base degrees")
    L_deg = [_as_int(v, "bundles.L[]") for v in L_deg]
    M_deg = [_as_int(v, "bundles.M[]") for v in M_deg]
    d = _as_int(bundles.get("d"), "bundles.d", 1)
    e = _as_int(bundles.get("e"), "bundles.e", 1)
    job.ambient = ambient
    job.L = LineBundle(ambient, _full_degrees(ambient, L_deg, 0))
    job.M = LineBundle(ambient, _full_degrees(ambient, M_deg, 0))
    job.d, job.e = d, e

    sections_echo = {}
    raw_sections = config.get("sections") or {}
    _expect(isinstance(raw_sections, dict), "sections: expected an object")
    t = ambient.distinguished
    if need_sections:
        job.F = _build_F(job, raw_sections)
        sections_echo["f"] = [
            str(job.F.coeff_of(t, (i, d - i))) for i in range(d + 1)
        ]
        if need_q or "q" in raw_sections:
            job.q = _build_q(job, raw_sections, required=need_q)
            if job.q is not None:
                sections_echo["q"] = [str(c) for c in job.q.coefficients]

    job.echo["ambient"] = {
        "factors": [
            {"dim": dim, "vars": list(names)} for dim, names in ambient.factors
        ],
        "distinguished": ambient.distinguished,
    }
    job.echo["bundles"] = {"L": L_deg, "M": M_deg, "d": d, "e": e}
    if sections_echo:
        job.echo["sections"] = sections_echo
    job.echo["options"] = options
    return job


def _build_F(job: Job, sections) -> MultiPoly:
    ambient, d = job.ambient, job.d
    t = ambient.distinguished
    degrees = job.L.twist(d).degrees
    raw_F = sections.get("F")
    raw_f = sections.get("f")
    _expect(not (raw_F and raw_f), "sections: give F or f, not both")
    _expect(raw_F is not None or raw_f is not None,
            "sections: F (string or 'random') or f (coefficient list) required")
    try:
        if raw_F == "random":
            _expect(job.seed is not None, "sections.F = random requires options.seed")
            return random_section(ambient, degrees, random.Random(job.seed))
        if isinstance(raw_F, str):
            return parse(raw_F, ambient, degrees)
        _expect(isinstance(raw_f, list) and len(raw_f) == d + 1,
                f"sections.f: expected {d + 1} coefficient strings")
        base_degrees = job.L.degrees
        lo = ambient.var_offsets()[t]
        total = MultiPoly.zero(ambient, degrees)
        for i, text in enumerate(raw_f):
            _expect(isinstance(text, str), "sections.f[]: expected strings")
            f_i = parse(text, ambient, base_degrees)
            exps = [0] * ambient.num_vars
            exps[lo] = i
            exps[lo + 1] = d - i
            total = total + f_i * MultiPoly.monomial(ambient, exps)
        return total
    except (ParseError, GciError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"sections: {exc}") from None


def _build_q(job: Job, sections, required: bool) -> CechClass | None:
    raw_q = sections.get("q")
    if raw_q is None:
        _expect(not required, "sections.q: required for this command")
        return None
    width = job.d + job.e - 1
    _expect(isinstance(raw_q, list) and len(raw_q) == width,
            f"sections.q: expected {width} coefficient strings")
    degrees = job.L.dual().tensor(job.M).degrees
    try:
        coeffs = tuple(
            parse(text, job.ambient, degrees) for text in raw_q
        )
        return CechClass(coeffs, job.d, job.e, job.ambient.distinguished)
    except (ParseError, GciError) as exc:
        raise ConfigError(f"sections.q: {exc}") from None


# -- command payloads ----------------------------------------------------


def _bundle_row(ambient, label, degrees):
    dims = cohomology_dims(LineBundle(ambient, tuple(degrees)))
    return {
        "label": label,
        "degrees": list(degrees),
        "dims": list(dims),
    }


def payload_cohomology(job: Job) -> dict:
    L, M, d, e = job.L, job.M, job.d, job.e
    diff = L.dual().tensor(M)
    rows = [
        _bundle_row(job.ambient, "L[d]", L.twist(d).degrees),
        _bundle_row(job.ambient, "M[-e]", M.twist(-e).degrees),
        _bundle_row(job.ambient, "(L^-1*M)[-d-e]", diff.twist(-d - e).degrees),
        _bundle_row(job.ambient, "M[d-1]", M.twist(d - 1).degrees),
        _bundle_row(job.ambient, "(L^-1*M)[d+e-2]", diff.twist(d + e - 2).degrees),
    ]
    for degrees in job.options.get("extra_bundles", []):
        _expect(len(degrees) == job.ambient.num_factors,
                "options.extra_bundles[]: wrong number of degrees")
        rows.append(_bundle_row(job.ambient, "extra", degrees))
    return {"ambient": job.ambient.describe(), "bundles": rows}


def payload_kernel(job: Job) -> dict:
    mm = assemble_mult_map(job.F, job.L, job.M, job.d, job.e)
    kernel = kernel_basis(mm)
    rank = matrix_rank(mm.matrix)
    return {
        "source": {
            "degrees": list(mm.source.bundle.degrees),
            "dim": mm.source.dimension,
            "basis": [str(b) for b in mm.source.basis],
        },
        "target": {
            "degrees": list(mm.target.bundle.degrees),
            "dim": mm.target.dimension,
            "basis": [str(b) for b in mm.target.basis],
        },
        "matrix": [list(row) for row in mm.matrix],
        "rank": rank,
        "kernel_dim": kernel.dimension,
        "cokernel_dim": cokernel_dim(mm),
        "kernel_vectors": [list(v) for v in kernel.vectors],
    }


def payload_equations(job: Job) -> dict:
    system = emit_equations(job.F, job.q)
    return {
        "F": str(system.F),
        "G": str(system.G),
        "H": str(system.H),
        "A": str(system.A),
        "degrees": {
            "F": list(system.F.degrees),
            "G": list(system.G.degrees),
            "H": list(system.H.degrees),
            "A": list(system.A.degrees),
        },
        "middle_width": job.e - 1,
        "base_locus_bilinear": base_locus_membership(system),
        "syzygy": verify_syzygy(system),
    }


def payload_scan(job: Job) -> dict:
    target = job.options.get("scan_target", "system")
    if target == "system":
        _expect(job.q is not None, "sections.q: required to scan the full system")
        system = emit_equations(job.F, job.q)
        equations = list(system.equations())
        labels = ["F", "G", "H"]
        default_codim = 2
    else:
        equations = [job.F]
        labels = ["F"]
        default_codim = 1
    codim = job.options.get("expected_codim", default_codim)
    primes = job.options.get("primes")
    _expect(primes, "options.primes: required for scan")
    budget = job.options.get("budget", 10_000_000)
    scans = []
    for p in primes:
        report = singular_scan_mod_p(equations, job.ambient, p, codim, budget)
        scans.append({
            "prime": report.prime,
            "expected_codim": report.expected_codim,
            "total_points": report.total_points,
            "zero_count": report.zero_count,
            "flagged_count": len(report.flagged),
            "flagged": [[list(chunk) for chunk in pt] for pt in report.flagged],
        })
    return {"equations": labels, "scans": scans}


def payload_moduli(job: Job) -> dict:
    mm = assemble_mult_map(job.F, job.L, job.M, job.d, job.e)
    h0_tau = kernel_basis(mm).dimension
    count = moduli_parameter_count(job.ambient, job.L, job.d, job.M, job.e, h0_tau)
    return {
        "h0_hypersurface": count.h0_hypersurface,
        "group_dim": count.group_dim,
        "trivial_dim": count.trivial_dim,
        "params_hypersurface": count.params_hypersurface,
        "h0_section": count.h0_section,
        "params_section": count.params_section,
        "total": count.total,
        "breakdown": list(count.breakdown()),
    }


def payload_quotient(job: Job) -> dict:
    hodge = job.options.get("hodge")
    _expect(hodge is not None, "options.hodge: required for quotient")
    report = quotient_hodge(hodge["h2"], hodge["h3"], hodge["genera"])
    return {
        "h2_input": report.h2_input,
        "h3_input": report.h3_input,
        "genera": list(report.genera),
        "h2_blowup": report.h2_blowup,
        "h3_blowup": report.h3_blowup,
        "chi_fixed": report.chi_fixed,
        "trace_h3": report.trace_h3,
        "h3_plus": report.h3_plus,
        "h3_minus": report.h3_minus,
        "h2_quotient": report.h2_quotient,
        "h3_quotient": report.h3_quotient,
        "h21_quotient": report.h21_quotient,
        "assumptions": list(report.assumptions),
        "notes": list(report.notes),
    }


def _product_factor_split(job: Job):
    """Base factors on which L is trivial: the hypersurface is a product
    across them, so the kernel factors accordingly."""
    trivial = [
        i for i in job.ambient.q_factor_indices()
        if job.L.degrees[i] == 0 and job.M.degrees[i] >= 0
    ]
    return trivial


def payload_product_kernel(job: Job) -> dict:
    """Kernel of the induced map on the non-trivial block of a product
    hypersurface, with the multiplicity contributed by the trivial
    factors."""
    trivial = _product_factor_split(job)
    if not trivial:
        return {}
    inner_F = job.F
    for i in sorted(trivial, reverse=True):
        inner_F = inner_F.drop_factor(i)
    keep = [i for i in range(job.ambient.num_factors) if i not in trivial]
    inner_ambient = inner_F.ambient
    inner_L = LineBundle(inner_ambient, tuple(job.L.degrees[i] for i in keep))
    inner_M = LineBundle(inner_ambient, tuple(job.M.degrees[i] for i in keep))
    mm = assemble_mult_map(inner_F, inner_L, inner_M, job.d, job.e)
    inner_kernel = kernel_basis(mm).dimension
    multiplicity = 1
    for i in trivial:
        multiplicity *= cohomology_dims(
            LineBundle(job.ambient, tuple(
                job.M.degrees[j] if j == i else 0
                for j in range(job.ambient.num_factors)
            ))
        )[0]
    return {
        "trivial_factors": trivial,
        "inner_ambient": inner_ambient.describe(),
        "inner_source_dim": mm.source.dimension,
        "inner_target_dim": mm.target.dimension,
        "inner_kernel_dim": inner_kernel,
        "section_multiplicity": multiplicity,
        "product_kernel_dim": multiplicity * inner_kernel,
        "note": "every restricted section is a product, so its zero locus "
                "is reducible whenever the multiplicity exceeds 1",
    }


def payload_example(name: str, seed_override=None) -> tuple[dict, Job]:
    config = example_config(name)
    if seed_override is not None:
        config.setdefault("options", {})["seed"] = seed_override
    has_q = "q" in (config.get("sections") or {})
    job = build_job(config, need_sections=True, need_q=False)
    pipeline = {"cohomology": payload_cohomology(job),
                "kernel": payload_kernel(job)}
    product = payload_product_kernel(job)
    if product:
        pipeline["product_structure"] = product
    if job.options.get("hodge"):
        pipeline["moduli"] = payload_moduli(job)
        pipeline["quotient"] = payload_quotient(job)
    if has_q:
        pipeline["equations"] = payload_equations(job)
    return {"example": name, "pipeline": pipeline}, job


# -- rendering -----------------------------------------------------------


def render_json(report: dict) -> str:
    return json.dumps(jsonable(report), indent=2, sort_keys=False) + "\n"


def _text_lines(value, indent, out):
    pad = "  " * indent
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item and not _is_flat_list(item):
                out.append(f"{pad}{key}:")
                _text_lines(item, indent + 1, out)
            else:
                out.append(f"{pad}{key}: {_inline(item)}")
    elif isinstance(value, list):
        for i, item in enumerate(value):
            if isinstance(item, (dict, list)) and item and not _is_flat_list(item):
                out.append(f"{pad}[{i}]")
                _text_lines(item, indent + 1, out)
            else:
                out.append(f"{pad}[{i}] {_inline(item)}")
    else:
        out.append(f"{pad}{_inline(value)}")


def _is_flat_list(value):
    return isinstance(value, list) and all(
        not isinstance(v, (dict, list)) for v in value
    )


def _inline(value):
    if isinstance(value, list):
        return "[" + ", ".join(_inline(v) for v in value) + "]"
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}: {_inline(v)}" for k, v in value.items()) + "}"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def render_text(report: dict) -> str:
    lines = [
        f"gci {report['tool']['version']} report",
        f"command: {report['command']}",
        f"schema: {report['schema_version']}",
    ]
    if "seed" in report:
        lines.append(f"seed: {report['seed']} ({report['prng']})")
    lines.append("config: " + json.dumps(jsonable(report["config"]),
                                         sort_keys=False, separators=(",", ":")))
    lines.append("payload:")
    _text_lines(jsonable(report["payload"]), 1, lines)
    return "\n".join(lines) + "\n"


def assemble_report(command: str, job: Job, payload: dict) -> dict:
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "gci", "version": __version__},
        "command": command,
    }
    if job.seed is not None:
        report["seed"] = job.seed
        report["prng"] = PRNG_ID
    report["config"] = job.echo
    report["payload"] = payload
    return report


# -- argument handling ---------------------------------------------------


_NEEDS = {
    "cohomology": dict(need_sections=False),
    "kernel": dict(need_sections=True),
    "equations": dict(need_sections=True, need_q=True),
    "scan": dict(need_sections=True),
    "moduli": dict(need_sections=True),
    "quotient": dict(need_bundles=False),
}


def _load_config(args) -> dict:
    if getattr(args, "example", None):
        return example_config(args.example)
    if args.config:
        try:
            with open(args.config, "r", encoding="utf-8") as handle:
                return json.load(handle)
        except OSError as exc:
            raise ConfigError(f"cannot read config: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config is not valid JSON: {exc}") from None
    raise ConfigError("a configuration is required (--config FILE or --example NAME)")


def _apply_overrides(config: dict, args) -> dict:
    if not isinstance(config, dict):
        raise ConfigError("config: expected a JSON object")
    options = config.setdefault("options", {})
    if not isinstance(options, dict):
        raise ConfigError("options: expected an object")
    if args.seed is not None:
        options["seed"] = args.seed
    if args.prime:
        options["primes"] = list(args.prime)
    return config


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gci",
        description="Construct and verify chart-split codimension two "
                    "subvarieties of products of projective spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_source=True):
        if with_source:
            p.add_argument("--config", help="job configuration JSON file")
            p.add_argument("--example", choices=example_names(),
                           help="use an embedded example configuration")
        p.add_argument("--seed", type=int, help="override options.seed")
        p.add_argument("--prime", type=int, action="append",
                       help="override options.primes (repeatable)")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--out", help="write the report to a file")

    for name in ("cohomology", "kernel", "equations", "scan", "moduli", "quotient"):
        add_common(sub.add_parser(name))
    example = sub.add_parser("example", help="run an embedded example end to end")
    example.add_argument("name", help="example name")
    add_common(example, with_source=False)
    return parser


def run(args) -> str:
    if args.command == "example":
        payload, job = payload_example(args.name, args.seed)
        report = assemble_report("example", job, payload)
    else:
        config = _apply_overrides(_load_config(args), args)
        job = build_job(config, **_NEEDS[args.command])
        handler = {
            "cohomology": payload_cohomology,
            "kernel": payload_kernel,
            "equations": payload_equations,
            "scan": payload_scan,
            "moduli": payload_moduli,
            "quotient": payload_quotient,
        }[args.command]
        report = assemble_report(args.command, job, handler(job))
    if args.format == "json":
        return render_json(report)
    return render_text(report)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = run(args)
    except ConfigError as exc:
        print(f"gci: configuration error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(f"gci: budget exceeded: {exc}", file=sys.stderr)
        return 3
    except GciError as exc:
        print(f"gci: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
