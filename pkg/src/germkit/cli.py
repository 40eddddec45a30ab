"""Command-line front end.

Subcommands: gen (write monoid JSON for a symmetric monoid or the partial
translations of a coarse space), verify (run check suites over a monoid
file), export (write the germ groupoid as DOT or JSON).  Reports are plain
deterministic text; wall-clock timings only appear under --timings, in a
clearly separated trailing section, so default output is byte-identical
across runs.  Exit codes: 0 all checks pass, 1 verification failure,
2 size cap exceeded, 3 unreadable or malformed input.
"""

import argparse
import hashlib
import json
import os
import sys
import time

from germkit import __version__
from germkit.coarse import load_coarse_space, partial_translations
from germkit.germ import (
    build_germ_groupoid,
    groupoid_to_dot,
    groupoid_to_json,
    verify_ample_structure,
    verify_bisection_monoid,
    verify_epsilon_isomorphism,
    verify_germ_coherence,
    verify_intersection_lemma,
)
from germkit.inverse_core import (
    DEFAULT_ELEMENT_CAP,
    DEFAULT_UNIT_CAP,
    FiniteInverseMonoid,
    InputError,
    SizeCapError,
    StructureError,
    symmetric_inverse_monoid,
    verify_boolean_inverse_monoid,
)

ENV_ELEMENT_CAP = "GERMKIT_CAP_ELEMENTS"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_CAP = 2
EXIT_INPUT = 3


def _element_cap(args):
    if args.cap_elements is not None:
        return args.cap_elements
    env = os.environ.get(ENV_ELEMENT_CAP)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise InputError(
                f"{ENV_ELEMENT_CAP} must be an integer, got {env!r}"
            ) from exc
    return DEFAULT_ELEMENT_CAP


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _load_monoid(path, element_cap):
    data = _load_json(path)
    if isinstance(data, dict) and set(data) == {"points"}:
        if not isinstance(data["points"], int) or data["points"] < 1:
            raise InputError("points must be a positive integer")
        return symmetric_inverse_monoid(data["points"], element_cap=element_cap)
    return FiniteInverseMonoid.from_json(data, element_cap=element_cap)


def _write_text(path, text):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _digest(path):
    h = hashlib.sha256()
    try:
        with open(path, "rb") as fh:
            h.update(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    return h.hexdigest()


def cmd_gen(args):
    element_cap = _element_cap(args)
    if args.kind == "symmetric":
        try:
            n = int(args.source)
        except ValueError as exc:
            raise InputError(
                f"symmetric generator needs a point count, got {args.source!r}"
            ) from exc
        if n < 1:
            raise InputError("point count must be positive")
        monoid = symmetric_inverse_monoid(n, element_cap=element_cap)
    else:
        space = load_coarse_space(_load_json(args.source))
        monoid = partial_translations(space, element_cap=element_cap)
    _write_text(args.out, json.dumps(monoid.to_json(), separators=(",", ":")) + "\n")
    print(f"wrote {args.out}: {monoid.size} elements")
    return EXIT_PASS


def _run_suites(monoid, suite):
    reports = []
    timings = []

    def run(name, fn):
        start = time.perf_counter()
        rep = fn()
        timings.append((name, time.perf_counter() - start))
        reports.append(rep)
        return rep

    axioms = run("axioms", lambda: verify_boolean_inverse_monoid(monoid))
    if suite == "axioms":
        return reports, timings

    if not axioms.ok:
        # the lemma and round-trip layers presuppose the axioms
        return reports, timings

    start = time.perf_counter()
    G = build_germ_groupoid(monoid)
    timings.append(("groupoid construction", time.perf_counter() - start))

    if suite in ("lemmas", "all"):
        run("intersection lemmas",
            lambda: verify_intersection_lemma(monoid, G))
        run("ample structure", lambda: verify_ample_structure(monoid, G))
        run("germ coherence", lambda: verify_germ_coherence(monoid, G))
    if suite in ("roundtrip", "all"):
        run("round-trip", lambda: verify_epsilon_isomorphism(monoid, G))
        run("bisection monoid", lambda: verify_bisection_monoid(monoid, G))
    return reports, timings


def cmd_verify(args):
    element_cap = _element_cap(args)
    lines = [
        f"germkit {__version__}",
        f"input: {args.monoid} sha256={_digest(args.monoid)}",
        f"suite: {args.suite}",
    ]
    construction_error = None
    try:
        monoid = _load_monoid(args.monoid, element_cap)
    except StructureError as exc:
        construction_error = str(exc)
        monoid = None

    if monoid is None:
        lines.append(f"construction: FAILED -- {construction_error}")
        reports, timings = [], []
        ok = False
    else:
        lines.append(
            f"monoid: {monoid.size} elements,"
            f" zero {monoid.names[monoid.zero]}, one {monoid.names[monoid.one]}"
        )
        reports, timings = _run_suites(monoid, args.suite)
        ok = all(r.ok for r in reports)
        for rep in reports:
            lines.append("")
            lines.extend(rep.lines())

    lines.append("")
    lines.append(f"result: {'PASS' if ok else 'FAIL'}")
    if args.timings:
        lines.append("")
        lines.append("timings (excluded from determinism guarantees):")
        from germkit.kernels import BACKEND

        lines.append(f"  kernel backend: {BACKEND}")
        lines.extend(f"  {name}: {dt:.3f}s" for name, dt in timings)
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)

    if args.json_report:
        payload = {
            "version": __version__,
            "input": args.monoid,
            "sha256": _digest(args.monoid),
            "suite": args.suite,
            "ok": ok,
            "reports": [r.to_json() for r in reports],
        }
        if construction_error is not None:
            payload["construction_error"] = construction_error
        if args.timings:
            payload["timings"] = {name: dt for name, dt in timings}
        _write_text(args.json_report,
                    json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_export(args):
    element_cap = _element_cap(args)
    monoid = _load_monoid(args.monoid, element_cap)
    G = build_germ_groupoid(monoid)
    if args.unit_cap is not None and G.n_units > args.unit_cap:
        raise SizeCapError(
            f"{G.n_units} units exceeds the unit cap of {args.unit_cap}"
        )
    if args.format == "dot":
        _write_text(args.out, groupoid_to_dot(G))
    else:
        _write_text(
            args.out,
            json.dumps(groupoid_to_json(G), separators=(",", ":")) + "\n",
        )
    print(f"wrote {args.out}: {G.n_units} units, {G.n_arrows} arrows")
    return EXIT_PASS


def build_parser():
    parser = argparse.ArgumentParser(
        prog="germkit",
        description=(
            "Generate, verify and export finite Boolean inverse monoids"
            " and their germ groupoids."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="write a monoid as JSON")
    p_gen.add_argument("kind", choices=["symmetric", "coarse"])
    p_gen.add_argument(
        "source",
        help="point count (symmetric) or coarse-space JSON file (coarse)",
    )
    p_gen.add_argument("out")
    p_gen.add_argument("--cap-elements", type=int, default=None)
    p_gen.set_defaults(fn=cmd_gen)

    p_verify = sub.add_parser("verify", help="run verification suites")
    p_verify.add_argument("monoid")
    p_verify.add_argument(
        "--suite",
        choices=["axioms", "lemmas", "roundtrip", "all"],
        default="all",
    )
    p_verify.add_argument("--json-report", default=None)
    p_verify.add_argument("--timings", action="store_true")
    p_verify.add_argument("--cap-elements", type=int, default=None)
    p_verify.set_defaults(fn=cmd_verify)

    p_export = sub.add_parser("export", help="export the germ groupoid")
    p_export.add_argument("monoid")
    p_export.add_argument("out")
    p_export.add_argument("--format", choices=["dot", "json"], default="json")
    p_export.add_argument("--cap-elements", type=int, default=None)
    p_export.add_argument("--cap-units", dest="unit_cap", type=int,
                          default=DEFAULT_UNIT_CAP)
    p_export.set_defaults(fn=cmd_export)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SizeCapError as exc:
        print(f"size cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (InputError, StructureError) as exc:
        # a structure error on load means the file does not describe an
        # inverse monoid at all; verify handles that case itself, so any
        # StructureError reaching here is an input problem
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
