"""Command-line interface.

Subcommands: validate, info, nerve, zeta, euler, cover check,
cover verify, filtered chi, example. Category arguments are file paths
('-' for standard input), so builders can be piped into computations:

    catcover example gamma | catcover zeta - --series 8 --closed-form

Exit codes: 0 on success, 1 on a mathematical refusal (not a covering, a
characteristic that does not exist, a non-rational spectrum), 2 on input
or usage errors. ``--json`` switches any subcommand to a deterministic,
schema-versioned report on stdout. Exact rationals are printed as
fractions; ``--decimal`` adds approximate values for human output only.
Set CATCOVER_COLOR=1 to colorize pass/fail markers (styling only).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import builders, catfile
from .category import FiniteCategory, is_acyclic, is_connected, is_discrete, is_groupoid, is_poset
from .covering import check_covering, verify_nerve_factorization
from .errors import CatcoverError, InputError, MathRefusal
from .filtered import Filtration, LevelCategory, LevelCovering, chi_fil
from .nerve import DEGENERATE, NONDEGENERATE, nerve_count_sequence
from .report import Check, Report, jsonable
from .zeta import (
    NonRationalSpectrumError,
    euler_rational_function,
    series_euler_characteristic,
    verify_chi_product,
    verify_zeta_power,
    zeta_closed_form,
    zeta_series,
)

EXIT_OK = 0
EXIT_REFUSAL = 1
EXIT_INPUT = 2


def _color_enabled() -> bool:
    value = os.environ.get("CATCOVER_COLOR", "")
    return value not in ("", "0", "never", "false")


def _mark(passed: bool) -> str:
    word = "PASS" if passed else "FAIL"
    if _color_enabled():
        code = "32" if passed else "31"
        return f"\x1b[{code}m{word}\x1b[0m"
    return word


def _fmt_value(value, decimal: bool = False) -> str:
    if isinstance(value, Fraction):
        text = str(value)
        if decimal and value.denominator != 1:
            text += f" (~{float(value):.6g})"
        return text
    return str(value)


class _Run:
    """Collects inputs and checks for one invocation, for --json output."""

    def __init__(self, args: argparse.Namespace):
        self.args = args
        self.report = Report(command=[a for a in sys.argv[1:]] or [args.command])
        self.json_mode = getattr(args, "json", False)

    def add_input(self, label: str, text: str) -> None:
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        self.report.inputs[label] = digest

    def say(self, line: str = "") -> None:
        if not self.json_mode:
            print(line)

    def finish(self, status: str, data: dict | None = None, checks: list[Check] | None = None) -> int:
        self.report.status = status
        if data:
            self.report.data.update(data)
        if checks:
            self.report.results.extend(checks)
        if self.json_mode:
            sys.stdout.write(self.report.to_json())
        return {"pass": EXIT_OK, "refusal": EXIT_REFUSAL, "error": EXIT_INPUT}[status]


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load_category(run: _Run, path: str) -> tuple[FiniteCategory, Filtration | None]:
    text = _read_text(path)
    run.add_input(path if path != "-" else "<stdin>", text)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise catfile.FormatError(f"not valid JSON: {exc}") from None
    return catfile.parse_category_dict(data)


def _load_bundle(run: _Run, args: argparse.Namespace) -> builders.CoveringBundle:
    """A covering bundle from --example or from file paths."""
    if args.example:
        built = builders.build_example(builders.parse_example_spec(args.example))
        if isinstance(built, LevelCovering):
            level = args.level if args.level is not None else 8
            built = builders.CoveringBundle(
                f"{args.example}@{level}",
                built.total.truncate(level).category,
                built.base.truncate(level).category,
                built.functor_at(level),
            )
        if not isinstance(built, builders.CoveringBundle):
            raise InputError(f"example {args.example!r} is a single category, not a covering")
        run.add_input(f"example:{args.example}", catfile.write_category(built.total))
        return built
    if not args.files:
        raise InputError("give a functor file (plus optional category files) or --example NAME")
    if len(args.files) == 1:
        functor_path = args.files[0]
        run.add_input(functor_path, _read_text(functor_path))
        functor = catfile.read_functor(functor_path)
    elif len(args.files) == 3:
        total, _ = _load_category(run, args.files[0])
        base, _ = _load_category(run, args.files[1])
        run.add_input(args.files[2], _read_text(args.files[2]))
        functor = catfile.read_functor(args.files[2], total=total, base=base)
    else:
        raise InputError("expected either P.fun or E.cat B.cat P.fun")
    return builders.CoveringBundle("from-files", functor.source, functor.target, functor)


# -- subcommands -------------------------------------------------------------


def cmd_validate(args: argparse.Namespace) -> int:
    run = _Run(args)
    cat, filtration = _load_category(run, args.category)
    run.say(f"valid: {len(cat.objects)} objects, {len(cat.morphisms)} morphisms")
    if filtration is not None:
        run.say(f"filtration present, max level {filtration.max_level()}")
    checks = [Check("valid-category", True, observed={"objects": len(cat.objects), "morphisms": len(cat.morphisms)})]
    return run.finish("pass", {"objects": len(cat.objects), "morphisms": len(cat.morphisms)}, checks)


def cmd_info(args: argparse.Namespace) -> int:
    run = _Run(args)
    cat, filtration = _load_category(run, args.category)
    props = {
        "objects": len(cat.objects),
        "morphisms": len(cat.morphisms),
        "connected": is_connected(cat),
        "acyclic": is_acyclic(cat),
        "groupoid": is_groupoid(cat),
        "discrete": is_discrete(cat),
        "poset": is_poset(cat),
        "filtered": filtration is not None,
    }
    for key, value in props.items():
        run.say(f"{key}: {value}")
    return run.finish("pass", props)


def cmd_nerve(args: argparse.Namespace) -> int:
    run = _Run(args)
    cat, _ = _load_category(run, args.category)
    deg = nerve_count_sequence(cat, args.max_n, DEGENERATE)
    nondeg = nerve_count_sequence(cat, args.max_n, NONDEGENERATE)
    width = max(len(str(deg[-1])), len("nondegenerate"))
    run.say(f"{'n':>4}  {'degenerate':>{width}}  {'nondegenerate':>{width}}")
    for n in range(args.max_n + 1):
        run.say(f"{n:>4}  {deg[n]:>{width}}  {nondeg[n]:>{width}}")
    rows = [{"n": n, "degenerate": deg[n], "nondegenerate": nondeg[n]} for n in range(args.max_n + 1)]
    return run.finish("pass", {"counts": rows})


def cmd_zeta(args: argparse.Namespace) -> int:
    run = _Run(args)
    cat, _ = _load_category(run, args.category)
    series = zeta_series(cat, args.series)
    run.say("zeta series coefficients (z^0 ..):")
    run.say("  " + ", ".join(_fmt_value(c, args.decimal) for c in series.coefficients))
    data: dict = {"series": list(series.coefficients), "order": args.series}
    if args.closed_form:
        try:
            form = zeta_closed_form(cat)
        except NonRationalSpectrumError as exc:
            run.say("closed form refused: denominator does not split over the rationals")
            run.say("series remains valid; remainder factor degree " + str(exc.remainder.degree))
            data["refusal"] = "non-rational-spectrum"
            return run.finish("refusal", data)
        run.say(f"closed form: {form.format()}")
        data["closed_form"] = {
            "display": form.format(),
            "poles": [
                {"value": p.value, "multiplicity": p.multiplicity, "weights": list(p.weights)}
                for p in form.poles
            ],
            "exp_poly": form.exp_poly,
            "splits": form.splits,
        }
    return run.finish("pass", data)


def cmd_euler(args: argparse.Namespace) -> int:
    run = _Run(args)
    cat, _ = _load_category(run, args.category)
    ratfun = euler_rational_function(cat)
    chi = series_euler_characteristic(cat)
    run.say(f"count series (t): {ratfun.format('t')}")
    data: dict = {"rational_function": ratfun}
    if chi is None:
        run.say("series Euler characteristic does not exist: pole at t = -1")
        data["chi"] = None
        data["refusal"] = "pole-at-minus-one"
        return run.finish("refusal", data)
    run.say(f"series Euler characteristic: {_fmt_value(chi, args.decimal)}")
    data["chi"] = chi
    return run.finish("pass", data)


def cmd_cover_check(args: argparse.Namespace) -> int:
    run = _Run(args)
    bundle = _load_bundle(run, args)
    certificate = bundle.certify()
    run.say(f"covering verified: sheets = {certificate.sheets}")
    run.say("fibers:")
    for b, fib in certificate.fibers.items():
        run.say(f"  {b}: {{{', '.join(fib)}}}")
    data = {
        "sheets": certificate.sheets,
        "fibers": {b: list(f) for b, f in certificate.fibers.items()},
    }
    checks = [Check("covering", True, observed={"sheets": certificate.sheets})]
    return run.finish("pass", data, checks)


def cmd_cover_verify(args: argparse.Namespace) -> int:
    run = _Run(args)
    bundle = _load_bundle(run, args)
    certificate = bundle.certify()
    nerve_report = verify_nerve_factorization(certificate, args.max_n)
    zeta_report = verify_zeta_power(certificate, args.max_n)
    chi_report = verify_chi_product(certificate)
    run.say(f"sheets: {certificate.sheets}")
    run.say(f"{_mark(nerve_report.passed)} chain-count factorization through n = {args.max_n}")
    run.say(f"{_mark(zeta_report.passed)} zeta power identity through order {args.max_n}")
    run.say(f"{_mark(chi_report.passed)} Euler characteristic product identity")
    for check in (*nerve_report.failures(), *(c for c in zeta_report.checks if not c.passed)):
        run.say(f"  mismatch {check.name}: observed {check.observed}, expected {check.expected}")
    all_passed = nerve_report.passed and zeta_report.passed and chi_report.passed
    checks = list(nerve_report.checks) + list(zeta_report.checks) + list(chi_report.checks)
    data = {
        "sheets": certificate.sheets,
        "chi": {
            "total": chi_report.chi_total,
            "base": chi_report.chi_base,
            "fiber": chi_report.chi_fiber,
        },
    }
    return run.finish("pass" if all_passed else "refusal", data, checks)


def cmd_filtered_chi(args: argparse.Namespace) -> int:
    run = _Run(args)
    source: LevelCategory | Filtration
    if args.example:
        built = builders.build_example(builders.parse_example_spec(args.example))
        if isinstance(built, LevelCovering):
            source = built.total
        elif isinstance(built, LevelCategory):
            source = built
        else:
            raise InputError(f"example {args.example!r} is not level-generated; pass a filtered category file")
        run.add_input(f"example:{args.example}", built.name if hasattr(built, "name") else args.example)
    else:
        if not args.category:
            raise InputError("give a filtered category file or --example NAME")
        cat, filtration = _load_category(run, args.category)
        if filtration is None:
            raise InputError("the category file carries no filtration map")
        source = filtration
    result = chi_fil(source, max_level=args.levels, guard=args.guard)
    run.say(f"coefficients c_0..c_{args.levels}:")
    run.say("  " + ", ".join(str(v) for v in result.coefficients.values))
    data: dict = {
        "coefficients": list(result.coefficients.values),
        "levels": args.levels,
        "guard": args.guard,
    }
    if result.closed_form is not None:
        run.say(f"detected rational form: {result.closed_form.format('t')}")
        data["closed_form"] = result.closed_form
    if result.value is None:
        run.say(f"filtered Euler characteristic refused: {result.reason}")
        data["chi"] = None
        data["refusal"] = result.reason
        return run.finish("refusal", data)
    run.say(f"filtered Euler characteristic: {_fmt_value(result.value, args.decimal)}")
    data["chi"] = result.value
    return run.finish("pass", data)


def cmd_example(args: argparse.Namespace) -> int:
    run = _Run(args)
    spec = builders.parse_example_spec(args.name)
    if args.param is not None:
        param_name = {"example42": "n", "discrete": "k", "cyclic-group": "m"}.get(spec.name)
        if param_name is None:
            raise InputError(f"example {spec.name!r} takes no parameter")
        spec = builders.ExampleSpec(spec.name, {param_name: args.param})
    built = builders.build_example(spec)

    if isinstance(built, (LevelCategory, LevelCovering)):
        level = args.level if args.level is not None else 8
        if isinstance(built, LevelCovering):
            functor = built.functor_at(level)
            total_f = built.total.truncate(level)
            base_f = built.base.truncate(level)
            bundle = builders.CoveringBundle(f"{spec.name}@{level}", total_f.category, base_f.category, functor)
            filtrations = {"total": total_f, "base": base_f}
        else:
            trunc = built.truncate(level)
            return _emit_category(run, args, trunc.category, trunc)
        return _emit_bundle(run, args, bundle, filtrations)
    if isinstance(built, builders.CoveringBundle):
        return _emit_bundle(run, args, built, {})
    return _emit_category(run, args, built, None)


def _emit_category(run: _Run, args, cat: FiniteCategory, filtration: Filtration | None) -> int:
    text = catfile.write_category(cat, filtration=filtration)
    if args.out_dir:
        path = Path(args.out_dir) / f"{args.name.replace('(', '_').replace(')', '')}.cat.json"
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
        run.say(f"wrote {path}")
    elif not run.json_mode:
        sys.stdout.write(text)
    return run.finish("pass", {"category": json.loads(text)})


def _emit_bundle(run: _Run, args, bundle: builders.CoveringBundle, filtrations: dict) -> int:
    part = args.part
    if part in ("total", "base"):
        cat = bundle.total if part == "total" else bundle.base
        return _emit_category(run, args, cat, filtrations.get(part))
    total_name = "total.cat.json"
    base_name = "base.cat.json"
    functor_text = catfile.write_functor(bundle.functor, total_name, base_name)
    if part == "functor":
        if args.out_dir:
            path = Path(args.out_dir) / "functor.fun.json"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(functor_text, encoding="utf-8")
            run.say(f"wrote {path}")
        elif not run.json_mode:
            sys.stdout.write(functor_text)
        return run.finish("pass", {"functor": json.loads(functor_text)})
    # part == "bundle": write all three files
    if not args.out_dir:
        raise InputError("--part bundle needs --out-dir to write the three files")
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    (out / total_name).write_text(catfile.write_category(bundle.total, filtration=filtrations.get("total")), encoding="utf-8")
    (out / base_name).write_text(catfile.write_category(bundle.base, filtration=filtrations.get("base")), encoding="utf-8")
    (out / "functor.fun.json").write_text(functor_text, encoding="utf-8")
    run.say(f"wrote {out / total_name}, {out / base_name}, {out / 'functor.fun.json'}")
    return run.finish("pass", {"written": [total_name, base_name, "functor.fun.json"]})


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catcover",
        description="Exact computations with finite categories: coverings, nerves, zeta functions, Euler characteristics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--json", action="store_true", help="emit a structured report instead of text")

    p = sub.add_parser("validate", help="validate a category file")
    p.add_argument("category", help="category file path or - for stdin")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("info", help="counts and structural predicates")
    p.add_argument("category")
    common(p)
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("nerve", help="chain-count table")
    p.add_argument("category")
    p.add_argument("--max-n", type=int, default=8, dest="max_n")
    common(p)
    p.set_defaults(func=cmd_nerve)

    p = sub.add_parser("zeta", help="zeta series and optional closed form")
    p.add_argument("category")
    p.add_argument("--series", type=int, default=8, help="series truncation order")
    p.add_argument("--closed-form", action="store_true", dest="closed_form")
    p.add_argument("--decimal", action="store_true", help="add decimal approximations (display only)")
    common(p)
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("euler", help="series Euler characteristic")
    p.add_argument("category")
    p.add_argument("--decimal", action="store_true")
    common(p)
    p.set_defaults(func=cmd_euler)

    cover = sub.add_parser("cover", help="covering checks")
    cover_sub = cover.add_subparsers(dest="cover_command", required=True)
    for name, func, extra in (
        ("check", cmd_cover_check, False),
        ("verify", cmd_cover_verify, True),
    ):
        p = cover_sub.add_parser(name)
        p.add_argument("files", nargs="*", help="P.fun or E.cat B.cat P.fun")
        p.add_argument("--example", help="use a built-in covering example instead of files")
        p.add_argument("--level", type=int, default=None, help="truncation level for level-generated examples")
        if extra:
            p.add_argument("--max-n", type=int, default=8, dest="max_n")
        common(p)
        p.set_defaults(func=func)

    filtered = sub.add_parser("filtered", help="filtered Euler characteristic")
    filtered_sub = filtered.add_subparsers(dest="filtered_command", required=True)
    p = filtered_sub.add_parser("chi")
    p.add_argument("category", nargs="?", help="filtered category file (omit when using --example)")
    p.add_argument("--example", help="built-in level-generated example name")
    p.add_argument("--levels", type=int, default=24)
    p.add_argument("--guard", type=int, default=6)
    p.add_argument("--decimal", action="store_true")
    common(p)
    p.set_defaults(func=cmd_filtered_chi)

    p = sub.add_parser("example", help="emit a built-in example")
    p.add_argument("name", help=f"one of: {', '.join(builders.example_names())} (parameter in parentheses)")
    p.add_argument("--param", type=int, default=None, help="parameter value, alternative to name(value)")
    p.add_argument("--part", choices=("total", "base", "functor", "bundle"), default="total")
    p.add_argument("--level", type=int, default=None, help="truncation level for level-generated examples")
    p.add_argument("--out-dir", dest="out_dir", default=None)
    common(p)
    p.set_defaults(func=cmd_example)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MathRefusal as exc:
        print(f"refusal: {exc}", file=sys.stderr)
        return EXIT_REFUSAL
    except CatcoverError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        return EXIT_OK


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
