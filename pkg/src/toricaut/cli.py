"""``toricaut`` command line interface.

Exit status: 0 on success, 1 when an input fails validation, 2 on usage errors.
Reports go to stdout (JSON with ``--json``, aligned text otherwise) and
diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from fractions import Fraction
from pathlib import Path

from . import cox
from .automorphisms import (
    aut_report,
    demazure_crosscheck,
    enumerate_roots,
    moduli_dimension,
    split_roots_of_projectivization,
)
from .divisors import (
    EnumerationError,
    TorusInvariantDivisor,
    is_ample,
    is_cartier,
    monomials_of_degree,
    support_function,
)
from .fan import InvalidFanError, class_group, is_complete, is_smooth, require_valid, validate_fan
from .io import (
    FormatError,
    dumps,
    load_bundle,
    load_fan,
    load_polynomials,
    load_projectivized,
    projectivized_to_dict,
)
from .projectivization import projectivize


class ValidationFailure(Exception):
    """Input parsed but failed a check; maps to exit status 1."""


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _names(n: int, prefix: str = "x") -> list[str]:
    return [f"{prefix}{i + 1}" for i in range(n)]


def _mono(exps, names) -> str:
    return cox.GradedPolynomial.monomial(exps).format(names)


def cmd_validate(args) -> dict:
    fan = load_fan(args.fan)
    rep = validate_fan(fan)
    out = rep.to_dict()
    if rep.valid:
        smooth, witness = is_smooth(fan)
        out.update(complete=is_complete(fan), smooth=smooth, singular_cone=witness)
    else:
        out["_exit"] = 1
    return out


def cmd_classgroup(args) -> dict:
    fan = load_fan(args.fan)
    g = class_group(fan)
    names = _names(fan.n_rays)
    return {
        "class_group": g.class_group.describe(),
        "free_rank": g.class_group.free_rank,
        "torsion": list(g.class_group.torsion),
        "variable_degrees": {n: list(d) for n, d in zip(names, g.variable_degrees)},
    }


def cmd_sections(args) -> dict:
    fan = load_fan(args.fan)
    g = class_group(fan)
    alpha = g.class_group.normalize(args.degree)
    mons = monomials_of_degree(g, alpha)
    names = _names(fan.n_rays)
    return {"degree": list(alpha), "count": len(mons), "monomials": [_mono(m, names) for m in mons]}


def cmd_ample(args) -> dict:
    fan = load_fan(args.fan)
    require_valid(fan, complete=True)
    if len(args.divisor) != fan.n_rays:
        raise ValidationFailure(f"--divisor has {len(args.divisor)} entries; the fan has {fan.n_rays} rays")
    D = TorusInvariantDivisor(args.divisor)
    g = class_group(fan, check=False)
    return {
        "divisor": list(D.coeffs),
        "class": list(g.degree(D.coeffs)),
        "cartier": is_cartier(fan, D),
        "ample": is_ample(fan, D),
        "support_function": support_function(fan, D).to_dict(),
    }


def cmd_projectivize(args) -> dict:
    fan = load_fan(args.fan)
    E = load_bundle(args.bundle, fan.n_rays)
    P = projectivize(fan, E)
    data = projectivized_to_dict(P)
    if args.output:
        Path(args.output).write_text(dumps(data), encoding="utf-8")
    names = P.variable_names()
    return {
        "fan": data,
        "output": args.output,
        "picard": P.picard.describe(),
        "degrees": {n: list(d) for n, d in zip(names, P.grading.variable_degrees)},
        "n_rays": P.fan.n_rays,
        "n_max_cones": len(P.fan.max_cones),
    }


def _roots_payload(g, names) -> list[dict]:
    return [
        {
            "variable": names[r.variable],
            "monomial": _mono(r.monomial, names),
            "kind": r.kind,
        }
        for r in enumerate_roots(g)
    ]


def cmd_roots(args) -> dict:
    fan = load_fan(args.fan)
    roots = _roots_payload(class_group(fan), _names(fan.n_rays))
    return {"count": len(roots), "roots": roots}


def cmd_aut_report(args) -> dict:
    fan = load_fan(args.fan)
    return aut_report(class_group(fan)).to_dict()


def cmd_split_roots(args) -> dict:
    P = load_projectivized(args.pfan)
    split = split_roots_of_projectivization(P)
    names = P.variable_names()
    out = split.to_dict()
    for key in ("base_roots", "fiber_roots"):
        out[key] = [
            {"variable": names[r["variable"]], "monomial": _mono(r["monomial"], names), "kind": r["kind"]}
            for r in out[key]
        ]
    return out


def _read_forms(P, path) -> list[cox.GradedPolynomial]:
    base_names = _names(P.l)
    forms = []
    for lineno, text in load_polynomials(path):
        try:
            forms.append(cox.parse_polynomial(text, base_names))
        except ValueError as exc:
            raise FormatError(f"{path}:{lineno}: {exc}") from exc
    return forms


def _cayley(P, forms):
    try:
        return cox.cayley_form(forms, P)
    except cox.DegreeError as exc:
        raise ValidationFailure(str(exc)) from exc


def cmd_cayley(args) -> dict:
    P = load_projectivized(args.pfan)
    forms = _read_forms(P, args.forms)
    cf = _cayley(P, forms)
    return {
        "cayley_form": cf.form.format(P.variable_names()),
        "degree": list(P.fiber_class()),
        "nondegenerate": cox.nondegenerate(P.alphas, P.base_grading),
        "coefficients": [f.format(_names(P.l)) for f in cf.coefficients],
    }


def cmd_cayley_act(args) -> dict:
    P = load_projectivized(args.pfan)
    forms = _read_forms(P, args.forms)
    cf = _cayley(P, forms)
    names = P.variable_names()
    var_text, sep, inc_text = args.root.partition(":")
    var_text = var_text.strip()
    if not sep or var_text not in names:
        raise ValidationFailure(f"--root must look like 'y1: x1^2*y2' with a variable among {', '.join(names)}")
    v = names.index(var_text)
    try:
        increment = cox.parse_polynomial(inc_text, names)
        tau = cox.GradedSubstitution.root(P.grading, v, increment, Fraction(args.t))
    except cox.DegreeError as exc:
        raise ValidationFailure(str(exc)) from exc
    except ValueError as exc:
        raise FormatError(f"--root: {exc}") from exc
    image = cox.apply_substitution(cf.form, tau)
    coeffs = cox.extract_coefficients(image, P)
    out = {
        "cayley_form": cf.form.format(names),
        "image": image.format(names),
        "coefficients": [g.format(_names(P.l)) for g in coeffs],
    }
    # fiber-shaped increment: y_t -> y_t + h(x) y_s
    fiber_parts = [e[P.l:] for e in increment.terms]
    if v >= P.l and fiber_parts and all(sum(ys) == 1 and ys[v - P.l] == 0 for ys in fiber_parts):
        slots = {ys.index(1) for ys in fiber_parts}
        if len(slots) == 1:
            s = slots.pop()
            t = v - P.l
            h = cox.GradedPolynomial(P.l, {e[: P.l]: c for e, c in increment.terms.items()}) * Fraction(args.t)
            expected = list(cf.coefficients)
            expected[s] = expected[s] + expected[t] * h
            out["fiber_root"] = {"t": t + 1, "s": s + 1}
            out["coefficient_law_holds"] = expected == coeffs
    return out


def cmd_moduli_dim(args) -> dict:
    fan = load_fan(args.fan)
    E = load_bundle(args.bundle, fan.n_rays)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = moduli_dimension(projectivize(fan, E))
    return rep.to_dict()


def cmd_demazure(args) -> dict:
    fan = load_fan(args.fan)
    try:
        chk = demazure_crosscheck(fan)
    except InvalidFanError:
        raise
    except ValueError as exc:  # singular fan
        raise ValidationFailure(str(exc)) from exc
    out = chk.to_dict()
    names = _names(fan.n_rays)
    for w in out["witness"]:
        w["variable"] = names[w["variable"]]
        w["monomial"] = _mono(w["monomial"], names)
    if not chk.match:
        out["_exit"] = 1
    return out


COMMANDS = {
    "validate": cmd_validate,
    "classgroup": cmd_classgroup,
    "sections": cmd_sections,
    "ample": cmd_ample,
    "projectivize": cmd_projectivize,
    "roots": cmd_roots,
    "aut-report": cmd_aut_report,
    "split-roots": cmd_split_roots,
    "cayley": cmd_cayley,
    "cayley-act": cmd_cayley_act,
    "moduli-dim": cmd_moduli_dim,
    "demazure-check": cmd_demazure,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="toricaut", description="Toric fans, Cox gradings and automorphism roots.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON instead of a table")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", parents=[common], help="check a fan file")
    sp.add_argument("fan")
    sp = sub.add_parser("classgroup", parents=[common], help="class group and variable degrees")
    sp.add_argument("fan")
    sp = sub.add_parser("sections", parents=[common], help="monomials of a given class")
    sp.add_argument("fan")
    sp.add_argument("--degree", type=_int_list, required=True)
    sp = sub.add_parser("ample", parents=[common], help="Cartier/ample test for a divisor")
    sp.add_argument("fan")
    sp.add_argument("--divisor", type=_int_list, required=True)
    sp = sub.add_parser("projectivize", parents=[common], help="fan of P(E)")
    sp.add_argument("fan")
    sp.add_argument("bundle")
    sp.add_argument("-o", "--output")
    sp = sub.add_parser("roots", parents=[common], help="roots of the graded automorphism group")
    sp.add_argument("fan")
    sp = sub.add_parser("aut-report", parents=[common], help="Levi factor and dimensions")
    sp.add_argument("fan")
    sp = sub.add_parser("split-roots", parents=[common], help="base/fiber split of the roots of P(E)")
    sp.add_argument("pfan")
    sp = sub.add_parser("cayley", parents=[common], help="assemble a Cayley form")
    sp.add_argument("pfan")
    sp.add_argument("--forms", required=True)
    sp = sub.add_parser("cayley-act", parents=[common], help="act on a Cayley form by a root")
    sp.add_argument("pfan")
    sp.add_argument("--forms", required=True)
    sp.add_argument("--root", required=True, help="'<variable>: <increment>' e.g. 'y1: x1^2*y2'")
    sp.add_argument("--t", default="1", help="rational parameter (default 1)")
    sp = sub.add_parser("moduli-dim", parents=[common], help="moduli dimension count for P(E)")
    sp.add_argument("fan")
    sp.add_argument("bundle")
    sp = sub.add_parser("demazure-check", parents=[common], help="compare roots with Demazure lattice pairs")
    sp.add_argument("fan")
    return p


def render_table(obj, indent: int = 0) -> str:
    pad = " " * indent
    lines = []
    if isinstance(obj, dict):
        keys = [k for k in sorted(obj) if not k.startswith("_")]
        width = max((len(str(k)) for k in keys), default=0)
        for k in keys:
            v = obj[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_table(v, indent + 2))
            else:
                lines.append(f"{pad}{str(k).ljust(width)}  {_scalar(v)}")
    elif isinstance(obj, list):
        if obj and all(isinstance(x, dict) for x in obj):
            cols = sorted({k for x in obj for k in x})
            rows = [[_scalar(x.get(c, "")) for c in cols] for x in obj]
            widths = [max(len(c), *(len(r[i]) for r in rows)) for i, c in enumerate(cols)]
            lines.append(pad + "  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
            for r in rows:
                lines.append(pad + "  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
        else:
            for x in obj:
                lines.append(f"{pad}{_scalar(x)}")
    else:
        lines.append(pad + _scalar(obj))
    return "\n".join(lines)


def _flat(v) -> bool:
    """Lists of scalars or of integer vectors print on one line."""
    if not isinstance(v, list):
        return False
    return all(
        not isinstance(x, dict) and not (isinstance(x, list) and any(isinstance(y, (list, dict)) for y in x))
        for x in v
    )


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    return str(v)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        result = COMMANDS[args.command](args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InvalidFanError, ValidationFailure, EnumerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    status = result.pop("_exit", 0)
    if args.json:
        sys.stdout.write(dumps(result))
    else:
        sys.stdout.write(render_table(result) + "\n")
    return status


if __name__ == "__main__":
    sys.exit(main())
