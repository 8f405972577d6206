"""Command-line front end.

    carlitz-forms expand --family petrov --q 3 --k 4 --n 1 --trunc 50 --json
    carlitz-forms hecke --q 3 --g T+1 --k 8 --n 1 --window 30
    carlitz-forms vadic converge --q 3 --v T --x 1 --y-digits 0,2,2,2,2,2,2,2
    carlitz-forms selfcheck

Every command builds one JSON document (``--json`` prints it as is, otherwise
it is pretty-printed as indented text).  Exit codes: 0 success, 1 usage or
parse error, 2 domain error, 3 precision error, 4 a check that ran but failed.
Default precisions can be overridden with the environment variables
CARLITZ_FORMS_TRUNC, CARLITZ_FORMS_VPREC (M), CARLITZ_FORMS_YPREC (T) and
CARLITZ_FORMS_ZPREC (precision of zeta values).
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .algebra import PolyA, make_ctx, ctx_for_q, require_prime
from .errors import CarlitzFormsError, DomainError, ParseError
from .serialize import SCHEMA, document, dumps, field_doc, parse_element, useries_doc, vseries_doc

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CHECK_FAILED = 4

_DEFAULTS = {"trunc": 50, "vprec": 32, "yprec": None, "zprec": 16}


def env_default(name: str):
    """Default precision, overridable by CARLITZ_FORMS_<NAME>."""
    raw = os.environ.get(f"CARLITZ_FORMS_{name.upper()}")
    if raw is None:
        return _DEFAULTS[name]
    try:
        value = int(raw)
    except ValueError:
        raise ParseError(f"CARLITZ_FORMS_{name.upper()} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ParseError(f"CARLITZ_FORMS_{name.upper()} must be positive")
    return value


class UsageError(CarlitzFormsError):
    exit_code = EXIT_USAGE


class _Parser(argparse.ArgumentParser):
    """argparse reports usage errors by raising, so ``run`` can return exit code 1."""

    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


@dataclass
class JobConfig:
    """Everything a command needs, validated before dispatch."""

    command: str
    ctx: object
    params: dict = field(default_factory=dict)
    json: bool = False
    output: str | None = None


# argument grammar


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _field_args(p):
    g = p.add_argument_group("field F_q")
    g.add_argument("--q", type=int, help="field size (a prime power, canonical modulus)")
    g.add_argument("--p", type=int, help="characteristic (with --m0, instead of --q)")
    g.add_argument("--m0", type=int, default=1, help="extension degree of F_q over F_p")
    g.add_argument("--modulus", type=_int_list, help="F_q modulus coefficients, ascending, monic")
    p.add_argument("--json", action="store_true", help="print the JSON document instead of text")
    p.add_argument("--output", "-o", help="write the document to this path")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="carlitz-forms", description="Exact u-expansions of Drinfeld modular forms.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("expand", help="u-expansion of a form given by an A-expansion")
    _field_args(p)
    p.add_argument("--family", required=True, choices=["petrov", "h", "delta", "eistail", "zeta"])
    p.add_argument("--k", type=int, help="weight (petrov, eistail, zeta)")
    p.add_argument("--n", type=int, help="Goss index (petrov)")
    p.add_argument("--trunc", type=int, help="compute modulo u^trunc")
    p.add_argument("--precision", type=int, help="zeta: precision in 1/theta")

    p = sub.add_parser("goss", help="Goss polynomials of a lattice")
    _field_args(p)
    p.add_argument("--lattice", default="carlitz", help="'carlitz' or 'torsion:<g>'")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--x-trunc", type=int, help="keep only X^0..X^(x_trunc-1)")

    p = sub.add_parser("usub", help="u_a = u(az) as a series in u")
    _field_args(p)
    p.add_argument("--a", required=True, help="nonzero polynomial in T")
    p.add_argument("--trunc", type=int)

    p = sub.add_parser("hecke", help="Hecke eigen check T_g f = g^n f for a Petrov form")
    _field_args(p)
    p.add_argument("--g", required=True, help="monic irreducible polynomial")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--window", type=int, help="number of output coefficients to check")
    p.add_argument("--series", action="store_true", help="include T_g f in the document")

    p = sub.add_parser("vadic", help="v-adic interpolation of Petrov sums")
    vsub = p.add_subparsers(dest="action", metavar="ACTION", parser_class=_Parser)
    vsub.required = True
    for name, text in (("interpolate", "fhat(s, n) mod p_v^M"), ("converge", "convergence along integer weights")):
        v = vsub.add_parser(name, help=text)
        _field_args(v)
        v.add_argument("--v", required=True, help="monic irreducible p_v")
        v.add_argument("--n", type=int, default=1)
        v.add_argument("--x", type=int, required=True, help="component in Z/(q^d - 1)")
        yg = v.add_mutually_exclusive_group(required=True)
        yg.add_argument("--y", type=int, help="p-adic component as an integer mod p^T")
        yg.add_argument("--y-digits", type=_int_list, help="base-p digits of y, lowest first")
        v.add_argument("--M", "--vprec", dest="M", type=int, help="residues modulo p_v^M")
        v.add_argument("--T", type=int, help="y is known modulo p^T")
        v.add_argument("--trunc", type=int)
        if name == "converge":
            v.add_argument("--steps", type=int, default=6)
            v.add_argument("--schedule", type=_int_list, help="p-adic precisions c_i, default 1..steps")

    p = sub.add_parser("decompose", help="split f_(k0, n) by divisibility by primes")
    _field_args(p)
    p.add_argument("--k0", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--v", action="append", required=True, help="a prime (repeatable)")
    p.add_argument("--trunc", type=int)
    p.add_argument("--series", action="store_true", help="include the parts in the document")

    p = sub.add_parser("selfcheck", help="run the acceptance checks")
    p.add_argument("--only", type=_int_list, help="comma-separated criterion numbers")
    p.add_argument("--json", action="store_true")
    p.add_argument("--output", "-o")
    return parser


# configuration


def _context(args):
    if getattr(args, "q", None) is not None:
        if args.p is not None:
            raise UsageError("give either --q or --p/--m0, not both")
        return ctx_for_q(args.q)
    if getattr(args, "p", None) is not None:
        modulus = tuple(args.modulus) if args.modulus else None
        return make_ctx(args.p, args.m0, modulus)
    if hasattr(args, "q"):
        raise UsageError("the field is required: give --q or --p")
    return None


def _positive(name, value):
    if value is not None and value < 1:
        raise DomainError(f"{name} must be positive, got {value}")
    return value


def _prime(ctx, text: str) -> PolyA:
    return require_prime(parse_element(ctx, text))


def configure(args) -> JobConfig:
    """Turn parsed arguments into a validated JobConfig."""
    ctx = _context(args)
    cfg = JobConfig(args.command, ctx, json=args.json, output=args.output)
    prm = cfg.params
    if args.command in ("expand", "usub", "decompose", "vadic"):
        prm["trunc"] = _positive("trunc", args.trunc) or env_default("trunc")
    if args.command == "expand":
        from .forms import admissibility_violation

        prm["family"] = args.family
        if args.family in ("petrov", "eistail", "zeta") and args.k is None:
            raise UsageError(f"--family {args.family} needs --k")
        if args.family == "petrov":
            if args.n is None:
                raise UsageError("--family petrov needs --n")
            why = admissibility_violation(args.k, args.n, ctx.q)
            if why is not None:
                raise DomainError(f"(k, n) = ({args.k}, {args.n}) is not admissible: {why}")
        prm["k"], prm["n"] = args.k, args.n
        prm["precision"] = _positive("precision", args.precision) or env_default("zprec")
    elif args.command == "goss":
        prm["n_max"] = _positive("n-max", args.n_max)
        prm["x_trunc"] = _positive("x-trunc", args.x_trunc)
        if args.lattice == "carlitz":
            prm["g"] = None
        elif args.lattice.startswith("torsion:"):
            prm["g"] = _prime(ctx, args.lattice.split(":", 1)[1])
        else:
            raise UsageError(f"unknown lattice {args.lattice!r}")
    elif args.command == "usub":
        a = parse_element(ctx, args.a)
        if a.is_zero():
            raise DomainError("a must be nonzero")
        prm["a"] = a
    elif args.command == "hecke":
        from .forms import _petrov_check

        prm["g"] = _prime(ctx, args.g)
        _petrov_check(ctx, args.k, args.n)
        prm["k"], prm["n"] = args.k, args.n
        prm["window"] = _positive("window", args.window) or env_default("trunc")
        prm["series"] = args.series
    elif args.command == "vadic":
        prm.update(_vadic_params(ctx, args))
    elif args.command == "decompose":
        from .forms import _petrov_check

        _petrov_check(ctx, args.k0, args.n)
        prm["primes"] = [_prime(ctx, t) for t in args.v]
        prm["k0"], prm["n"] = args.k0, args.n
        prm["series"] = args.series
    elif args.command == "selfcheck":
        prm["only"] = args.only
    return cfg


def _vadic_params(ctx, args) -> dict:
    from .vadic import VContext, weight

    v = _prime(ctx, args.v)
    M = _positive("M", args.M) or env_default("vprec")
    T = _positive("T", args.T) or env_default("yprec")
    if args.y_digits is not None:
        if any(not 0 <= d < ctx.p for d in args.y_digits):
            raise DomainError(f"y digits must lie in 0..{ctx.p - 1}")
        if T is None:
            T = len(args.y_digits)
        y = sum(d * ctx.p**i for i, d in enumerate(args.y_digits))
    else:
        y = args.y
    vctx = VContext(v, M, T)
    prm = {"action": args.action, "vctx": vctx, "s": weight(vctx, args.x, y), "n": _positive("n", args.n)}
    if args.action == "converge":
        prm["steps"] = _positive("steps", args.steps)
        prm["schedule"] = args.schedule
    return prm


# commands


def _expand(cfg: JobConfig) -> tuple[int, dict]:
    from . import forms

    ctx, prm = cfg.ctx, cfg.params
    fam, N = prm["family"], prm["trunc"]
    if fam == "zeta":
        z = forms.zeta_partial(ctx, prm["k"], prm["precision"])
        coeffs = [ctx.elem_str(z.coefficient(e)) for e in range(z.lead_exp, z.precision)]
        return EXIT_OK, document(
            "zeta", field=field_doc(ctx), k=prm["k"], lead_exp=z.lead_exp, precision=z.precision, coefficients=coeffs
        )
    if fam == "petrov":
        f, meta = forms.petrov_form(ctx, prm["k"], prm["n"], N)
        extra = {"family": "petrov", "k": prm["k"], "n": prm["n"], "form": meta.to_json()}
    elif fam == "h":
        f = forms.h_form(ctx, N)
        extra = {"family": "h", "form": forms.FormMeta(ctx.q + 1, 1 % (ctx.q - 1), True).to_json()}
    elif fam == "delta":
        f = forms.delta_form(ctx, N)
        extra = {"family": "delta", "form": forms.FormMeta(ctx.q**2 - 1, 0, True).to_json()}
    else:
        f = forms.eisenstein_tail(ctx, prm["k"], N)
        extra = {"family": "eistail", "k": prm["k"]}
    return EXIT_OK, useries_doc(f, **extra)


def _goss(cfg: JobConfig) -> tuple[int, dict]:
    from .carlitz import carlitz_exp, torsion_exp
    from .goss import _needed_index, goss_table

    ctx, prm = cfg.ctx, cfg.params
    if prm["g"] is None:
        lattice = carlitz_exp(ctx, _needed_index(ctx.q, prm["n_max"]))
    else:
        lattice = torsion_exp(prm["g"])
    table = goss_table(lattice, prm["n_max"], prm["x_trunc"])
    return EXIT_OK, document(
        "goss",
        field=field_doc(ctx),
        lattice=lattice.to_json(),
        n_max=prm["n_max"],
        x_trunc=prm["x_trunc"],
        polynomials=table.to_json(),
    )


def _usub(cfg: JobConfig) -> tuple[int, dict]:
    from .useries import u_sub_a

    a = cfg.params["a"]
    return EXIT_OK, useries_doc(u_sub_a(a, cfg.params["trunc"]), a=str(a))


def _hecke(cfg: JobConfig) -> tuple[int, dict]:
    from .forms import petrov_form
    from .hecke import HeckeCtx, eigen_check, hecke_T

    ctx, prm = cfg.ctx, cfg.params
    g, k, n, window = prm["g"], prm["k"], prm["n"], prm["window"]
    qd = ctx.q ** int(g.degree)
    N = (window - 1) * qd + 1  # the smallest input truncation giving `window` output terms
    f, _ = petrov_form(ctx, k, n, N)
    hctx = HeckeCtx(g, k, N)
    tf = hecke_T(hctx, f)
    report = eigen_check(f, hctx, g**n, computed=tf)
    doc = document("hecke-report", field=field_doc(ctx), k=k, n=n, input_trunc=N, report=report)
    if prm["series"]:
        doc["series"] = useries_doc(tf)
    return (EXIT_OK if report["pass"] else EXIT_CHECK_FAILED), doc


def _vadic(cfg: JobConfig) -> tuple[int, dict]:
    from .vadic import convergence_table, fhat

    ctx, prm = cfg.ctx, cfg.params
    vctx, s, n, N = prm["vctx"], prm["s"], prm["n"], prm["trunc"]
    if prm["action"] == "interpolate":
        series, meta = fhat(s, n, N, vctx)
        status = "modular" if meta.in_sv else "exploratory"
        return EXIT_OK, vseries_doc(series, s=s.to_json(), n=n, form=meta.to_json(), status=status)
    rows = convergence_table(s, n, prm["steps"], N, vctx, prm["schedule"])
    increasing = all(b.get("ord", -1) > a.get("ord", -1) for a, b in zip(rows, rows[1:]))
    return EXIT_OK, document(
        "convergence",
        field=field_doc(ctx),
        v=str(vctx.v),
        M=vctx.M,
        T=vctx.T,
        n=n,
        s=s.to_json(),
        trunc=N,
        rows=rows,
        strictly_increasing=increasing,
    )


def _decompose(cfg: JobConfig) -> tuple[int, dict]:
    from .hecke import decompose

    ctx, prm = cfg.ctx, cfg.params
    dec = decompose(ctx, prm["k0"], prm["n"], prm["primes"], prm["trunc"])
    checks = {"sum": dec.sum_check()}
    if dec.f1_closed is not None:
        checks["f1_closed_form"] = dec.closed_check()
    doc = document(
        "decomposition",
        field=field_doc(ctx),
        k0=prm["k0"],
        n=prm["n"],
        primes=[str(v) for v in prm["primes"]],
        trunc=prm["trunc"],
        checks=checks,
    )
    if prm["series"]:
        doc["parts"] = {
            "".join("1" if b else "0" for b in pat): useries_doc(s) for pat, s in sorted(dec.parts.items())
        }
    ok = all(c["pass"] for c in checks.values())
    return (EXIT_OK if ok else EXIT_CHECK_FAILED), doc


def _selfcheck(cfg: JobConfig) -> tuple[int, dict]:
    from .acceptance import run_criteria

    results = run_criteria(cfg.params["only"])
    for r in results:
        r.pop("seconds")  # keeps the document a function of the inputs
    ok = all(r["pass"] for r in results)
    return (EXIT_OK if ok else EXIT_CHECK_FAILED), document("selfcheck", results=results, all_pass=ok)


_COMMANDS = {
    "expand": _expand,
    "goss": _goss,
    "usub": _usub,
    "hecke": _hecke,
    "vadic": _vadic,
    "decompose": _decompose,
    "selfcheck": _selfcheck,
}


# output


def render_text(doc, indent: int = 0) -> str:
    """Indented text view of a JSON document."""
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for key in sorted(doc):
            val = doc[key]
            if isinstance(val, (dict, list)) and val:
                lines.append(f"{pad}{key}:")
                lines.append(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(val)}")
    elif isinstance(doc, list):
        for i, val in enumerate(doc):
            if isinstance(val, (dict, list)) and val:
                lines.append(f"{pad}[{i}]")
                lines.append(render_text(val, indent + 1))
            else:
                lines.append(f"{pad}[{i}] {_scalar(val)}")
    else:
        lines.append(f"{pad}{_scalar(doc)}")
    return "\n".join(lines)


def _scalar(val) -> str:
    if val is None:
        return "null"
    if isinstance(val, bool):
        return "true" if val else "false"
    if isinstance(val, (dict, list)):
        return "{}" if isinstance(val, dict) else "[]"
    return str(val)


def error_document(exc: Exception, code: int) -> dict:
    err = {"kind": type(exc).__name__, "message": str(exc), "exit_code": code}
    if isinstance(exc, ParseError) and exc.position is not None:
        err["position"] = exc.position
    return {"schema": SCHEMA, "type": "error", "error": err}


def run(argv=None) -> tuple[int, str]:
    """Run one command; returns (exit code, output text).  Never raises for bad input."""
    argv = list(sys.argv[1:] if argv is None else argv)
    want_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        cfg = configure(args)
        code, doc = _COMMANDS[cfg.command](cfg)
    except CarlitzFormsError as exc:
        code = exc.exit_code
        doc = error_document(exc, code)
        cfg = None
    text = dumps(doc) if want_json else render_text(doc)
    if cfg is not None and cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        text = f"wrote {cfg.output}"
    return code, text


def main(argv=None) -> int:
    try:
        code, text = run(argv)
    except SystemExit as exc:  # --help and --version
        return int(exc.code or 0)
    argv = sys.argv[1:] if argv is None else argv
    failed = code not in (EXIT_OK, EXIT_CHECK_FAILED)
    print(text, file=sys.stderr if failed and "--json" not in argv else sys.stdout)
    return code


def main_exit():
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
