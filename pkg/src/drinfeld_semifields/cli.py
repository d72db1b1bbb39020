"""Command-line front end: construct, search-primes, verify, demo.

Field elements are polynomial expressions in ``a`` (the generator x of the
pinned modulus of the level the flag addresses) and ``w`` (the generator of
F_q over F_p).  Primes are polynomials in ``T``.  Exit codes: 0 success,
1 negative verdict or mismatch, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from importlib import resources
from pathlib import Path
from typing import Sequence

import sympy

from . import codes, constructions
from .algebra.apoly import APoly, ResidueField
from .algebra.fields import FieldError, FieldTower, prime_power
from .codes import EnumerationBudgetExceeded, RankMetricCode
from .constructions import HypothesisFailure

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_A, _W, _T, _TAU = sympy.symbols("a w T t")


class ConfigError(ValueError):
    pass


# ----------------------------------------------------------------------
# parsing


def _sympify(text: str, allowed: set) -> sympy.Expr:
    try:
        expr = sympy.sympify(text.replace("^", "**"),
                             locals={"a": _A, "w": _W, "T": _T, "t": _TAU})
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise ConfigError(f"cannot parse {text!r}: {exc}") from None
    extra = expr.free_symbols - allowed
    if extra:
        raise ConfigError(f"unexpected symbols {sorted(map(str, extra))} in {text!r}")
    return expr


def _eval_poly(F, expr: sympy.Expr, gens: dict) -> int:
    """Value in F of a polynomial expression with rational coefficients."""
    p = F.p
    syms = list(gens)
    try:
        P = sympy.Poly(expr, *syms) if syms else sympy.Poly(expr, _A)
    except sympy.PolynomialError as exc:
        raise ConfigError(f"not a polynomial expression: {expr}") from exc
    acc = 0
    for monom, coeff in P.terms():
        c = sympy.Rational(coeff)
        if c.q % p == 0:
            raise ConfigError(f"coefficient {c} is not defined modulo {p}")
        val = F.from_int(int(c.p) * pow(int(c.q), -1, p) % p)
        for s, e in zip(syms, monom):
            val = F.mul(val, F.pow(gens[s], e))
        acc = F.add(acc, val)
    return acc


def parse_element(text: str, tower: FieldTower, level: int) -> int:
    """An element of the given level from an expression in a and w (rational functions allowed)."""
    F = tower.level(level)
    w = tower.Fq.p if tower.m > 1 else 1
    gen_a = tower.q if level > 1 else tower.Fq.generator
    expr = _sympify(text, {_A, _W})
    num, den = sympy.fraction(sympy.together(expr))
    gens = {_A: gen_a, _W: tower.embed(w, 1, level)}
    n_val = _eval_poly(F, num, gens)
    d_val = _eval_poly(F, den, gens)
    if d_val == 0:
        raise ConfigError(f"{text!r} divides by zero")
    return F.div(n_val, d_val)


def parse_apoly(text: str, tower: FieldTower) -> APoly:
    """A polynomial in T with coefficients in F_q (expressions in w)."""
    expr = sympy.expand(_sympify(text, {_T, _W}))
    try:
        P = sympy.Poly(expr, _T)
    except sympy.PolynomialError as exc:
        raise ConfigError(f"not a polynomial in T: {text!r}") from exc
    Fq = tower.Fq
    w = tower.Fq.p if tower.m > 1 else 1
    coeffs = [0] * (P.degree() + 1) if not P.is_zero else []
    for (e,), c in P.terms():
        coeffs[e] = _eval_poly(Fq, sympy.sympify(c), {_W: w})
    return APoly(Fq, coeffs)


def parse_prime(text: str, tower: FieldTower) -> APoly:
    f = parse_apoly(text, tower)
    try:
        return constructions.as_prime(tower.Fq, f)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def parse_skew_coeffs(text: str, tower: FieldTower, level: int) -> dict[int, int]:
    """'c0 + c1*t + ...' (coefficients written to the left of powers of t) -> {power: value}."""
    expr = sympy.expand(_sympify(text, {_A, _W, _TAU}))
    try:
        P = sympy.Poly(expr, _TAU)
    except sympy.PolynomialError as exc:
        raise ConfigError(f"not a polynomial in t: {text!r}") from exc
    out = {}
    for (e,), c in P.terms():
        out[e] = parse_element(str(c), tower, level)
    return out


def parse_phi_general(text: str, tower: FieldTower, ell: int, s: int) -> list[int]:
    """Coefficients a_0..a_r (level s) from a comma list or an expression in t."""
    if "t" in text:
        terms = parse_skew_coeffs(text, tower, s)
        bad = [e for e in terms if e % ell]
        if bad:
            raise ConfigError(f"phi_T may only involve powers of t^{ell}; got t^{bad[0]}")
        r = max(terms) // ell
        return [terms.get(ell * i, 0) for i in range(r + 1)]
    parts = [x.strip() for x in text.split(",") if x.strip()]
    if not parts:
        raise ConfigError("empty phi specification")
    return [parse_element(x, tower, s) for x in parts]


# ----------------------------------------------------------------------
# output


def _dump(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=False) + "\n"


def _write(path: str | None, text: str) -> None:
    if path:
        Path(path).write_text(text)


def _q(args) -> int:
    try:
        prime_power(args.q)
    except (FieldError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    return args.q


# ----------------------------------------------------------------------
# subcommands


def _require(args, *names) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise ConfigError(f"family {args.family} needs {', '.join(missing)}")


def build_report(args) -> constructions.ConstructionReport:
    q = _q(args)
    common = {"seed": args.seed, "strict": args.strict, "nuclear": not args.no_nuclear,
              "budget": args.budget}
    fam = args.family
    if fam == "recipe":
        _require(args, "n", "prime")
        tower = constructions.family_tower(q, args.n, args.seed)
        return constructions.recipe_tau_n(q, args.n, parse_prime(args.prime, tower), **common)
    if fam == "sheekey":
        _require(args, "n", "s", "prime")
        tower = constructions.family_tower(q, args.n, args.seed)
        eta = parse_element(args.eta, tower, args.n) if args.eta is not None else 0
        return constructions.sheekey(q, args.n, args.s, eta, parse_prime(args.prime, tower), **common)
    if fam == "two_term":
        _require(args, "r", "s", "prime")
        if not 0 < args.s < args.r:
            raise ConfigError("two_term needs 0 < s < r")
        tower = constructions.family_tower(q, math.lcm(args.r, args.s), args.seed)
        t = parse_element(args.t if args.t is not None else "a", tower, args.s)
        return constructions.two_term(q, args.r, args.s, t, parse_prime(args.prime, tower), **common)
    if fam == "general":
        _require(args, "l", "s", "phi", "prime")
        tower = constructions.family_tower(q, math.lcm(args.l, args.s), args.seed)
        coeffs = parse_phi_general(args.phi, tower, args.l, args.s)
        return constructions.general_ls(q, args.l, args.s, coeffs, parse_prime(args.prime, tower),
                                        e=args.e, **common)
    raise ConfigError(f"unknown family {fam}")


def cmd_construct(args) -> int:
    try:
        report = build_report(args)
    except HypothesisFailure as exc:
        print(f"strict mode: {exc}", file=sys.stderr)
        for c in exc.report.failed("hypothesis"):
            print(f"  failed: {c.name} {c.detail}", file=sys.stderr)
        _write(args.json, _dump(exc.report.to_json()))
        return EXIT_FAIL
    text = report.to_text()
    if not args.quiet:
        print(text)
    _write(args.json, _dump(report.to_json()))
    _write(args.text, text + "\n")
    if args.code:
        if report.code is None:
            raise ConfigError("no code was built")
        _write(args.code, _dump(constructions.export_code(report)))
    return EXIT_OK if report.is_semifield and report.consistent else EXIT_FAIL


def _search_phi(args):
    q = _q(args)
    if args.family == "recipe":
        _require(args, "n")
        from .drinfeld import DrinfeldModule
        tower = constructions.family_tower(q, args.n, args.seed)
        return DrinfeldModule(tower, args.n, (0,) * args.n + (1,)), 1
    _require(args, "l", "s", "phi")
    tower = constructions.family_tower(q, math.lcm(args.l, args.s), args.seed)
    coeffs = parse_phi_general(args.phi, tower, args.l, args.s)
    return constructions.general_phi(tower, args.l, args.s, coeffs), math.gcd(args.l, args.s)


def cmd_search_primes(args) -> int:
    phi, g = _search_phi(args)
    passers = constructions.prime_search(phi, args.degree, args.max_primes, g)
    for prime in passers:
        print(prime)
    if not passers:
        print(f"no prime of degree {args.degree} passes the conditions")
    data = {
        "schema_version": constructions.SCHEMA_VERSION,
        "kind": "prime_search",
        "tower": phi.tower.config(),
        "phi": phi.to_json(),
        "degree": args.degree,
        "passers": [list(p.coeffs) for p in passers],
        "passers_text": [str(p) for p in passers],
    }
    _write(args.json, _dump(data))
    return EXIT_OK


def load_code(data: dict) -> RankMetricCode:
    if data.get("kind") == "construction_report":
        data = data.get("code") or {}
    if data.get("kind") != "rank_metric_code":
        raise ConfigError("not a code file")
    if data.get("schema_version") != constructions.SCHEMA_VERSION:
        raise ConfigError(f"unsupported schema_version {data.get('schema_version')}")
    fd = data["field"]
    tower = FieldTower(int(fd["p"]), int(fd["m"]), [1], fq_modulus=fd.get("fq_modulus") or None)
    R = ResidueField(APoly(tower.Fq, tuple(fd["prime"])))
    return RankMetricCode.from_json(R.field, data, q=tower.q, check=False)


def _diff(stored, fresh, path: str = "") -> list[str]:
    if isinstance(stored, dict) and isinstance(fresh, dict):
        out = []
        for key in sorted(set(stored) | set(fresh)):
            if key not in stored or key not in fresh:
                out.append(f"{path}/{key}: present on one side only")
            else:
                out.extend(_diff(stored[key], fresh[key], f"{path}/{key}"))
        return out
    return [] if stored == fresh else [f"{path}: stored {stored!r}, recomputed {fresh!r}"]


def cmd_verify(args) -> int:
    try:
        data = json.loads(Path(args.file).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {args.file}: {exc}") from None
    try:
        code = load_code(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed code file: {exc}") from None
    if data.get("kind") == "construction_report":
        data = data["code"]
    fresh = json.loads(json.dumps(codes.invariants(code, args.budget)))
    stored = data.get("invariants", {})
    diffs = _diff(stored, fresh)
    for key, val in fresh.items():
        if key.startswith("nuclear"):
            val = tuple(val["parameters"])
        print(f"{key}: {val}")
    if diffs:
        print("MISMATCH", file=sys.stderr)
        for d in diffs:
            print("  " + d, file=sys.stderr)
        return EXIT_FAIL
    print("all stored invariants reproduced")
    return EXIT_OK


def demo_code_path() -> Path:
    return Path(str(resources.files("drinfeld_semifields") / "data" / "demo_code.json"))


def cmd_demo(args) -> int:
    report = constructions.worked_example(budget=args.budget)
    text = report.to_text()
    print(text)
    _write(args.json, _dump(report.to_json()))
    ok = report.is_semifield and report.consistent and report.nuclear.as_tuple() == (4, 2, 2, 2, 1)
    shipped = demo_code_path()
    if shipped.exists():
        stored = json.loads(shipped.read_text())
        same = stored == json.loads(json.dumps(constructions.export_code(report)))
        print(f"shipped demo code file {'matches' if same else 'DIFFERS FROM'} this run")
        ok = ok and same
    return EXIT_OK if ok else EXIT_FAIL


# ----------------------------------------------------------------------


def _add_family_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=["recipe", "sheekey", "two_term", "general"], required=True)
    p.add_argument("--q", type=int, required=True, help="size of the base field F_q")
    p.add_argument("--n", type=int, help="degree of k over F_q (recipe, sheekey)")
    p.add_argument("--s", type=int, help="s of the family")
    p.add_argument("--r", type=int, help="rank r (two_term)")
    p.add_argument("--l", type=int, help="ell (general family)")
    p.add_argument("--phi", help="general family: 'a0, a1, ..., ar' or 'a0 + a1*t^l + ...' over F_(q^s)")
    p.add_argument("--seed", type=int, default=0, help="tower modulus search seed")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="drinfeld-semifields",
                                     description="Semifield codes from Drinfeld modules.")
    parser.add_argument("--budget", type=int, default=None,
                        help=f"enumeration budget (default ${codes.BUDGET_ENV} or 2^24)")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a code and verify it exhaustively")
    _add_family_args(c)
    c.add_argument("--prime", help="the prime p as a polynomial in T, e.g. 'T^2+T+1'")
    c.add_argument("--eta", help="sheekey: eta in k (expression in a)")
    c.add_argument("--t", help="two_term: t in F_(q^s) (expression in a)")
    c.add_argument("--e", type=int, help="general: override e (default r d - 1)")
    c.add_argument("--strict", action="store_true", help="abort when a hypothesis fails")
    c.add_argument("--no-nuclear", action="store_true", help="skip nuclear parameters")
    c.add_argument("--json", help="write the report as JSON")
    c.add_argument("--text", help="write the report as text")
    c.add_argument("--code", help="write a self-contained code file")
    c.add_argument("--quiet", action="store_true")
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("search-primes", help="primes of a given degree passing the prime conditions")
    _add_family_args(s)
    s.add_argument("--degree", type=int, required=True)
    s.add_argument("--max-primes", type=int, default=None, help="examine at most this many primes")
    s.add_argument("--json", help="write the passer list as JSON")
    s.set_defaults(func=cmd_search_primes)

    v = sub.add_parser("verify", help="recompute the invariants stored in a code file")
    v.add_argument("file")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("demo", help="the q=3, ell=2, s=3 worked example")
    d.add_argument("--json", help="write the report as JSON")
    d.set_defaults(func=cmd_demo)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FieldError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except EnumerationBudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
