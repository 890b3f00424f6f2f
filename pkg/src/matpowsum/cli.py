"""Command-line interface.

    matpowsum closed zn-matrix --n 6 --d 2 --k 5
    matpowsum oracle power-sum --ring-spec ring.json --d 2 --k 5
    matpowsum sweep a017593 --n-max 18
    matpowsum ring validate --ring-spec ring.json

Results go to stdout as one JSON document (sweeps print a summary instead and
write JSON Lines with ``--out``).  Timing goes to stderr.  Exit codes: 0 ok,
1 proved mismatch (bug), 2 verified conjecture counterexample, 3 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import closed_form as cf
from . import harness, oracle
from ._kernels import backend
from .builtins import parse_ring
from .harness import EXIT_CONFIG, ConfigError
from .ring import DEFAULT_BUDGET, BudgetExceeded, RingSpec, ensure_valid, load_spec, spec_to_dict, validate_spec


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        sys.exit(EXIT_CONFIG)


def int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma separated list of integers, got {text!r}") from None


def kappa_list(text: str) -> list[list[int]]:
    return [int_list(part) for part in text.split(";") if part.strip()]


def format_matrix(spec: RingSpec, M) -> list:
    M = np.asarray(M)
    if spec.rank == 1:
        return M[..., 0].tolist()
    return M.tolist()


def _ring_from_args(args, required: bool = True) -> RingSpec | None:
    if getattr(args, "ring_spec", None):
        return ensure_valid(load_spec(args.ring_spec))
    if getattr(args, "ring", None):
        return parse_ring(args.ring)
    if required:
        raise UsageError("give --ring EXPR or --ring-spec FILE")
    return None


def _emit(obj, args) -> int:
    text = json.dumps(obj)
    print(text)
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0


# --- closed -------------------------------------------------------------------------

def _closed(args) -> int:
    what = args.what
    if what == "field":
        res = cf.field_scalar_sum(args.q, args.k)
    elif what == "zn":
        res = cf.zn_scalar_sum(args.n, args.k)
    elif what == "gaussian":
        res = cf.gaussian_scalar_sum(args.n, args.k)
    elif what == "field-matrix":
        res = cf.field_matrix_sum(args.q, args.d, args.k)
    elif what == "zn-matrix":
        res = cf.zn_matrix_sum(args.n, args.d, args.k)
    elif what == "quaternion":
        res = cf.quaternion_sum(args.n, args.k)
    elif what == "predict":
        res = cf.predict_ring_matrix_sum(_ring_from_args(args), args.d, args.k)
    elif what == "zero-guarantee":
        g = cf.zero_guarantee(args.p, args.s, args.d, args.k)
        return _emit({"guaranteed": g.guaranteed, "which": g.which, "p": g.p, "exponents": list(g.exponents),
                      "r": g.r, "d": g.d, "k": g.k}, args)
    elif what == "exponent-sum":
        out = cf.printed_scalar_exponent_sum(cf.ExponentProfile(args.p, args.s[0], tuple(args.betas)))
        return _emit({"value": out.value, "modulus": out.modulus, "branch": out.branch,
                      "applicable": out.applicable}, args)
    elif what == "a017593":
        return _emit({"n": args.n, "nonzero": cf.oeis_a017593_nonzero(args.n)}, args)
    else:  # pragma: no cover
        raise UsageError(what)
    d = res.to_dict()
    value = np.asarray(res.value)
    d["value"] = format_matrix(res.ring, value) if value.ndim == 3 else value.tolist()
    return _emit(d, args)


# --- oracle -------------------------------------------------------------------------

def _oracle(args) -> int:
    what = args.what
    if what == "power-sum":
        spec = _ring_from_args(args)
        if args.k_max:
            sums = oracle.matrix_power_sums(spec, args.d, args.k_max, args.budget, args.jobs)
            return _emit({"ring": spec.name, "d": args.d,
                          "sums": {str(k + 1): format_matrix(spec, s) for k, s in enumerate(sums)}}, args)
        S = oracle.matrix_power_sum_oracle(spec, args.d, args.k, args.budget, args.jobs)
        return _emit({"ring": spec.name, "d": args.d, "k": args.k, "value": format_matrix(spec, S)}, args)
    if what == "element-sum":
        spec = _ring_from_args(args)
        e = oracle.ring_element_power_sum_oracle(spec, args.k, args.budget)
        return _emit({"ring": spec.name, "k": args.k, "value": list(e)}, args)
    if what == "monomial":
        S = oracle.monomial_sum_oracle(args.word, args.moduli, args.d, args.budget, args.jobs)
        return _emit({"word": args.word, "moduli": args.moduli, "d": args.d, "modulus": args.moduli[0],
                      "value": S.tolist()}, args)
    if what == "omega-kappa":
        S = oracle.omega_kappa_sum_oracle(args.kappa[0], args.d, args.p, args.budget, args.jobs)
        return _emit({"kappa": args.kappa[0], "d": args.d, "p": args.p, "value": S.tolist()}, args)
    if what == "exponent-sum":
        m = args.p ** args.s[0]
        return _emit({"modulus": m, "betas": args.betas,
                      "value": oracle.scalar_exponent_sum_oracle(m, args.betas)}, args)
    raise UsageError(what)  # pragma: no cover


# --- sweeps -------------------------------------------------------------------------

FAMILY_DEFAULTS = {
    "zn": (list(range(2, 21)), [2], 12),
    "gf": ([2, 3, 4, 5, 8, 9], [2], 13),
    "gaussian": (list(range(2, 13)), [1], 13),
    "quaternion": ([2, 3, 4, 6], [1], 12),
}


def _sweep(args) -> harness.SweepReport:
    what, b, j = args.what, args.budget, args.jobs
    if what == "family":
        values, ds, kmax = FAMILY_DEFAULTS[args.family]
        return harness.verify_family_sweep(args.family, args.values or values, args.d or ds, args.k_max or kmax, b, j)
    if what == "reduction":
        return harness.reduction_sweep(args.n_max or 12, (args.d or [2])[0], args.k_max or 8, b)
    if what == "lifting":
        words = [args.word] if args.word else None
        return harness.lifting_sweep(args.p or (2, 3), args.s or (1,), (args.d or [2])[0], args.k_max or 8,
                                     monomial_exponents=args.exponents or (2, 1),
                                     max_degree=args.max_degree or 4, words=words, budget=b, jobs=j)
    if what == "lemma-audit":
        return harness.lemma_audit(tau_max=args.tau_max or 3, beta_max=args.beta_max or 8)
    if what == "conjecture1":
        grid = harness.DEFAULT_CONJECTURE1_GRID
        if args.p or args.exponents:
            if not (args.p and args.exponents):
                raise UsageError("conjecture1 needs both --p and --exponents, or neither")
            grid = [(p, tuple(args.exponents)) for p in args.p]
        return harness.conjecture1_sweep(grid, (args.d or [2])[0], args.max_degree or 4, b, j)
    if what == "conjecture2":
        return harness.conjecture2_sweep(args.kappa or harness.DEFAULT_KAPPAS, (args.d or [2])[0], 2, b, j)
    if what == "catalog":
        catalog = _catalog(args) or harness.DEFAULT_CATALOG
        return harness.ring_catalog_sweep(catalog, args.d or (2, 3), args.k_max or 8, b, j)
    if what == "noncommutative":
        catalog = _catalog(args) or harness.DEFAULT_NONCOMMUTATIVE
        return harness.noncommutative_probe(catalog, args.d or (2,), args.k_max or 6, b, j)
    if what == "a017593":
        return harness.a017593_sweep(args.n_max or 18, budget=b, jobs=j)
    raise UsageError(what)  # pragma: no cover


def _catalog(args) -> list:
    items: list = list(args.ring or [])
    items += [ensure_valid(load_spec(path)) for path in args.ring_spec or []]
    return items


def _run_sweep(args) -> int:
    report = _sweep(args)
    print(report.summary())
    print(f"{report.name}: {report.wall_time:.2f}s on the {backend()} backend", file=sys.stderr)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            report.write_jsonl(fh)
    return report.exit_code


# --- ring ---------------------------------------------------------------------------

def _ring(args) -> int:
    spec = load_spec(args.ring_spec) if args.ring_spec else _ring_from_args(args)
    if args.what == "validate":
        rep = validate_spec(spec)
        print(json.dumps({"name": spec.name, "card": spec.card, **rep.to_dict()}))
        return 0 if rep.ok else EXIT_CONFIG
    text = json.dumps(spec_to_dict(spec), indent=2)
    print(text)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return 0


# --- parser -------------------------------------------------------------------------

def _common(p: argparse.ArgumentParser, sweep: bool = False) -> None:
    listy = int_list
    p.add_argument("--n", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--p", type=listy if sweep else int)
    p.add_argument("--s", type=listy, help="exponent, or comma list of exponents")
    p.add_argument("--d", type=listy if sweep else int)
    p.add_argument("--k", type=int)
    p.add_argument("--k-max", type=int)
    p.add_argument("--word", type=listy, help="variable indices, e.g. 1,2,1")
    p.add_argument("--moduli", type=listy)
    p.add_argument("--kappa", type=kappa_list, help="e.g. 2,2 or 1,1;2,2,2")
    p.add_argument("--betas", type=listy)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out")
    p.add_argument("--ring", action="append" if sweep else "store", help="builtin ring expression, e.g. zn(6)")
    p.add_argument("--ring-spec", action="append" if sweep else "store", help="ring-spec JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="matpowsum", description="Power sums of matrices over finite rings.")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    closed = groups.add_parser("closed", help="closed-form values")
    closed.add_argument("what", choices=["field", "zn", "gaussian", "field-matrix", "zn-matrix", "quaternion",
                                         "predict", "zero-guarantee", "exponent-sum", "a017593"])
    _common(closed)

    orc = groups.add_parser("oracle", help="brute-force enumeration")
    orc.add_argument("what", choices=["power-sum", "element-sum", "monomial", "omega-kappa", "exponent-sum"])
    _common(orc)

    sweep = groups.add_parser("sweep", help="verification sweeps")
    sweep.add_argument("what", choices=["family", "reduction", "lifting", "lemma-audit", "conjecture1",
                                        "conjecture2", "catalog", "a017593", "noncommutative"])
    _common(sweep, sweep=True)
    sweep.add_argument("--family", choices=list(FAMILY_DEFAULTS), default="zn")
    sweep.add_argument("--values", type=int_list)
    sweep.add_argument("--n-max", type=int)
    sweep.add_argument("--exponents", type=int_list)
    sweep.add_argument("--max-degree", type=int)
    sweep.add_argument("--tau-max", type=int)
    sweep.add_argument("--beta-max", type=int)

    ring = groups.add_parser("ring", help="ring specs")
    ring.add_argument("what", choices=["validate", "builtin"])
    ring.add_argument("--ring", help="builtin ring expression, e.g. direct_product(zn(2),zn(3))")
    ring.add_argument("--ring-spec", help="ring-spec JSON file")
    ring.add_argument("--out")
    return parser


REQUIRED = {
    ("closed", "field"): ("q", "k"),
    ("closed", "zn"): ("n", "k"),
    ("closed", "gaussian"): ("n", "k"),
    ("closed", "field-matrix"): ("q", "d", "k"),
    ("closed", "zn-matrix"): ("n", "d", "k"),
    ("closed", "quaternion"): ("n", "k"),
    ("closed", "predict"): ("d", "k"),
    ("closed", "zero-guarantee"): ("p", "s", "d", "k"),
    ("closed", "exponent-sum"): ("p", "s", "betas"),
    ("closed", "a017593"): ("n",),
    ("oracle", "power-sum"): ("d",),
    ("oracle", "element-sum"): ("k",),
    ("oracle", "monomial"): ("word", "moduli", "d"),
    ("oracle", "omega-kappa"): ("kappa", "d", "p"),
    ("oracle", "exponent-sum"): ("p", "s", "betas"),
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    missing = [f"--{f.replace('_', '-')}" for f in REQUIRED.get((args.group, args.what), ())
               if getattr(args, f, None) in (None, [])]
    if args.group == "oracle" and args.what == "power-sum" and not (args.k or args.k_max):
        missing.append("--k or --k-max")
    if missing:
        parser.error(f"{args.group} {args.what} needs {', '.join(missing)}")
    try:
        if args.group == "closed":
            return _closed(args)
        if args.group == "oracle":
            return _oracle(args)
        if args.group == "sweep":
            return _run_sweep(args)
        return _ring(args)
    except BudgetExceeded as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (UsageError, ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
