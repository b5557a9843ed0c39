"""hesslab command line: JSON in, JSON out.

Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 inadmissible prime.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .cache import Cache
from .census import InadmissiblePrimeError, admissibility_report, census_poincare, count_points, verify_heuristic, CensusError
from .closedform import (classification_report, echess_poincare, poincare_mmax_for_type, q_factorial)
from .ffla import ExactMatrix, SingularMatrixError, is_prime
from .hesscore import hfpjf, m_full, m_max, parse_hessenberg, parse_int_matrix, parse_jordan_type
from .paving import euler_characteristic, poincare_tymoczko
from .patches import NotInVarietyError, is_smooth_point_mmax, linear_part, patch_determinant, patch_report, squarefree_witness
from .poly import Poly
from .symgrp import ls_singular_maximal, parse_permutation, schubert_euler, schubert_poincare

OK, VERIFY_FAIL, BAD_INPUT, INADMISSIBLE = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _emit(obj, pretty: bool):
    print(json.dumps(obj, indent=2 if pretty else None, sort_keys=pretty))


def _poly_json(poly: Poly, pretty: bool) -> dict:
    out = {"coefficients": poly.to_list()}
    if pretty:
        out["t"] = poly.render("t")
        out["q"] = poly.render("q")
    return out


def _type_and_m(args):
    jtype = parse_jordan_type(args.type)
    m = parse_hessenberg(args.m, jtype.n)
    return jtype, m


def _check_prime(p: int):
    if not is_prime(p):
        raise InputError(f"{p} is not prime")


def _key(op: str, jtype, m=None, p=None, **extra) -> dict:
    key = {"op": op, "n": jtype.n, "type": [list(lam) for lam in jtype.partitions],
           "eigenvalues": list(jtype.eigenvalues)}
    if m is not None:
        key["m"] = list(m.m)
    if p is not None:
        key["p"] = p
    key.update(extra)
    return key


def _closed_form(jtype, m) -> tuple[Poly, str]:
    n = jtype.n
    if m == m_full(n):
        return q_factorial(n), "flag variety"
    if n >= 2 and m == m_max(n):
        return poincare_mmax_for_type(jtype), "m_max formula"
    if n >= 4 and m.m == (1,) + (n - 1,) * (n - 2) + (n,) and jtype.r == 1:
        lam = jtype.partitions[0]
        if lam == (2, 2) + (1,) * (n - 4):
            return echess_poincare(n, "square-zero"), "rank-two square-zero formula"
        if lam == (3,) + (1,) * (n - 3):
            return echess_poincare(n, "non-square-zero"), "rank-two non-square-zero formula"
    raise InputError(f"no closed form is known for type {jtype} and m = {m}")


def cmd_poincare(args, cache: Cache) -> int:
    jtype, m = _type_and_m(args)
    if args.method == "tymoczko":
        poly, meta = poincare_tymoczko(jtype, m), {}
    elif args.method == "closed":
        poly, which = _closed_form(jtype, m)
        meta = {"formula": which}
    else:
        def compute():
            return census_poincare(jtype, m, max_flags=args.max_flags, jobs=args.jobs).to_json()
        try:
            res = cache.memo(_key("census-interp", jtype, m, max_flags=args.max_flags), compute, not args.no_cache)
        except CensusError as exc:
            raise InputError(str(exc)) from None
        poly = Poly(res["coefficients"])
        meta = {("interpolation" if k == "method" else k): v for k, v in res.items() if k != "coefficients"}
    _emit({"type": str(jtype), "m": list(m.m), "method": args.method, "poincare": _poly_json(poly, args.pretty),
           **meta}, args.pretty)
    return OK


def _count_value(jtype, m, p, jobs):
    return count_points(hfpjf(jtype), m, p, jobs=jobs).to_json()


def cmd_count(args, cache: Cache) -> int:
    jtype, m = _type_and_m(args)
    _check_prime(args.p)
    x = hfpjf(jtype)
    adm = admissibility_report(x, args.p)
    if not adm["divisibility_ok"] and not args.force:
        _emit({"error": "inadmissible prime", "admissibility": adm}, args.pretty)
        return INADMISSIBLE
    value = cache.memo(_key("count", jtype, m, args.p), lambda: _count_value(jtype, m, args.p, args.jobs),
                       not args.no_cache)
    _emit({"type": str(jtype), "m": list(m.m), **value, "admissibility": adm}, args.pretty)
    return OK


def cmd_verify(args, cache: Cache) -> int:
    jtype, m = _type_and_m(args)
    _check_prime(args.p)
    try:
        value = cache.memo(_key("verify", jtype, m, args.p),
                           lambda: verify_heuristic(jtype, m, args.p, jobs=args.jobs).to_json(), not args.no_cache)
    except InadmissiblePrimeError as exc:
        _emit({"error": "inadmissible prime", "detail": str(exc),
               "admissibility": admissibility_report(hfpjf(jtype), args.p)}, args.pretty)
        return INADMISSIBLE
    _emit(value, args.pretty)
    return OK if value["passed"] else VERIFY_FAIL


def cmd_euler(args, cache: Cache) -> int:
    jtype, m = _type_and_m(args)
    _emit({"type": str(jtype), "m": list(m.m), "euler": euler_characteristic(jtype, m)}, args.pretty)
    return OK


def cmd_classify(args, cache: Cache) -> int:
    jtype = parse_jordan_type(args.type)
    _emit(classification_report(jtype), args.pretty)
    return OK


def cmd_schubert(args, cache: Cache) -> int:
    w = parse_permutation(args.w)
    out = {"w": str(w)}
    if args.what == "poincare":
        out["poincare"] = _poly_json(schubert_poincare(w), args.pretty)
    elif args.what == "euler":
        out["euler"] = schubert_euler(w)
    else:
        out["singular"] = sorted(str(v) for v in ls_singular_maximal(w))
    _emit(out, args.pretty)
    return OK


def _read_matrix(path: str) -> ExactMatrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_int_matrix(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_patch(args, cache: Cache) -> int:
    x, g = _read_matrix(args.x), _read_matrix(args.g)
    if x.n != g.n:
        raise InputError("x and g have different sizes")
    if args.p is not None:
        _check_prime(args.p)
        x, g = x.reduce_mod(args.p), g.reduce_mod(args.p)
    out: dict = {"n": x.n}
    if args.what == "det":
        out["determinant"] = patch_determinant(x, g).render()
    elif args.what == "linear":
        out["linear_part"] = linear_part(x, g, check=True).render()
    elif args.what == "smooth":
        out["smooth"] = is_smooth_point_mmax(x, g)
    elif args.what == "witness":
        out["witness"] = squarefree_witness(x, g).to_json()
    else:
        out.update(patch_report(x, g).to_json())
    _emit(out, args.pretty)
    return OK


def cmd_cache(args, cache: Cache) -> int:
    if args.action == "path":
        _emit({"path": str(cache.root)}, args.pretty)
    elif args.action == "list":
        _emit({"path": str(cache.root), "entries": cache.entries()}, args.pretty)
    else:
        _emit({"removed": cache.clear()}, args.pretty)
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hesslab", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"hesslab {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", help="indent JSON and add readable polynomials")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for census runs")
    common.add_argument("--cache-dir", help="overrides HESSLAB_CACHE_DIR")
    common.add_argument("--no-cache", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def typed(name, help_, with_m=True):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("--type", required=True, help='e.g. "[[2,2],[2]] @ [1,-1]"')
        if with_m:
            sp.add_argument("--m", required=True, help='"max", "sing", "full" or "3,4,4,4"')
        return sp

    sp = typed("poincare", "Poincaré polynomial in t = q^2")
    sp.add_argument("--method", choices=["tymoczko", "closed", "census-interp"], default="tymoczko")
    sp.add_argument("--max-flags", type=int, default=3_000_000, help="per-prime flag budget for census-interp")
    sp.set_defaults(func=cmd_poincare)

    sp = typed("count", "point count over F_p")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--force", action="store_true", help="count even if p is inadmissible")
    sp.set_defaults(func=cmd_count)

    sp = typed("verify", "census against the paving at p")
    sp.add_argument("--p", type=int, required=True)
    sp.set_defaults(func=cmd_verify)

    typed("euler", "Euler characteristic (number of cells)").set_defaults(func=cmd_euler)
    typed("classify", "irreducibility of B(x, H(m_max))", with_m=False).set_defaults(func=cmd_classify)

    sp = sub.add_parser("schubert", parents=[common], help="Schubert variety data")
    sp.add_argument("w", help='"5,2,1,4,3", "w0@n=4" or "s2w0@n=5"')
    sp.add_argument("what", choices=["poincare", "singular", "euler"])
    sp.set_defaults(func=cmd_schubert)

    sp = sub.add_parser("patch", parents=[common], help="patch determinant at gB")
    sp.add_argument("x", help="JSON file with the matrix x")
    sp.add_argument("g", help="JSON file with the matrix g")
    sp.add_argument("what", choices=["det", "linear", "smooth", "witness", "report"])
    sp.add_argument("--p", type=int, help="reduce both matrices mod p")
    sp.set_defaults(func=cmd_patch)

    sp = sub.add_parser("cache", parents=[common], help="inspect or clear the result cache")
    sp.add_argument("action", choices=["path", "list", "clear"])
    sp.set_defaults(func=cmd_cache)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    cache = Cache(args.cache_dir)
    try:
        return args.func(args, cache)
    except InadmissiblePrimeError as exc:
        _emit({"error": "inadmissible prime", "detail": str(exc)}, args.pretty)
        return INADMISSIBLE
    except (InputError, SingularMatrixError, NotInVarietyError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "detail": str(exc)}), file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
