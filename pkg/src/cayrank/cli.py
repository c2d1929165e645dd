"""Command-line client for the exact-rank engine.

Every subcommand builds the same request model the HTTP service accepts and
runs it in-process by default; pass --url to send it to a running service
instead.  Exit codes: 0 ok, 2 syntax error, 3 config error, 4 quadruple
violation, 5 stream truncated, 6 not expandable / dominance failure,
1 unexpected failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional

from pydantic import BaseModel

from . import __version__
from .errors import (
    CayrankError,
    ConfigError,
    DivisionByZeroPolynomial,
    DominanceFailure,
    GroupMismatchError,
    IdentityViolation,
    NotExpandable,
    RankUnsupported,
    StreamTruncated,
    WordSyntaxError,
    ZeroDenominator,
)
from .handlers import (
    handle_check_quadruple,
    handle_commutator_rank,
    handle_expand,
    handle_hankel,
    handle_profile,
)
from .schemas import (
    CommutatorRankRequest,
    CommutatorRankResponse,
    ExpandRequest,
    ExpandResponse,
    HankelRequest,
    HankelResponse,
    ProfileRequest,
    ProfileResponse,
    QuadrupleRequest,
    QuadrupleResponse,
)

_EXIT_SYNTAX = 2
_EXIT_CONFIG = 3
_EXIT_QUADRUPLE = 4
_EXIT_TRUNCATED = 5
_EXIT_EXPAND = 6


def _exit_code_for(exc: CayrankError) -> int:
    if isinstance(exc, WordSyntaxError):
        return _EXIT_SYNTAX
    if isinstance(exc, (ConfigError, GroupMismatchError, RankUnsupported, ValueError)):
        return _EXIT_CONFIG
    if isinstance(exc, (IdentityViolation, ZeroDenominator)):
        return _EXIT_QUADRUPLE
    if isinstance(exc, StreamTruncated):
        return _EXIT_TRUNCATED
    if isinstance(exc, (NotExpandable, DominanceFailure, DivisionByZeroPolynomial)):
        return _EXIT_EXPAND
    return 1


_CODE_TO_EXIT = {
    "syntax_error": _EXIT_SYNTAX,
    "unknown_generator": _EXIT_SYNTAX,
    "config_error": _EXIT_CONFIG,
    "group_mismatch": _EXIT_CONFIG,
    "rank_unsupported": _EXIT_CONFIG,
    "identity_violation": _EXIT_QUADRUPLE,
    "zero_denominator": _EXIT_QUADRUPLE,
    "stream_truncated": _EXIT_TRUNCATED,
    "not_expandable": _EXIT_EXPAND,
    "singular_constant_term": _EXIT_EXPAND,
    "dominance_failure": _EXIT_EXPAND,
    "division_by_zero_polynomial": _EXIT_EXPAND,
}

_ENDPOINTS = {
    CommutatorRankRequest: ("/commutator-rank", CommutatorRankResponse),
    QuadrupleRequest: ("/check-quadruple", QuadrupleResponse),
    ProfileRequest: ("/profile", ProfileResponse),
    HankelRequest: ("/hankel", HankelResponse),
    ExpandRequest: ("/expand", ExpandResponse),
}

_HANDLERS = {
    CommutatorRankRequest: handle_commutator_rank,
    QuadrupleRequest: handle_check_quadruple,
    ProfileRequest: handle_profile,
    HankelRequest: handle_hankel,
    ExpandRequest: handle_expand,
}


class _RemoteError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def _dispatch(req: BaseModel, url: Optional[str]) -> BaseModel:
    if url is None:
        return _HANDLERS[type(req)](req)
    import httpx

    path, response_cls = _ENDPOINTS[type(req)]
    resp = httpx.post(url.rstrip("/") + path, json=req.model_dump(), timeout=300.0)
    if resp.status_code >= 400:
        try:
            err = resp.json()["error"]
            raise _RemoteError(err["code"], err["message"])
        except (KeyError, ValueError):
            raise _RemoteError("error", f"HTTP {resp.status_code}: {resp.text}") from None
    return response_cls.model_validate(resp.json())


def _emit_json(model: BaseModel) -> None:
    print(json.dumps(model.model_dump(), indent=2))


# --- text renderers ----------------------------------------------------------


def _render_report(report) -> None:
    print(f"group: {report.group}    star-convention: {report.star_convention}")
    print(f"rank P-defect     : {report.rank_p}")
    print(f"rank P^-1-defect  : {report.rank_p_inv}")
    print(f"rank F-defect     : {report.rank_f}")
    print(f"witnesses (P)     : {', '.join(report.witnesses_p) or '-'}")
    print(f"witnesses (P^-1)  : {', '.join(report.witnesses_p_inv) or '-'}")
    print(f"boundary certified: {'yes' if report.boundary_certified else 'no'}")


def _render_commutator(resp: CommutatorRankResponse) -> None:
    print(f"element: {resp.element}")
    print(f"rank [P, a]       : {resp.commutator_rank}")
    _render_report(resp.report)


def _render_quadruple(resp: QuadrupleResponse) -> None:
    print("quadruple identity a*t = s*b: PASS")
    _render_report(resp.report)


def _render_profile(resp: ProfileResponse) -> None:
    print(f"group: {resp.group}    series: {resp.series}")
    print(f"window: {resp.window}    plateau: {resp.plateau}")
    if resp.table:
        width = max(len(str(c.rank)) for c in resp.table) + 1
        header = "  j\\k " + "".join(f"{k:>{width}}" for k in range(1, resp.window + 1))
        print(header)
        for j in range(1, resp.window + 1):
            row = [c.rank for c in resp.table if c.j == j]
            print(f"  {j:>3} " + "".join(f"{r:>{width}}" for r in row))
    print(f"diagonal: {resp.diagonal}")
    v = resp.verdict
    if v.kind == "STABILIZED":
        print(f"verdict: STABILIZED({v.rank})  [plateau {v.plateau} at window {v.window}; semi-decision]")
    else:
        print(f"verdict: GROWING  increments={v.increments}  [window {v.window}; semi-decision]")


def _render_hankel(resp: HankelResponse) -> None:
    print(f"orders 1..{resp.order}: ranks {resp.ranks}")
    verdict = "STABILIZED" if resp.stabilized else "GROWING"
    print(f"verdict: {verdict}  [plateau {resp.plateau}; semi-decision]")


def _render_expand(resp: ExpandResponse) -> None:
    print(f"expr: {resp.expr}")
    print(f"radius: {resp.radius}    exactness: {resp.exactness}")
    for c in resp.coefficients:
        if c.im not in ("0", "0.0"):
            print(f"  {c.word}: {c.re} + {c.im}*i")
        else:
            print(f"  {c.word}: {c.re}")
    if resp.tail_bound is not None:
        print(f"l1 tail bound: {resp.tail_bound}")


_RENDERERS = {
    CommutatorRankResponse: _render_commutator,
    QuadrupleResponse: _render_quadruple,
    ProfileResponse: _render_profile,
    HankelResponse: _render_hankel,
    ExpandResponse: _render_expand,
}


def _run(req: BaseModel, args) -> int:
    try:
        resp = _dispatch(req, args.url)
    except CayrankError as exc:
        return _fail(exc.code, str(exc), _exit_code_for(exc), args)
    except _RemoteError as exc:
        return _fail(exc.code, str(exc), _CODE_TO_EXIT.get(exc.code, 1), args)
    if args.format == "json":
        _emit_json(resp)
    else:
        _RENDERERS[type(resp)](resp)
    return 0


def _fail(code: str, message: str, exit_code: int, args) -> int:
    if args.format == "json":
        print(json.dumps({"error": {"code": code, "message": message}}, indent=2))
    else:
        print(f"error[{code}]: {message}", file=sys.stderr)
    return exit_code


# --- self test ----------------------------------------------------------------


def _selftest(args) -> int:
    from .algebra import StarConvention
    from .criterion import check_criterion, lemma_identity_suite
    from .randgen import random_chained_pair, random_shared_denominator_pair
    from .words import parse_group_spec

    gens = parse_group_spec(args.group)
    convention = StarConvention.parse(args.star_convention)
    rng = random.Random(args.seed)
    failures = 0
    for i in range(args.count):
        q1, q2 = random_shared_denominator_pair(rng, gens)
        r = lemma_identity_suite(q1, q2, convention)
        ok = r.all_passed()
        c1, c2 = random_chained_pair(rng, gens)
        r2 = lemma_identity_suite(c1, c2, convention)
        ok = ok and r2.all_passed()
        rep = check_criterion(q1, convention)
        ok = ok and rep.rank_f == rep.rank_p + rep.rank_p_inv
        if not ok:
            failures += 1
            print(f"instance {i}: FAIL")
    print(f"selftest: {args.count} instances, {failures} failures (seed {args.seed})")
    return 0 if failures == 0 else 1


# --- argument parsing ----------------------------------------------------------


def _add_common(sub, group_default="F(x)"):
    sub.add_argument("--group", default=group_default, help="generator names, e.g. F(x,y)")
    sub.add_argument("--star-convention", default="zero", choices=["zero", "unital"],
                     help="action of group elements on the basepoint summand")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="cayrank",
        description="Exact Cayley-tree commutation-defect ranks for free groups.",
    )
    p.add_argument("--version", action="version", version=f"cayrank {__version__}")
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.add_argument("--url", default=None, help="base URL of a running cayrank service")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    sp = p.add_subparsers(dest="command", required=True)

    c = sp.add_parser("commutator-rank", help="rank of [P, a] and the defect report")
    _add_common(c)
    c.add_argument("--elem", required=True, help="group-algebra element, e.g. 'x*y'")
    c.add_argument("--emit-matrix", action="store_true", help="include the defect matrices")

    q = sp.add_parser("check-quadruple", help="verify a*t = s*b and report defect ranks")
    _add_common(q)
    for name in ("a", "b", "s", "t"):
        q.add_argument(f"--{name}", required=True)
    q.add_argument("--emit-matrix", action="store_true")

    pr = sp.add_parser("profile", help="windowed commutation-defect rank profile")
    _add_common(pr)
    pr.add_argument("--series", required=True,
                    help="family (geometric:1/2, factorial, ...), finite:<expr>, "
                         "expr:<expression>, or @stream.json")
    pr.add_argument("--window", type=int, default=10)
    pr.add_argument("--plateau", type=int, default=4)
    pr.add_argument("--no-table", action="store_true", help="skip the full (j,k) grid")

    h = sp.add_parser("hankel", help="Hankel-rank oracle for a coefficient sequence")
    h.add_argument("--family", default=None)
    h.add_argument("--coeffs", default=None,
                   help="comma-separated rationals, e.g. '1,1/2,1/4,...'")
    h.add_argument("--order", type=int, default=6)
    h.add_argument("--plateau", type=int, default=4)

    e = sp.add_parser("expand", help="truncated expansion of a rational expression")
    _add_common(e)
    e.add_argument("--expr", required=True)
    e.add_argument("--radius", type=int, default=6)
    e.add_argument("--mode", default="exact", choices=["exact", "numeric"])
    e.add_argument("--tol", default="1/1000000", help="l1 tail tolerance (numeric mode)")

    st = sp.add_parser("selftest", help="randomized identity suite")
    _add_common(st, group_default="F(x,y)")
    st.add_argument("--count", type=int, default=10)

    sv = sp.add_parser("serve", help="run the HTTP service")
    sv.add_argument("--host", default="127.0.0.1")
    sv.add_argument("--port", type=int, default=8000)
    return p


def _request_from_args(args) -> Optional[BaseModel]:
    if args.command == "commutator-rank":
        return CommutatorRankRequest(
            group=args.group, element=args.elem,
            star_convention=args.star_convention, include_matrices=args.emit_matrix,
        )
    if args.command == "check-quadruple":
        return QuadrupleRequest(
            group=args.group, a=args.a, b=args.b, s=args.s, t=args.t,
            star_convention=args.star_convention, include_matrices=args.emit_matrix,
        )
    if args.command == "profile":
        series = args.series
        series_json = None
        if series.startswith("@"):
            try:
                with open(series[1:], "r", encoding="utf-8") as fh:
                    series_json = json.load(fh)
            except (OSError, ValueError) as exc:
                raise ConfigError(f"cannot read stream file {series[1:]!r}: {exc}") from exc
            series = series[1:]
        return ProfileRequest(
            group=args.group, series=series, series_json=series_json,
            window=args.window, plateau=args.plateau, full_table=not args.no_table,
        )
    if args.command == "hankel":
        coeffs = None
        if args.coeffs is not None:
            coeffs = [(c.strip(), "0") for c in args.coeffs.split(",")]
        return HankelRequest(family=args.family, coefficients=coeffs,
                             order=args.order, plateau=args.plateau)
    if args.command == "expand":
        return ExpandRequest(group=args.group, expr=args.expr, radius=args.radius,
                             mode=args.mode, tolerance=args.tol)
    return None


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0
    if args.command == "selftest":
        return _selftest(args)
    req = _request_from_args(args)
    try:
        return _run(req, args)
    except CayrankError as exc:  # request construction errors
        return _fail(exc.code, str(exc), _exit_code_for(exc), args)


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
