"""Command line interface and the plain-text system/basis file format.

System file::

    p 101 vars 3
    # comment
    3*x1^2*x2 + 100*x3 + 7

One polynomial per line, monomials joined by `` + `` and written in
descending grevlex order, coefficients in ``[1, p)``.
"""
from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from typing import Optional, Sequence

from .field import FieldError, PrimeField
from .poly import PolyRing, Polynomial, interreduce, reduce_ordinary

log = logging.getLogger("m5gb")

_HEADER = re.compile(r"^p\s+(\d+)\s+vars\s+(\d+)$")
_VAR = re.compile(r"^x(\d+)(?:\^(\d+))?$")


class ParseError(ValueError):
    def __init__(self, msg: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {msg}" if line is not None else msg)
        self.line = line


def parse_system(text: str, order="grevlex"):
    """Parse a system file into ``(p, n, polynomials)``."""
    ring = None
    p = n = None
    polys: list[Polynomial] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if ring is None:
            m = _HEADER.match(line)
            if not m:
                raise ParseError("expected header 'p <prime> vars <n>'", lineno)
            p, n = int(m.group(1)), int(m.group(2))
            try:
                ring = PolyRing(n, PrimeField(p), order)
            except (FieldError, ValueError) as exc:
                raise ParseError(str(exc), lineno) from exc
            continue
        polys.append(_parse_poly(line, ring, lineno))
    if ring is None:
        raise ParseError("missing header line")
    return p, n, polys


def _parse_poly(line: str, ring: PolyRing, lineno: int) -> Polynomial:
    d: dict[int, int] = {}
    n, p = ring.nvars, ring.p
    for mono in line.split("+"):
        factors = [f.strip() for f in mono.strip().split("*")]
        if not factors or not factors[0]:
            raise ParseError(f"malformed monomial {mono.strip()!r}", lineno)
        coeff = 1
        if factors[0].isdigit():
            coeff = int(factors.pop(0))
            if not 1 <= coeff < p:
                raise ParseError(f"coefficient {coeff} outside [1, {p})", lineno)
        exps = [0] * n
        for fac in factors:
            m = _VAR.match(fac)
            if not m:
                raise ParseError(f"malformed monomial {mono.strip()!r}", lineno)
            i = int(m.group(1))
            if not 1 <= i <= n:
                raise ParseError(f"unknown variable x{i}", lineno)
            exps[i - 1] += int(m.group(2) or 1)
        t = ring.term(exps)
        d[t] = d.get(t, 0) + coeff
    return ring.from_dict(d)


def format_poly(f: Polynomial) -> str:
    """Monomials in descending grevlex order, coefficient always written."""
    ring = f.ring
    if ring.order.kind != "grevlex":
        f = ring.with_order("grevlex").convert(f)
        ring = f.ring
    parts = []
    for t, c in f.items():
        parts.append(str(c) if t == ring.one else f"{c}*{ring.term_str(t)}")
    return " + ".join(parts) if parts else "0"


def format_system(p: int, n: int, polys: Sequence[Polynomial], comments: Sequence[str] = ()) -> str:
    lines = [f"p {p} vars {n}"]
    lines += [f"# {c}" for c in comments]
    lines += [format_poly(f) for f in polys]
    return "\n".join(lines) + "\n"


def format_basis(G: Sequence[Polynomial], comments: Sequence[str] = ()) -> str:
    """Monic basis elements sorted ascending by leading term."""
    G = sorted((g.monic() for g in G), key=lambda g: g.lt)
    ring = G[0].ring
    return format_system(ring.p, ring.nvars, G, comments)


# -- subcommands ---------------------------------------------------------------


def _read(path: str, order="grevlex"):
    with open(path, encoding="utf-8") as fh:
        return parse_system(fh.read(), order)


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_gen(args) -> int:
    from .gensys import gen_dense_quadratic

    F, point = gen_dense_quadratic(args.n, args.m, args.p, args.seed)
    _write(args.output, format_system(args.p, args.n, F, [f"dense quadratic n={args.n} m={args.m} seed={args.seed}"]))
    if args.emit_solution:
        _write(args.emit_solution, " ".join(map(str, point)) + "\n")
    return 0


def cmd_solve(args) -> int:
    from .estimators import GroebnerBasis

    p, n, F = _read(args.input, args.order)
    est = GroebnerBasis(algorithm=args.alg, order=args.order, sig_order=args.sigorder,
                        reduced=args.reduced).fit(F)
    _write(args.output, format_basis(est.basis_))
    if args.stats:
        _write(args.stats, json.dumps(est.stats_, indent=2, sort_keys=True) + "\n")
    log.info("%s: %d basis elements in %.3f s", args.alg, len(est.basis_), est.stats_["wall_time"])
    return 0


def cmd_verify(args) -> int:
    from .verify import is_groebner

    _, n1, F = _read(args.input, args.order)
    _, n2, G = _read(args.basis, args.order)
    if n1 != n2 or (F and G and F[0].ring != G[0].ring):
        print("system and basis live in different rings", file=sys.stderr)
        return 1
    if not G or not is_groebner(G):
        print("FAIL: basis is not a Groebner basis")
        return 1
    for k, f in enumerate(F, 1):
        if reduce_ordinary(f, G):
            print(f"FAIL: input polynomial {k} does not reduce to zero")
            return 1
    print("OK")
    return 0


def cmd_bench(args) -> int:
    from .bench import BenchConfig, run_benchmark

    a, _, b = args.n_range.partition(":")
    lo, hi = int(a), int(b or a)
    cfg = BenchConfig(
        n_range=range(lo, hi + 1), m_rule=args.m_rule, p=args.p, reps=args.reps,
        algorithms=[x for x in args.algs.split(",") if x], seed_base=args.seed,
        sig_order=args.sigorder, cross_check=args.cross_check, parallel=args.parallel,
        track_memory=args.memory, output=args.csv,
    )
    run_benchmark(cfg)
    return 0


def cmd_compare(args) -> int:
    from .bench import solve

    _, _, F = _read(args.input, args.order)
    reduced = {}
    for alg in ("m5gb", "sb", "buchberger"):
        G, st = solve(alg, F, args.order, args.sigorder)
        reduced[alg] = interreduce(G)
        print(f"{alg:10s} " + " ".join(f"{k}={v:.4g}" if isinstance(v, float) else f"{k}={v}"
                                       for k, v in st.items()))
    same = reduced["m5gb"] == reduced["sb"] == reduced["buchberger"]
    print("reduced bases identical" if same else "reduced bases DIFFER")
    return 0 if same else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="m5gb", description="Groebner bases over prime fields")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a dense quadratic system with a planted solution")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--p", type=int, default=101)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", required=True)
    g.add_argument("--emit-solution")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="compute a Groebner basis")
    s.add_argument("--alg", choices=("m5gb", "sb", "buchberger"), default="m5gb")
    s.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    s.add_argument("--sigorder", choices=("pot", "top"), default="pot")
    s.add_argument("-i", "--input", required=True)
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--stats")
    s.add_argument("--reduced", action="store_true")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="check a basis against its input system")
    v.add_argument("-i", "--input", required=True)
    v.add_argument("-b", "--basis", required=True)
    v.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="benchmark sweep to CSV")
    b.add_argument("--n-range", required=True, help="A:B, inclusive")
    b.add_argument("--m-rule", default="2N")
    b.add_argument("--p", type=int, default=101)
    b.add_argument("--reps", type=int, default=10)
    b.add_argument("--algs", default="m5gb,sb")
    b.add_argument("--seed", type=int, default=0, help="seed of the first repetition")
    b.add_argument("--sigorder", choices=("pot", "top"), default="top")
    b.add_argument("--csv", required=True)
    b.add_argument("--parallel", type=int, default=1)
    b.add_argument("--cross-check", action="store_true")
    b.add_argument("--memory", action="store_true", help="add a tracemalloc peak_kb column")
    b.set_defaults(func=cmd_bench)

    c = sub.add_parser("compare", help="run all algorithms and compare reduced bases")
    c.add_argument("-i", "--input", required=True)
    c.add_argument("--order", choices=("grevlex", "lex"), default="grevlex")
    c.add_argument("--sigorder", choices=("pot", "top"), default="pot")
    c.set_defaults(func=cmd_compare)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ParseError, FieldError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
