"""Command line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 domain
error, 4 genericity failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable

from .crystal import Crystal, generate_graph
from .errors import DomainError, GenericityError
from .paths import Path, PathCrystal, canonical_word
from .perfect import check_perfect, ground_state, perfect_crystal
from .walls import WallCrystal, YoungWall

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_DOMAIN, EXIT_GENERICITY = 0, 1, 2, 3, 4

REALIZATIONS = {
    "wall1": ("wall", "Y1"),
    "walln": ("wall", "Yn"),
    "path1": ("path", "B1"),
    "pathn": ("path", "Bn"),
    "pathad": ("path", "Bad"),
}


class UsageError(Exception):
    pass


def make_crystal(realization: str, n: int, k: int) -> Crystal:
    family, name = REALIZATIONS[realization]
    if family == "wall":
        return WallCrystal(name, n, k)
    return PathCrystal(name, n, k)


def element_from_json(realization: str, data):
    family, name = REALIZATIONS[realization]
    if family == "wall":
        Y = YoungWall.from_json(data)
        if Y.pattern.kind != name:
            raise UsageError(f"expected a {name} wall, got {Y.pattern.kind}")
        if not Y.is_reduced():
            raise DomainError(f"wall {Y.key()} is not reduced, so it lies outside B(Lambda)")
        return Y
    p = Path.from_json(data)
    if p.crystal != name:
        raise UsageError(f"expected a {name} path, got {p.crystal}")
    return p


def element_rank(x) -> tuple[int, int]:
    if isinstance(x, YoungWall):
        return x.n, x.pattern.k
    return x.n, x.k


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {value!r}")


def _write(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {path}: {exc}")


# -- graph ------------------------------------------------------------------

def cmd_graph(args) -> int:
    C = make_crystal(args.realization, args.n, args.k)
    g = generate_graph(C, [C.highest_weight], args.depth)
    if args.format == "dot":
        text = g.to_dot()
    else:
        text = json.dumps(g.to_json(), ensure_ascii=False, indent=1) + "\n"
    _write(text, args.out)
    return EXIT_OK


# -- convert ----------------------------------------------------------------

def convert_element(x, source: str, target: str):
    n, k = element_rank(x)
    src = make_crystal(source, n, k)
    dst = make_crystal(target, n, k)
    word = canonical_word(src, x)
    out = dst.highest_weight
    for i in reversed(word):
        out = dst.f(i, out)
        if out is None:
            raise DomainError("element does not lie in the highest weight component")
    return out


def cmd_convert(args) -> int:
    data = _read_json(args.input)
    try:
        x = element_from_json(args.source, data)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise UsageError(f"malformed element: {exc}")
    y = convert_element(x, args.source, args.target)
    _write(json.dumps(y.to_json(), ensure_ascii=False) + "\n", args.out)
    return EXIT_OK


# -- kernels ----------------------------------------------------------------

def kernel_table(Yn: YoungWall, seed: int, samples: int, bound: int) -> str:
    """Text table of ker x^t, ker xbar^t, ker (x xbar)^t and the c-sequence."""
    from .quiver import generic_profile, xbar_of_wall
    gs = generic_profile(xbar_of_wall(Yn), seed, samples, bound)
    p = gs.profile
    lines = [
        f"wall {Yn.pattern.kind} n={Yn.n} k={Yn.pattern.k} heights={','.join(map(str, Yn.heights))}",
        f"dims {','.join(map(str, p.dims))}",
        f"fiber_dim {gs.fiber.dimension}",
        f"seeds {','.join(map(str, gs.seeds))} bound {bound} attained {gs.attained}/{samples}",
        "t\tker_x\tker_xbar\tker_xxbar\tgraded_ker_xxbar\tker_x_xxbar\tc",
    ]
    up, down, mix, xm = p.up_totals, p.down_totals, p.xxbar, p.x_xxbar
    c = p.c_sequence()
    rows = max(len(up), len(down), len(mix))

    def at(seq, t):
        return seq[t] if t < len(seq) else seq[-1]

    for t in range(rows):
        g = at(mix, t)
        lines.append("\t".join(map(str, [t, at(up, t), at(down, t), sum(g), ",".join(map(str, g)),
                                          at(xm, t), at(c, t)])))
    return "\n".join(lines) + "\n"


def _as_pn_wall(data) -> YoungWall:
    from .theorems import convert_wall
    Y = YoungWall.from_json(data)
    return convert_wall(Y, "Yn")


def cmd_kernels(args) -> int:
    try:
        Y = _as_pn_wall(_read_json(args.wall))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed wall: {exc}")
    _write(kernel_table(Y, args.seed, args.samples, args.bound), args.out)
    return EXIT_OK


# -- verify -----------------------------------------------------------------

def _report(name: str, ok: bool, detail: str = "") -> bool:
    print(f"{'PASS' if ok else 'FAIL'} {name}{': ' + detail if detail else ''}")
    return ok


def verify_example_a3(seed: int, samples: int, bound: int) -> bool:
    from . import examples
    results = examples.run_all(seed, samples, bound)
    for r in results:
        _report(r.name, r.ok, r.detail)
        for note in r.notes:
            print(f"  note: {note}")
    return all(r.ok for r in results)


def verify_sweep(n: int, max_blocks: int, seed: int, samples: int, bound: int,
                 random_count: int | None, out: str | None) -> bool:
    from .theorems import random_walls, sweep, sweep_walls
    walls = (random_walls(n, max_blocks, random_count, seed) if random_count
             else sweep_walls(n, max_blocks))
    res = sweep(walls, seed, samples, bound)
    for cert in res.certificates:
        if not cert.passed:
            _report(cert.wall.key(), False, "; ".join(cert.diffs) or (cert.error or ""))
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            json.dump([c.to_json() for c in res.certificates], fh, ensure_ascii=False, indent=1)
    passed = sum(1 for c in res.certificates if c.passed)
    return _report(f"sweep n={n} max_blocks={max_blocks}", res.passed,
                   f"{passed}/{res.count} walls match")


def verify_perfect(name: str, n: int) -> bool:
    key = {"b1": "B1", "bn": "Bn", "bad": "Bad"}[name]
    B = perfect_crystal(key, n)
    rep = check_perfect(B)
    for cond, status in rep.conditions.items():
        print(f"  ({cond}) {status}")
    for v in rep.violations:
        print(f"  violation: {v}")
    gs = [", ".join(str(b) for b in ground_state(key, k, n).letters) for k in range(n + 1)]
    for k, text in enumerate(gs):
        print(f"  ground state Lambda_{k}: period ({text})")
    return _report(f"perfect {key} n={n}", rep.passed)


def cmd_verify(args) -> int:
    if args.what == "example-a3":
        ok = verify_example_a3(args.seed, args.samples, args.bound)
    elif args.what == "sweep":
        ok = verify_sweep(args.n, args.max_blocks, args.seed, args.samples, args.bound,
                          args.random, args.out)
    else:
        ok = verify_perfect(args.crystal, args.n)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    seed = _env_int("CRYSTAL_SEED", 0)
    samples = _env_int("CRYSTAL_SAMPLES", 5)
    bound = _env_int("CRYSTAL_BOUND", 997)

    def sampling(p):
        p.add_argument("--seed", type=int, default=seed)
        p.add_argument("--samples", type=int, default=samples)
        p.add_argument("--bound", type=int, default=bound)

    parser = argparse.ArgumentParser(prog="adjcrystal",
                                     description="Adjoint crystal and quiver variety toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("graph", help="crystal graph of B(Lambda_k) to a given depth")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, default=0)
    g.add_argument("--realization", choices=sorted(REALIZATIONS), required=True)
    g.add_argument("--depth", type=int, required=True)
    g.add_argument("--format", choices=["dot", "json"], default="json")
    g.add_argument("--out")
    g.set_defaults(func=cmd_graph)

    c = sub.add_parser("convert", help="convert an element between realizations")
    c.add_argument("--from", dest="source", choices=sorted(REALIZATIONS), required=True)
    c.add_argument("--to", dest="target", choices=sorted(REALIZATIONS), required=True)
    c.add_argument("--in", dest="input", required=True)
    c.add_argument("--out")
    c.set_defaults(func=cmd_convert)

    k = sub.add_parser("kernels", help="kernel table of a generic point over a wall")
    k.add_argument("--wall", required=True)
    k.add_argument("--out")
    sampling(k)
    k.set_defaults(func=cmd_kernels)

    v = sub.add_parser("verify", help="run verification suites")
    vsub = v.add_subparsers(dest="what", required=True)
    ex = vsub.add_parser("example-a3", help="replay the worked A_3 examples")
    sampling(ex)
    sw = vsub.add_parser("sweep", help="cross-check all reduced walls up to a size")
    sw.add_argument("--n", type=int, required=True)
    sw.add_argument("--max-blocks", type=int, required=True)
    sw.add_argument("--random", type=int, default=None,
                    help="check a random sample of this many walls instead")
    sw.add_argument("--out", help="write certificates as JSON")
    sampling(sw)
    pf = vsub.add_parser("perfect", help="check the perfect crystal axioms")
    pf.add_argument("--crystal", choices=["b1", "bn", "bad"], required=True)
    pf.add_argument("--n", type=int, required=True)
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        parser = build_parser()
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return int(exc.code or 0)
    handler: Callable = args.func
    try:
        if getattr(args, "n", None) is not None and args.n < 1:
            raise UsageError("--n must be positive")
        if getattr(args, "depth", 0) < 0:
            raise UsageError("--depth must be nonnegative")
        return handler(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GenericityError as exc:
        print(f"genericity failure: {exc}", file=sys.stderr)
        return EXIT_GENERICITY
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
