"""``ybhecke`` command line.

Every subcommand builds a report dictionary and prints it as canonical JSON
(sorted keys), CSV, or plain ``key: value`` text.  Exit status: 0 on success,
1 when a verification fails, 2 on bad input.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import random
import sys
from pathlib import Path

from . import __version__, perm
from .cycleset import diagonal_order, lambda_orbits, parse_cycle_set
from .errors import InputError, VerificationError, YBHeckeError
from .germ import dehornoy_class, make_germ_context
from .hecke import (
    CLASSICAL_POLY,
    DEFAULT_GRAM_CAP,
    DEFAULT_MAX_ORDER,
    HeckeAlgebra,
    HeckeElement,
    hecke_retraction_map,
    parse_polys,
    random_element,
)
from .laurent import ParamInvolution
from .torus import torus_make, torus_verify

DEFAULT_SEED = 20240601
ENV_MAX_ORDER = "YBHECKE_MAX_ORDER"
ENV_GRAM_CAP = "YBHECKE_GRAM_CAP"


class _Input:
    """A loaded cycle-set file plus its digest."""

    def __init__(self, path: str):
        try:
            raw = Path(path).read_bytes()
        except OSError as exc:
            raise InputError(f"{path}: {exc.strerror}") from exc
        self.digest = hashlib.sha256(raw).hexdigest()
        try:
            self.cs = parse_cycle_set(raw.decode("utf-8"))
        except UnicodeDecodeError as exc:
            raise InputError(f"{path}: not UTF-8 text") from exc
        except InputError as exc:
            raise InputError(f"{path}: {exc}") from exc


def _env_int(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value is None:
        return default
    try:
        return int(value)
    except ValueError:
        raise InputError(f"environment variable {name} must be an integer, got {value!r}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _degrees(args, fallback):
    if args.l is None:
        return fallback
    return args.l[0] if len(args.l) == 1 else list(args.l)


def _germ(args, cs):
    return make_germ_context(cs, _degrees(args, 2))


def _algebra(args, cs) -> HeckeAlgebra:
    polys = parse_polys(args.poly or [CLASSICAL_POLY])
    degrees = _degrees(args, [p.degree for p in polys] if len(polys) > 1 else polys[0].degree)
    germ = make_germ_context(cs, degrees)
    return HeckeAlgebra(germ, polys, max_order=args.max_order, gram_cap=args.gram_cap)


def _load_json_arg(text: str, what: str):
    if text.startswith("@"):
        try:
            text = Path(text[1:]).read_text()
        except OSError as exc:
            raise InputError(f"{text[1:]}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{what}: invalid JSON ({exc.msg} at position {exc.pos})") from None


def _element(alg: HeckeAlgebra, text: str, what: str) -> HeckeElement:
    x = HeckeElement.from_json(_load_json_arg(text, what), alg.params)
    for g in x.terms:
        if len(g) != alg.germ.n or any(not 0 <= c < m for c, m in zip(g, alg.germ.moduli)):
            raise InputError(f"{what}: {list(g)} is not a germ element for moduli {list(alg.germ.moduli)}")
    return x


def _one_based(p) -> list[int]:
    return [x + 1 for x in p]


# -- subcommands --------------------------------------------------------------------


def cmd_validate(args, inp: _Input) -> tuple[dict, bool]:
    cs = inp.cs
    return {
        "solution": cs.to_json(),
        "psi": [perm.cycle_notation(cs.psi(i)) for i in range(cs.size)],
        "orbits": [_one_based(b) for b in lambda_orbits(cs)],
    }, True


def cmd_class(args, inp: _Input) -> tuple[dict, bool]:
    return {"d": dehornoy_class(inp.cs, args.cap), "o": diagonal_order(inp.cs)}, True


def cmd_germ(args, inp: _Input) -> tuple[dict, bool]:
    G = _germ(args, inp.cs)
    report = {
        "d": G.d,
        "degrees": list(G.degrees),
        "moduli": list(G.moduli),
        "order": G.order,
    }
    if args.table:
        if G.order > args.max_order:
            raise InputError(f"germ order {G.order} exceeds --max-order {args.max_order}")
        elements = list(G.elements())
        index = {g: i for i, g in enumerate(elements)}
        report["elements"] = [list(g) for g in elements]
        report["table"] = [[index[G.mul(g, h)] for h in elements] for g in elements]
    return report, True


def cmd_hecke(args, inp: _Input) -> tuple[dict, bool]:
    alg = _algebra(args, inp.cs)
    report = {"dimension": alg.dim, "params": list(alg.params), "polynomials": [str(p) for p in alg.polys]}
    ok = True
    if args.verify:
        rel = alg.relation_report()
        rng = random.Random(args.seed)
        assoc = word = True
        for _ in range(args.checks):
            x, y, z = (random_element(alg, rng) for _ in range(3))
            if alg.mul(alg.mul(x, y), z) != alg.mul(x, alg.mul(y, z)):
                assoc = False
            pivot = _random_pivot(rng)
            if alg.mul_via_word(x, y, pivot) != alg.mul(x, y):
                word = False
        checks = {
            "closure": rel["closure"],
            "quadratic_relations": rel["quadratic_relations"],
            "polynomial_relations": rel["polynomial_relations"],
            "associativity": assoc,
            "word_independence": word,
        }
        report["checks"] = checks
        ok = all(checks.values())
    if args.x is not None or args.y is not None:
        if args.x is None or args.y is None:
            raise InputError("--x and --y must be given together")
        x = _element(alg, args.x, "--x")
        y = _element(alg, args.y, "--y")
        report["product"] = alg.mul(x, y).to_json()
    if not args.verify and "product" not in report:
        raise InputError("hecke needs --x/--y or --verify")
    return report, ok


def _random_pivot(rng: random.Random):
    def choose(v):
        return rng.choice([i for i, x in enumerate(v) if x > 0])

    return choose


def cmd_gram(args, inp: _Input) -> tuple[dict, bool]:
    alg = _algebra(args, inp.cs)
    gram = alg.gram()
    det = alg.gram_determinant()
    report = {
        "dimension": alg.dim,
        "basis": [list(g) for g in alg.basis()],
        "gram": [[str(c) for c in row] for row in gram],
        "determinant": str(det),
    }
    try:
        alg.check_group_algebra_point(alg.default_assignment())
        report["determinant_at_group_algebra"] = str(det.specialize(alg.default_assignment()))
    except InputError:
        report["determinant_at_group_algebra"] = None
    return report, bool(det)


def cmd_involution(args, inp: _Input) -> tuple[dict, bool]:
    alg = _algebra(args, inp.cs)
    inv = ParamInvolution(args.invert if args.invert else alg.params)
    alg.check_involution(inv)
    report = {"dimension": alg.dim, "inverted": sorted(inv.inverted)}
    if args.x is not None:
        report["image"] = alg.anti_involution(inv, _element(alg, args.x, "--x")).to_json()
    rng = random.Random(args.seed)
    anti = invol = True
    for _ in range(args.checks):
        x, y = random_element(alg, rng), random_element(alg, rng)
        ix, iy = alg.anti_involution(inv, x), alg.anti_involution(inv, y)
        if alg.anti_involution(inv, alg.mul(x, y)) != alg.mul(iy, ix):
            anti = False
        if alg.anti_involution(inv, ix) != x:
            invol = False
    checks = {"anti_multiplicative": anti, "involutive": invol}
    report["checks"] = checks
    return report, all(checks.values())


def cmd_retract(args, inp: _Input) -> tuple[dict, bool]:
    alg = _algebra(args, inp.cs)
    phi = hecke_retraction_map(alg)
    checks = {
        "class_divides": phi.d % phi.d_prime == 0,
        "generator_pairs": phi.check_generator_pairs(),
        "generator_actions": phi.check_generator_actions(),
    }
    report = {
        "retract": phi.retract.to_json(),
        "projection": _one_based(phi.projection),
        "d": phi.d,
        "d_prime": phi.d_prime,
        "target_polynomial": str(phi.target.polys[0]),
        "target_dimension": phi.target.dim,
        "checks": checks,
    }
    return report, all(checks.values())


def cmd_torus(args, inp) -> tuple[dict, bool]:
    report = torus_verify(torus_make(args.n, args.m))
    return report, report["all_pass"]


def cmd_render(args, inp: _Input) -> tuple[dict, bool]:
    G = _germ(args, inp.cs)
    data = _load_json_arg(args.element, "--element")
    if not isinstance(data, list) or len(data) != G.n or not all(isinstance(c, int) for c in data):
        raise InputError(f"--element must be a list of {G.n} integers")
    if any(not 0 <= c < m for c, m in zip(data, G.moduli)):
        raise InputError(f"--element {data} is not reduced modulo {list(G.moduli)}")
    g = tuple(data)
    return {
        "element": data,
        "permutation": perm.cycle_notation(G.lambda_perm(g)),
        "diagram": G.render_diagram(g),
    }, True


COMMANDS = {
    "validate": cmd_validate,
    "class": cmd_class,
    "germ": cmd_germ,
    "hecke": cmd_hecke,
    "gram": cmd_gram,
    "involution": cmd_involution,
    "retract": cmd_retract,
    "torus": cmd_torus,
    "render": cmd_render,
}


# -- output -------------------------------------------------------------------------


def _flatten(value, prefix=""):
    if isinstance(value, dict):
        for k in sorted(value):
            yield from _flatten(value[k], f"{prefix}.{k}" if prefix else str(k))
    else:
        yield prefix, value


def _scalar_text(value) -> str:
    if isinstance(value, (list, dict)) or value is None or isinstance(value, bool):
        return json.dumps(value, sort_keys=True)
    return str(value)


def render_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        matrix = report.get("gram") or report.get("table")
        if matrix is not None:
            writer.writerows(matrix)
        else:
            writer.writerow(["key", "value"])
            for k, v in _flatten(report):
                writer.writerow([k, _scalar_text(v)])
        return buf.getvalue()
    lines = []
    for k, v in _flatten(report):
        if k == "diagram":
            lines.append("diagram:")
            lines.append(v.rstrip("\n"))
        else:
            lines.append(f"{k}: {_scalar_text(v)}")
    return "\n".join(lines) + "\n"


# -- argument parsing ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ybhecke",
        description="Germs and Hecke algebras of finite cycle sets.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--max-order", type=int, default=None, help=f"dense-representation guard (default {DEFAULT_MAX_ORDER}, env {ENV_MAX_ORDER})")
    common.add_argument("--gram-cap", type=int, default=None, help=f"Gram dimension guard (default {DEFAULT_GRAM_CAP}, env {ENV_GRAM_CAP})")

    with_file = argparse.ArgumentParser(add_help=False, parents=[common])
    with_file.add_argument("input", help="cycle-set JSON file")

    degrees = argparse.ArgumentParser(add_help=False)
    degrees.add_argument(
        "--l", type=_int_list, default=None, metavar="L[,L...]",
        help="degree, or comma-separated degrees per orbit (default 2)",
    )

    algebra = argparse.ArgumentParser(add_help=False, parents=[degrees])
    algebra.add_argument(
        "--poly", action="append", default=None,
        help=f"polynomial in X, repeat once per orbit (default {CLASSICAL_POLY!r})",
    )

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    sub.add_parser("validate", parents=[with_file], help="check a cycle set and echo it")
    p = sub.add_parser("class", parents=[with_file], help="Dehornoy class d and order of the diagonal map")
    p.add_argument("--cap", type=int, default=10**6)
    p = sub.add_parser("germ", parents=[with_file, degrees], help="germ order, optionally its multiplication table")
    p.add_argument("--table", action="store_true")
    p = sub.add_parser("hecke", parents=[with_file, algebra], help="multiply elements or verify the relations")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--checks", type=int, default=10, help="random cases for --verify")
    sub.add_parser("gram", parents=[with_file, algebra], help="trace form Gram matrix and determinant")
    p = sub.add_parser("involution", parents=[with_file, algebra], help="apply the anti-involution")
    p.add_argument("--x")
    p.add_argument("--invert", action="append", default=None, help="parameter sent to its inverse (default all)")
    p.add_argument("--checks", type=int, default=10)
    sub.add_parser("retract", parents=[with_file, algebra], help="retraction and its algebra morphism")
    p = sub.add_parser("torus", parents=[common], help="verify the torus-knot algebra H_{n,m}(p,q)")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p = sub.add_parser("render", parents=[with_file, degrees], help="ASCII marked permutation diagram")
    p.add_argument("--element", required=True, help="JSON coordinate list")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        if args.max_order is None:
            args.max_order = _env_int(ENV_MAX_ORDER, DEFAULT_MAX_ORDER)
        if args.gram_cap is None:
            args.gram_cap = _env_int(ENV_GRAM_CAP, DEFAULT_GRAM_CAP)
        if args.command == "torus":
            inp = None
            digest = hashlib.sha256(f"torus {args.n} {args.m}".encode()).hexdigest()
        else:
            inp = _Input(args.input)
            digest = inp.digest
        report, ok = COMMANDS[args.command](args, inp)
    except InputError as exc:
        print(f"ybhecke: error: {exc}", file=sys.stderr)
        return 2
    except (VerificationError, YBHeckeError) as exc:
        print(f"ybhecke: verification failed: {exc}", file=sys.stderr)
        return 1
    report = {"command": args.command, "version": __version__, "input_sha256": digest, **report}
    if args.format == "text" and args.command == "render":
        sys.stdout.write(report["diagram"])
    else:
        sys.stdout.write(render_report(report, args.format))
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
