#!/usr/bin/env python3
"""
symloops command line
One JSON document on stdout per run. Exit codes: 0 success, 1 malformed input,
2 domain error (the document is then {"error": message}).
"""

import argparse
import logging
import re
import sys
import time

from .acceptance import run_acceptance
from .arith import RationalField, parse_ring
from .chevalley import RootA
from .config import config
from .errors import InputFormatError, SymloopsError
from .factorization import factor_elementary, path_to_steinberg
from .loops import c_loop, h_loop, sl2_closed_form, verify_path_identity, w_loop, x_loop
from .oracles import (
    cyclic_group_generator,
    klein_four_generators,
    milnor_k2_finite_field,
    schur_multiplier,
    sl2_generators,
    tame_symbol,
)
from .serialization import (
    decode_generators,
    decode_matrix,
    decode_path,
    decode_simplex,
    decode_simplex_poly,
    decode_word,
    dumps,
    encode_factors,
    encode_matrix,
    encode_path,
    encode_presentation,
    encode_simplex,
    encode_simplex_poly,
    encode_word,
    load_document,
    schema,
)
from .simplicial import verify_homotopy_witness
from .steinberg import SymbolProduct, in_k2, tame_invariants

logger = logging.getLogger(__name__)

COMMANDS = {}


def arg(*names, **kwargs):
    return names, kwargs


def command(name, help, *arguments):
    """Register a subcommand handler: fn(args) -> JSON-ready dict"""

    def decorator(fn):
        COMMANDS[name] = (help, arguments, fn)
        return fn

    return decorator


class ArgumentParser(argparse.ArgumentParser):
    """argparse that reports usage errors as InputFormatError instead of exiting"""

    def error(self, message):
        raise InputFormatError(f"{self.prog}: {message}")


def _group_size(text):
    match = re.fullmatch(r"sl(\d+)", str(text).strip().lower())
    if not match or int(match.group(1)) < 2:
        raise InputFormatError(f"group must be sl<n> with n >= 2, got {text!r}")
    return int(match.group(1))


def _root(text):
    try:
        return RootA.parse(text)
    except ValueError:
        raise InputFormatError(f"root must be written i,j, got {text!r}")


GROUP_ARGS = (
    arg("--group", default="sl2", help="sl<n> (default sl2)"),
    arg("--root", default="1,2", help="root i,j (default 1,2)"),
    arg("--ring", default="Q", help="ring descriptor: Q, Fq:<p>^<e> (default Q)"),
)


@command(
    "symbol-loop", "build the symbol loop C_T(u, v)",
    *GROUP_ARGS,
    arg("--u", required=True),
    arg("--v", required=True),
    arg("--closed-form", action="store_true", help="use the SL_2 closed form instead of the product"),
)
def cmd_symbol_loop(args):
    n, root, base = _group_size(args.group), _root(args.root), parse_ring(args.ring)
    u, v = base.parse(args.u), base.parse(args.v)
    if args.closed_form:
        if n != 2 or root != RootA(1, 2):
            raise InputFormatError("--closed-form is the SL_2 formula for the root 1,2")
        return encode_path(sl2_closed_form(u, v, base))
    return encode_path(c_loop(root.check(n), u, v, n, base))


@command("verify-loop", "report the endpoints of a path document", arg("--in", dest="path", required=True))
def cmd_verify_loop(args):
    path = decode_path(load_document(args.path))
    start, end = path.endpoints()
    return {
        "schema": schema("loop-check"),
        "is_path": start.is_identity(),
        "is_loop": start.is_identity() and end.is_identity(),
        "endpoints": [encode_matrix(start), encode_matrix(end)],
    }


FACTOR_PATTERN = re.compile(r"([XWHC])\(([^()]*)\)(\^-1)?")


def parse_path_product(text, root, n, base):
    """Read a product like 'W(2) W(-2)' or 'H(2) H(3) H(6)^-1 C(2,3)^-1'"""
    text = (text or "").strip()
    factors = []
    pos = 0
    for match in FACTOR_PATTERN.finditer(text):
        if text[pos:match.start()].strip():
            raise InputFormatError(f"cannot read {text[pos:match.start()]!r} in {text!r}")
        pos = match.end()
        kind, params, inverse = match.groups()
        values = [base.parse(p) for p in params.split(",")]
        expected = 2 if kind == "C" else 1
        if len(values) != expected:
            raise InputFormatError(f"{kind}(...) takes {expected} parameter(s), got {params!r}")
        if kind == "X":
            path = x_loop(root, values[0], n, base)
        elif kind == "W":
            path = w_loop(root, values[0], n, base)
        elif kind == "H":
            path = h_loop(root, values[0], n, base)
        else:
            path = c_loop(root, values[0], values[1], n, base)
        factors.append(path.inverse() if inverse else path)
    if text[pos:].strip():
        raise InputFormatError(f"cannot read {text[pos:]!r} in {text!r}")
    return factors


@command(
    "verify-identity", "compare two products of X/W/H/C paths",
    *GROUP_ARGS,
    arg("--lhs", required=True, help="e.g. 'W(2) W(-2)'"),
    arg("--rhs", default="", help="empty means the identity"),
)
def cmd_verify_identity(args):
    n, root, base = _group_size(args.group), _root(args.root), parse_ring(args.ring)
    root.check(n)
    lhs = parse_path_product(args.lhs, root, n, base)
    rhs = parse_path_product(args.rhs, root, n, base)
    result = verify_path_identity(lhs, rhs, n, base)
    doc = {"schema": schema("identity-check"), "holds": result.holds}
    if not result.holds:
        ring = lhs[0].ring if lhs else rhs[0].ring
        doc["entry"] = list(result.entry)
        doc["lhs_entry"] = ring.to_json(result.lhs_entry)
        doc["rhs_entry"] = ring.to_json(result.rhs_entry)
    return doc


@command("factor", "factor a matrix document into elementaries", arg("--in", dest="path", required=True))
def cmd_factor(args):
    m = decode_matrix(load_document(args.path))
    return encode_factors(factor_elementary(m), m.n, m.ring)


@command("lift", "lift a path with y(0) = I to a Steinberg word", arg("--in", dest="path", required=True))
def cmd_lift(args):
    word = path_to_steinberg(decode_path(load_document(args.path)))
    return {"schema": schema("lift"), "word": encode_word(word), "is_k2": in_k2(word)}


@command("k2-check", "project a word document and test K_2 membership", arg("--in", dest="path", required=True))
def cmd_k2_check(args):
    word = decode_word(load_document(args.path))
    return {
        "schema": schema("k2-check"),
        "projection_is_identity": in_k2(word),
        "reduced_length": len(word),
        "flags": word.flags,
    }


def _symbol_list(text):
    # "2,3;4,9,-1" -> [(2, 3, 1), (4, 9, -1)]
    Q = RationalField()
    factors = []
    for chunk in text.split(";"):
        parts = [p.strip() for p in chunk.split(",")]
        if len(parts) not in (2, 3):
            raise InputFormatError(f"a symbol is u,v or u,v,exponent, got {chunk!r}")
        try:
            e = int(parts[2]) if len(parts) == 3 else 1
        except ValueError:
            raise InputFormatError(f"bad exponent in symbol {chunk!r}")
        factors.append((Q.parse(parts[0]), Q.parse(parts[1]), e))
    return factors


@command(
    "tame", "tame symbol of {a, b} at p, or tame invariants of a product of symbols",
    arg("--a"), arg("--b"), arg("--p", type=int),
    arg("--symbols", help="product of symbols 'u,v[,e];u,v[,e]'"),
)
def cmd_tame(args):
    Q = RationalField()
    if args.symbols:
        invariants = tame_invariants(SymbolProduct(_symbol_list(args.symbols)))
        return {"schema": schema("tame"), "invariants": {str(p): str(v) for p, v in invariants.items()}}
    if args.a is None or args.b is None or args.p is None:
        raise InputFormatError("tame needs --a, --b and --p (or --symbols)")
    value = tame_symbol(Q.parse(args.a), Q.parse(args.b), args.p)
    return {"schema": schema("tame"), "value": str(value)}


@command("k2m-field", "Milnor K_2 of F_q by Smith normal form", arg("--q", type=int, required=True))
def cmd_k2m_field(args):
    return encode_presentation(milnor_k2_finite_field(args.q))


def _builtin_group(text):
    kind, _, value = text.partition(":")
    if kind == "cyclic" and value.isdigit():
        return cyclic_group_generator(int(value))
    if kind == "klein":
        return klein_four_generators()
    if kind == "sl2" and value.isdigit():
        return sl2_generators(int(value))
    raise InputFormatError(f"unknown group {text!r} (cyclic:<n>, klein, sl2:<p>)")


@command(
    "schur", "Schur multiplier H_2(G, Z) of a finite matrix group",
    arg("--gens", help="generators document"),
    arg("--group", help="built-in group: cyclic:<n>, klein, sl2:<p>"),
    arg("--bound", type=int, default=None, help="order bound (default from SYMLOOPS_ORDER_BOUND)"),
    arg("--timing", action="store_true", help="add wall time to the output"),
)
def cmd_schur(args):
    if bool(args.gens) == bool(args.group):
        raise InputFormatError("schur needs exactly one of --gens and --group")
    gens = decode_generators(load_document(args.gens)) if args.gens else _builtin_group(args.group)
    start = time.perf_counter()
    h2 = schur_multiplier(gens, args.bound)
    extra = {"order": h2.metadata["order"]}
    if args.timing:
        extra["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    return encode_presentation(h2, extra)


@command(
    "simplicial-face", "apply a face (or degeneracy) map to a simplex document",
    arg("--in", dest="path", required=True),
    arg("--i", dest="index", type=int, required=True),
    arg("--degeneracy", action="store_true"),
)
def cmd_simplicial_face(args):
    doc = load_document(args.path)
    if isinstance(doc, dict) and doc.get("schema") == schema("simplex-poly"):
        f = decode_simplex_poly(doc)
        return encode_simplex_poly(f.degeneracy(args.index) if args.degeneracy else f.face(args.index))
    s = decode_simplex(doc)
    return encode_simplex(s.degeneracy(args.index) if args.degeneracy else s.face(args.index))


@command(
    "verify-homotopy", "check a 2-simplex witness for a homotopy of loops",
    arg("--sigma", required=True),
    arg("--from", dest="source", required=True),
    arg("--to", dest="target", required=True),
)
def cmd_verify_homotopy(args):
    sigma = decode_simplex(load_document(args.sigma))
    loop = decode_simplex(load_document(args.source))
    other = decode_simplex(load_document(args.target))
    cert = verify_homotopy_witness(sigma, loop, other)
    return {
        "schema": schema("homotopy-check"),
        "certified": cert.certified,
        "in_moore_complex": cert.in_moore_complex,
        "boundary_matches": cert.boundary_matches,
        "faces": [encode_simplex(f) for f in cert.faces],
    }


@command(
    "reproduce", "run the acceptance suite and print a pass/fail table",
    arg("--quick", action="store_true", help="reduced sizes"),
    arg("--only", action="append", help="criterion key; repeatable"),
    arg("--seed", type=int, default=argparse.SUPPRESS, help="seed for the randomized checks"),
    arg("--timing", action="store_true"),
)
def cmd_reproduce(args):
    seed = config.SEED if args.seed is None else args.seed
    results = run_acceptance(seed=seed, quick=args.quick, only=args.only)
    return {
        "schema": schema("acceptance"),
        "seed": seed,
        "quick": args.quick,
        "passed": all(r.passed for r in results),
        "criteria": [r.as_dict(args.timing) for r in results],
    }


def build_parser():
    parser = ArgumentParser(prog="symloops", description="Symbol loops, Steinberg words and K_2 oracles")
    parser.add_argument("--log-level", default=config.LOG_LEVEL, help="logging level (default from SYMLOOPS_LOG_LEVEL)")
    parser.add_argument("--seed", type=int, default=None, help=f"seed for randomized checks (default {config.SEED})")
    sub = parser.add_subparsers(dest="command", parser_class=ArgumentParser)
    sub.required = True
    for name, (help_text, arguments, _) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        for names, kwargs in arguments:
            p.add_argument(*names, **kwargs)
    return parser


def run(argv=None, out=None):
    """Parse argv, run one subcommand, print its JSON document; returns the exit code"""
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except InputFormatError as e:
        print(dumps({"error": str(e)}), file=out)
        return 1
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING), stream=sys.stderr)
    _, _, handler = COMMANDS[args.command]
    try:
        doc = handler(args)
    except InputFormatError as e:
        logger.error(f"❌ {args.command}: {e}")
        print(dumps({"error": str(e)}), file=out)
        return 1
    except SymloopsError as e:
        logger.error(f"❌ {args.command}: {e}")
        print(dumps({"error": str(e)}), file=out)
        return 2
    print(dumps(doc), file=out)
    if args.command == "reproduce" and not doc["passed"]:
        return 2
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
