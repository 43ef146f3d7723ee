"""Command-line front end: ``fbc -p PRESENTATION SUBCOMMAND ...``.

Exit codes: 0 computed/decided, 2 unknown within budget, 1 usage or input error.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import brinkmann, cfl, oracle, ratlang, twisted
from . import words as fw
from .automorphism import Automorphism
from .centralizer import centralize, conjugators
from .decision import Budget
from .errors import FbcError, InputError
from .group import GroupPresentation
from .words import Alphabet

EXIT_OK, EXIT_ERROR, EXIT_UNKNOWN = 0, 1, 2

_RANK = re.compile(r"^rank\s*=\s*(\d+)$")
_GENS = re.compile(r"^gens\s*=\s*(.+)$")
_PHI = re.compile(r"^phi\s+(\S+)\s*=\s*(.*)$")


def parse_presentation(text: str, path: str = "<string>") -> GroupPresentation:
    """Read ``rank = n``, ``gens = ...`` and one ``phi g = word`` line per generator."""
    rank = names = None
    images: dict[str, tuple[int, str]] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if m := _RANK.match(line):
            rank = int(m.group(1))
        elif m := _GENS.match(line):
            names = m.group(1).split()
        elif m := _PHI.match(line):
            if m.group(1) in images:
                raise InputError(f"image of {m.group(1)} given twice", path, lineno)
            images[m.group(1)] = (lineno, m.group(2))
        else:
            raise InputError(f"cannot parse {raw.strip()!r}", path, lineno)
    if names is None:
        if rank is None:
            raise InputError("missing 'rank' or 'gens' line", path)
        names = list(Alphabet.standard(rank).names)
    if rank is not None and rank != len(names):
        raise InputError(f"rank = {rank} but {len(names)} generators declared", path)
    try:
        alphabet = Alphabet(names)
    except ValueError as exc:
        raise InputError(str(exc), path) from None
    parsed = []
    for name in names:
        if name not in images:
            raise InputError(f"no 'phi {name} = ...' line", path)
        lineno, body = images[name]
        try:
            parsed.append(alphabet.parse(body))
        except FbcError as exc:
            raise InputError(str(exc), path, lineno) from None
    for name in images:
        if name not in alphabet.names:
            raise InputError(f"phi given for unknown generator {name!r}", path, images[name][0])
    try:
        phi = Automorphism(alphabet.rank, parsed)
    except FbcError as exc:
        raise InputError(str(exc), path) from None
    return GroupPresentation(alphabet, phi)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_ERROR)


class _Out:
    def __init__(self, porcelain: bool):
        self.porcelain = porcelain

    def kv(self, key: str, value, human: str | None = None):
        if self.porcelain:
            print(f"{key} {value}")
        else:
            print(human if human is not None else f"{key}: {value}")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--radius", type=int, default=argparse.SUPPRESS,
                        help="conjugator ball radius (default 6)")
    common.add_argument("--kmax", type=int, default=argparse.SUPPRESS,
                        help="phi exponent range (default 12)")
    common.add_argument("--porcelain", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable 'key value' output")

    p = _Parser(prog="fbc", description=__doc__.splitlines()[0])
    p.add_argument("-p", "--presentation", required=True, help="presentation file")
    p.add_argument("--radius", type=int, default=6)
    p.add_argument("--kmax", type=int, default=12)
    p.add_argument("--porcelain", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help_, *args):
        sp = sub.add_parser(name, help=help_, parents=[common])
        for a in args:
            sp.add_argument(a)
        return sp

    cmd("nf", "normal form of an element", "element")
    sp = sub.add_parser("mul", help="product of elements", parents=[common])
    sp.add_argument("elements", nargs="+")
    cmd("commute", "do two elements commute", "g", "h")
    cmd("conjugacy", "conjugacy of two words in F_n", "x", "y")
    sp = cmd("twisted", "search z with x = (z^-1 phi^k) y z", "x", "y")
    sp.add_argument("--power", type=int, default=1, help="twist by phi^POWER (default 1)")
    cmd("brinkmann", "search k with x phi^k ~ y", "x", "y")
    cmd("ea", "least positive exponent in E_a", "x", "a")
    sp = cmd("centralizer", "generators of the centralizer", "element")
    sp.add_argument("--nfa", metavar="PATH", help="also write the centralizer automaton to PATH")
    cmd("conjugators", "solutions of w^-1 g w = h", "g", "h")
    cmd("cf-check", "conjugacy with a context-free constraint", "g", "h", "grammar")
    sp = sub.add_parser("oracle", help="brute-force ground truth", parents=[common])
    sp.add_argument("what", choices=["ball", "centralizer", "twisted-class", "ea"])
    sp.add_argument("args", nargs="*")
    sp.add_argument("-A", type=int, default=2, help="max |t-exponent|")
    sp.add_argument("-L", type=int, default=2, help="max word length")
    return p


def _centralizer_lines(out: _Out, C) -> None:
    for gen in C.generators:
        out.kv("gen", gen, human=str(gen))
    out.kv("status", C.status)


def _run(args, out: _Out) -> int:
    pres = parse_presentation(Path(args.presentation).read_text(), args.presentation)
    budget = Budget(radius=args.radius, kmax=args.kmax)
    al = pres.alphabet
    cmd = args.command

    if cmd == "nf":
        out.kv("element", pres.parse(args.element), human=str(pres.parse(args.element)))
        return EXIT_OK
    if cmd == "mul":
        g = pres.identity()
        for text in args.elements:
            g = g * pres.parse(text)
        out.kv("element", g, human=str(g))
        return EXIT_OK
    if cmd == "commute":
        from .group import commute
        res = "true" if commute(pres.parse(args.g), pres.parse(args.h)) else "false"
        out.kv("result", res, human=res)
        return EXIT_OK
    if cmd == "conjugacy":
        z = fw.conjugacy_witness(al.parse(args.x), al.parse(args.y))
        if z is None:
            out.kv("result", "no", human="not conjugate")
        else:
            out.kv("z", al.format(z), human=f"z={al.format(z)}")
        return EXIT_OK
    if cmd == "twisted":
        dec = twisted.twisted_conjugator(al.parse(args.x), al.parse(args.y),
                                         pres.phi_power(args.power), budget)
        if dec.is_yes:
            out.kv("z", al.format(dec.certificate), human=f"z={al.format(dec.certificate)}")
            return EXIT_OK
        if dec.is_no:
            out.kv("result", "no", human="no")
            return EXIT_OK
        out.kv("result", "unknown", human="unknown")
        return EXIT_UNKNOWN
    if cmd == "brinkmann":
        dec = brinkmann.brinkmann_cp(al.parse(args.x), al.parse(args.y), pres, budget.kmax)
        if dec.is_yes:
            out.kv("k", dec.certificate, human=f"k={dec.certificate}")
            return EXIT_OK
        out.kv("result", "unknown", human="unknown")
        return EXIT_UNKNOWN
    if cmd == "ea":
        try:
            a = int(args.a)
        except ValueError:
            raise InputError(f"exponent must be an integer, got {args.a!r}") from None
        if a == 0:
            raise InputError("ea needs a nonzero exponent")
        st = twisted.compute_ea(al.parse(args.x), pres, a, budget)
        out.kv("e_a", st.e_a, human=f"e_a={st.e_a}")
        out.kv("z", al.format(st.witness.z), human=f"z={al.format(st.witness.z)}")
        unresolved = " ".join(map(str, st.unresolved_divisors)) or "none"
        out.kv("unresolved", unresolved)
        return EXIT_OK if st.exact else EXIT_UNKNOWN
    if cmd == "centralizer":
        C = centralize(pres.parse(args.element), budget)
        _centralizer_lines(out, C)
        if args.nfa:
            Path(args.nfa).write_text(ratlang.build_centralizer_nfa(C).to_text())
        return EXIT_OK if C.exact else EXIT_UNKNOWN
    if cmd == "conjugators":
        dec = conjugators(pres.parse(args.g), pres.parse(args.h), budget)
        if dec.is_no:
            out.kv("result", "no", human="not conjugate")
            return EXIT_OK
        if dec.is_unknown:
            out.kv("result", "unknown", human="unknown")
            return EXIT_UNKNOWN
        cs = dec.certificate
        out.kv("witness", cs.witness)
        _centralizer_lines(out, cs.centralizer)
        return EXIT_OK if cs.centralizer.exact else EXIT_UNKNOWN
    if cmd == "cf-check":
        grammar_path = args.grammar
        try:
            G = cfl.parse_cfg(Path(grammar_path).read_text(), pres.letters())
        except FbcError as exc:
            raise InputError(str(exc), grammar_path) from None
        out.kv("note", cfl.PRECONDITION, human=cfl.PRECONDITION)
        dec = cfl.constrained_conjugacy(pres.parse(args.g), pres.parse(args.h), G, budget)
        if dec.is_yes:
            word = " ".join(dec.certificate) or "1"
            out.kv("result", "yes", human="yes")
            out.kv("word", word)
            return EXIT_OK
        if dec.is_no:
            out.kv("result", "no", human="no")
            return EXIT_OK
        out.kv("result", "unknown", human="unknown")
        return EXIT_UNKNOWN
    if cmd == "oracle":
        return _run_oracle(args, pres, out)
    raise InputError(f"unknown command {cmd!r}")


def _run_oracle(args, pres: GroupPresentation, out: _Out) -> int:
    al = pres.alphabet
    need = {"ball": 0, "centralizer": 1, "twisted-class": 1, "ea": 2}[args.what]
    if len(args.args) != need:
        raise InputError(f"oracle {args.what} takes {need} argument(s)")
    if args.what == "ball":
        for h in oracle.ball(pres, args.A, args.L).elements:
            out.kv("element", h, human=str(h))
    elif args.what == "centralizer":
        for h in oracle.brute_centralizer(pres.parse(args.args[0]), args.A, args.L):
            out.kv("element", h, human=str(h))
    elif args.what == "twisted-class":
        for w in oracle.brute_twisted_class(al.parse(args.args[0]), pres.phi, args.L):
            out.kv("word", al.format(w), human=al.format(w))
    else:
        ks = oracle.brute_Ea(al.parse(args.args[0]), pres, int(args.args[1]), args.kmax, args.L)
        out.kv("exponents", " ".join(map(str, ks)))
    return EXIT_OK


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = _Out(args.porcelain)
    try:
        return _run(args, out)
    except OSError as exc:
        print(f"fbc: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except FbcError as exc:
        print(f"fbc: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
