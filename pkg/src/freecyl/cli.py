"""Command-line front end.

Exit codes: 0 true/success, 1 false, 2 usage or validation error, 3 budget
exceeded.  ``--json`` switches any subcommand to a versioned machine format.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .automorphism import (
    AutomorphismError,
    BudgetExceeded,
    empirical_cancellation,
    load_automorphism,
    size,
    tight_cancellation,
)
from .double import (
    DoubleCylinderError,
    RectanglePair,
    RectangleUnion,
    double_image,
    double_image_closed,
    split_unit,
)
from .image import bounds_for, dual_map, image_adaptive, image_formula, plan
from .multicyl import MultiCylinder, cylinders_equal, minimize
from .oracle import verify_double_image, verify_image
from .words import Alphabet, ReducedWord, WordError

SCHEMA = 1
EXIT_TRUE, EXIT_FALSE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits on its own; route that through our exit-code contract
    def error(self, message):
        raise UsageError(message)


def _need(s: argparse.ArgumentParser, flag: str) -> None:
    # required flags are checked after parsing so that unknown flags are
    # reported first
    s.set_defaults(_required=(s.get_default("_required") or ()) + (flag,))


def _check_required(args) -> None:
    missing = [f for f in getattr(args, "_required", ())
               if getattr(args, "wordset" if f == "--set" else f[2:].replace("-", "_")) is None]
    if missing:
        raise UsageError(f"missing required flag {', '.join(missing)}")


def _build() -> argparse.ArgumentParser:
    p = _Parser(prog="freecyl", description=__doc__.splitlines()[0], allow_abbrev=False)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help_):
        # no prefix matching: a misspelt flag must fail, not resolve silently
        s = sub.add_parser(name, help=help_, allow_abbrev=False)
        s.add_argument("--json", action="store_true", help="machine-readable output")
        return s

    def auto(s, required=True):
        s.add_argument("--auto", metavar="FILE", help="automorphism file")
        if required:
            _need(s, "--auto")

    def rank(s):
        s.add_argument("--rank", type=int, help="alphabet rank when no --auto is given (default 2)")

    s = cmd("image", "image of the cylinder of a word")
    auto(s)
    s.add_argument("--word")
    _need(s, "--word")
    s.add_argument("--method", choices=("adaptive", "formula"), default="adaptive")
    s.add_argument("--raw", action="store_true", help="skip the final minimization")

    s = cmd("reduce", "minimal index set of a word set")
    s.add_argument("--set", dest="wordset")
    _need(s, "--set")
    auto(s, required=False)
    rank(s)

    s = cmd("equal", "do two word sets define the same multi-cylinder")
    s.add_argument("--left")
    _need(s, "--left")
    s.add_argument("--right")
    _need(s, "--right")
    auto(s, required=False)
    rank(s)

    s = cmd("dual", "dual map of a word")
    auto(s)
    s.add_argument("--word")
    _need(s, "--word")

    s = cmd("double-image", "image of a double cylinder")
    auto(s)
    s.add_argument("--pair")
    _need(s, "--pair")
    s.add_argument("--closed", action="store_true", help="use the closed formula")

    s = cmd("split", "split [1, x] into rectangles")
    s.add_argument("--letter")
    _need(s, "--letter")
    s.add_argument("--side", choices=("right", "left"), default="right",
                   help="left splits [x, 1] instead")
    auto(s, required=False)
    rank(s)

    s = cmd("constants", "size and cancellation constants")
    auto(s)
    s.add_argument("--empirical-depth", type=int, metavar="D")

    s = cmd("verify", "certify that a word set is the image of a cylinder")
    auto(s)
    s.add_argument("--word")
    _need(s, "--word")
    s.add_argument("--set", dest="wordset", help="claimed image (default: read stdin)")

    s = cmd("verify-double", "certify a union of double cylinders as an image")
    auto(s)
    s.add_argument("--pair")
    _need(s, "--pair")
    s.add_argument("--claim", help="claimed pairs (default: read stdin)")
    s.add_argument("--depth", type=int, default=2, help="starting prefix depth")
    return p


# -- helpers ------------------------------------------------------------------

def _alphabet(args) -> Alphabet:
    if getattr(args, "auto", None):
        al = load_automorphism(args.auto).alphabet
        if args.rank is not None and args.rank != al.rank:
            raise UsageError(f"--rank {args.rank} disagrees with the automorphism rank {al.rank}")
        return al
    return Alphabet.of_rank(2 if args.rank is None else args.rank)


def _set_json(U: MultiCylinder) -> list[str]:
    return [str(w) for w in U.sorted_words()]


def _pairs_json(R: RectangleUnion) -> list[list[str]]:
    return [[str(p.left), str(p.right)] for p in R]


def _read_stdin(what: str) -> str:
    if sys.stdin is None or sys.stdin.isatty():
        raise UsageError(f"no {what} given and nothing on stdin")
    return sys.stdin.read()


def _claim_text(text: str) -> str:
    # accept the JSON emitted by ``image --json`` as well as plain text
    s = text.strip()
    if s.startswith("{\""):
        data = json.loads(s)
        return "{" + ", ".join(data["result"]["set"]) + "}"
    return s


# -- subcommands --------------------------------------------------------------

def _image(args):
    phi = load_automorphism(args.auto)
    u = ReducedWord.parse(args.word, phi.alphabet)
    if args.method == "formula":
        consts = plan(phi, bounds_for(phi))
        out = image_formula(phi, u, consts, raw=args.raw)
    else:
        out = image_adaptive(phi, u, raw=args.raw)
    return EXIT_TRUE, str(out), {"set": _set_json(out), "minimal": not args.raw}


def _reduce(args):
    al = _alphabet(args)
    out = minimize(MultiCylinder.parse(args.wordset, al))
    return EXIT_TRUE, str(out), {"set": _set_json(out)}


def _equal(args):
    al = _alphabet(args)
    eq = cylinders_equal(MultiCylinder.parse(args.left, al), MultiCylinder.parse(args.right, al))
    return (EXIT_TRUE if eq else EXIT_FALSE), str(eq).lower(), {"equal": eq}


def _dual(args):
    phi = load_automorphism(args.auto)
    out = dual_map(phi, ReducedWord.parse(args.word, phi.alphabet))
    return EXIT_TRUE, str(out), {"set": _set_json(out)}


def _double(args):
    phi = load_automorphism(args.auto)
    pr = RectanglePair.parse(args.pair, phi.alphabet)
    fn = double_image_closed if args.closed else double_image
    out = fn(phi, pr.left, pr.right)
    return EXIT_TRUE, str(out), {"pairs": _pairs_json(out)}


def _split(args):
    al = _alphabet(args)
    if len(args.letter) != 1:
        raise WordError(f"--letter expects a single letter, got {args.letter!r}")
    out = split_unit(args.letter, al, side=args.side)
    return EXIT_TRUE, str(out), {"pairs": _pairs_json(out)}


def _constants(args):
    phi = load_automorphism(args.auto)
    s = size(phi)
    tight = tight_cancellation(phi)
    data = {
        "S": s,
        "certified_fwd": tight.certified_fwd,
        "certified_bwd": tight.certified_bwd,
        "exact_fwd": tight.exact_fwd,
        "exact_bwd": tight.exact_bwd,
    }
    lines = [
        f"S = {s}",
        f"certified C(phi) <= {tight.certified_fwd}, C(phi^-1) <= {tight.certified_bwd}",
        f"exact C(phi) = {tight.exact_fwd}, C(phi^-1) = {tight.exact_bwd}",
    ]
    if args.empirical_depth is not None:
        emp = empirical_cancellation(phi, args.empirical_depth)
        data.update(empirical_fwd=emp.empirical_fwd, empirical_bwd=emp.empirical_bwd,
                    empirical_depth=emp.empirical_depth)
        lines.append(f"empirical defect (depth {emp.empirical_depth}): "
                     f"fwd {emp.empirical_fwd}, bwd {emp.empirical_bwd} (lower bounds)")
    return EXIT_TRUE, "\n".join(lines), data


def _verify(args):
    phi = load_automorphism(args.auto)
    u = ReducedWord.parse(args.word, phi.alphabet)
    text = args.wordset if args.wordset is not None else _claim_text(_read_stdin("--set"))
    # representation does not matter to the set; the oracle wants an antichain
    claim = minimize(MultiCylinder.parse(text, phi.alphabet))
    ok = verify_image(phi, u, claim)
    return (EXIT_TRUE if ok else EXIT_FALSE), str(ok).lower(), {"certified": ok}


def _verify_double(args):
    phi = load_automorphism(args.auto)
    pr = RectanglePair.parse(args.pair, phi.alphabet)
    text = args.claim if args.claim is not None else _read_stdin("--claim")
    s = text.strip()
    if s.startswith("{\""):
        text = " ".join(f"[{a}, {b}]" for a, b in json.loads(s)["result"]["pairs"])
    claim = RectangleUnion.parse(text, phi.alphabet)
    ok = verify_double_image(phi, pr.left, pr.right, claim, L=args.depth)
    return (EXIT_TRUE if ok else EXIT_FALSE), str(ok).lower(), {"certified": ok}


_COMMANDS = {
    "image": _image,
    "reduce": _reduce,
    "equal": _equal,
    "dual": _dual,
    "double-image": _double,
    "split": _split,
    "constants": _constants,
    "verify": _verify,
    "verify-double": _verify_double,
}


def _emit(args, code: int, text: str, data: Optional[dict], error: Optional[str] = None):
    if getattr(args, "json", False):
        payload = {"schema": SCHEMA, "command": args.command, "exit": code}
        if error is None:
            payload["result"] = data
        else:
            payload["error"] = error
        print(json.dumps(payload, sort_keys=True))
    elif error is None:
        print(text)
    else:
        print(f"error: {error}", file=sys.stderr)


def run(argv: Optional[list[str]] = None) -> int:
    parser = _build()
    try:
        args = parser.parse_args(argv)
        _check_required(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        code, text, data = _COMMANDS[args.command](args)
    except BudgetExceeded as e:
        _emit(args, EXIT_BUDGET, "", None, str(e))
        return EXIT_BUDGET
    except (UsageError, WordError, AutomorphismError, DoubleCylinderError, ValueError, OSError) as e:
        _emit(args, EXIT_USAGE, "", None, str(e))
        return EXIT_USAGE
    _emit(args, code, text, data)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
