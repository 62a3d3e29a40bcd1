"""Command-line entry point.

Exit status: 0 success, 1 usage error, 2 operation failure (no cover,
rejected witness, failed attack), 3 malformed input file.
"""

import argparse
import logging
import os
import sys
import tempfile

from . import attack, clt, witness
from .errors import (FormatError, ParameterError, PuzzleError, SearchLimitExceeded,
                     SolutionError, WitnessError)
from .exact_cover import (DEFAULT_NODE_LIMIT, ExactCoverInstance, solve, verify,
                          witness_from_text, witness_to_text)
from .reductions import (parse_grid, parse_pentomino, parse_sudoku, pentomino_to_cover,
                         sudoku_to_cover, sudoku_witness)

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_FORMAT = 0, 1, 2, 3

# estimates above this many bytes are labelled stretch scale
STRETCH_BYTES = 1 << 20


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def write_atomic(path: str, data) -> None:
    if isinstance(data, str):
        data = data.encode()
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read(path: str, binary=False):
    with open(path, "rb" if binary else "r") as fh:
        return fh.read()


def _seed(text: str) -> bytes:
    try:
        seed = bytes.fromhex(text)
    except ValueError:
        raise UsageError(f"seed must be hex, got {text!r}") from None
    if not seed:
        raise UsageError("seed must be non-empty")
    return seed


def cmd_reduce(args) -> int:
    text = _read(args.input)
    if args.kind == "sudoku":
        instance, _ = sudoku_to_cover(parse_sudoku(text))
    else:
        instance, _ = pentomino_to_cover(parse_pentomino(text))
    write_atomic(args.output, instance.to_text())
    print(f"{instance.universe_size} elements, {len(instance.sets)} sets -> {args.output}")
    return EXIT_OK


def cmd_solve(args) -> int:
    instance = ExactCoverInstance.from_text(_read(args.cover))
    try:
        found = solve(instance, node_limit=args.limit)
    except SearchLimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if found is None:
        print("error: no exact cover exists", file=sys.stderr)
        return EXIT_FAIL
    line = witness_to_text(found)
    if args.output:
        write_atomic(args.output, line)
    else:
        sys.stdout.write(line)
    return EXIT_OK


def cmd_encrypt(args) -> int:
    instance = ExactCoverInstance.from_text(_read(args.cover))
    try:
        bits = witness.bits_from_hex(args.message_hex)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ct, state = witness.encrypt_with_state(instance, bits, args.lam, _seed(args.seed))
    write_atomic(args.output, witness.serialize(ct))
    if args.keep_secrets:
        write_atomic(args.keep_secrets, state.secrets_text())
    del state
    print(f"encrypted {len(bits)} bits over {instance.universe_size} elements "
          f"(x0 is {ct.pp.x0.bit_length()} bits) -> {args.output}")
    return EXIT_OK


def _witness_for(args, ct):
    if args.witness:
        return witness_from_text(_read(args.witness))
    puzzle = parse_sudoku(_read(args.puzzle))
    instance, cmap = sudoku_to_cover(puzzle)
    if instance != ct.instance:
        raise SolutionError("puzzle does not match the ciphertext's cover instance")
    grid = parse_grid(_read(args.sudoku_solution), puzzle.n)
    return sudoku_witness(puzzle, grid, cmap)


def cmd_decrypt(args) -> int:
    if bool(args.witness) == bool(args.puzzle):
        raise UsageError("give either --witness or --puzzle with --sudoku-solution")
    if args.puzzle and not args.sudoku_solution:
        raise UsageError("--puzzle needs --sudoku-solution")
    ct = witness.deserialize(_read(args.ct, binary=True))
    try:
        w = _witness_for(args, ct)
        bits = witness.decrypt(ct, w)
    except (SolutionError, WitnessError) as exc:
        print(f"witness rejected: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if bits is None:
        print("witness rejected", file=sys.stderr)
        return EXIT_FAIL
    out = witness.bits_to_hex(bits) if len(bits) % 4 == 0 else "".join(map(str, bits))
    if args.output:
        write_atomic(args.output, out + "\n")
    else:
        print(out)
    return EXIT_OK


def cmd_attack(args) -> int:
    if args.mode == "demo":
        inst, planted = attack.generate_crt_acd(args.n, args.eta, args.eps, _seed(args.seed))
        result = attack.attack_crt_acd(inst, max_retries=args.retries)
        sys.stdout.write(attack.report(result))
        if result.ok and result.primes != tuple(sorted(planted)):
            print("error: recovered primes differ from the planted ones", file=sys.stderr)
            return EXIT_FAIL
        return EXIT_OK if result.ok else EXIT_FAIL

    if args.pp:
        x0, pzt, _, pub = attack.symmetric_from_text(_read(args.pp, binary=True))
    elif args.seed:
        params = clt.attack_profile(args.lam, args.kappa, n_p=args.primes)
        _, pp, pub = clt.instance_gen(params, _seed(args.seed))
        x0, pzt = pp.x0, pp.pzt
        if args.emit_pp:
            write_atomic(args.emit_pp, attack.symmetric_to_text(x0, pzt, pp.nu, pub))
    else:
        raise UsageError("attack clt needs --pp FILE or --seed HEX")
    result = attack.attack_clt(x0, pzt, pub, pub.kappa)
    sys.stdout.write(attack.report(result))
    return EXIT_OK if result.ok else EXIT_FAIL


def params_estimate(lam: int, universe: int, sets: int = None, bits: int = 256) -> str:
    p = clt.derive_params(lam, universe)
    sets = universe if sets is None else sets
    elem_bits = p.n_p * p.eta
    size = (sets + bits) * elem_bits // 8
    lines = [f"{k:<10}{getattr(p, k)}" for k in
             ("lam", "U", "n_p", "eta", "alpha", "rho", "beta", "nu", "D")]
    lines.append(f"{'x0 bits':<10}{elem_bits}")
    note = "  (stretch scale)" if size >= STRETCH_BYTES else ""
    lines.append(f"{'estimate':<10}~{size} bytes for {sets} sets and {bits} message bits{note}")
    return "\n".join(lines) + "\n"


def cmd_params(args) -> int:
    try:
        sys.stdout.write(params_estimate(args.lam, args.universe, args.sets, args.bits))
    except ParameterError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="cltwe", description="Witness encryption over Exact Cover puzzles.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("reduce", help="turn a puzzle file into an exact cover file")
    p.add_argument("kind", choices=["sudoku", "pentomino"])
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="find an exact cover with Algorithm X")
    p.add_argument("cover")
    p.add_argument("--limit", type=int, default=DEFAULT_NODE_LIMIT)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("encrypt", help="encrypt a hex message against a cover instance")
    p.add_argument("--cover", required=True)
    p.add_argument("--message-hex", required=True)
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--seed", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--keep-secrets", metavar="FILE",
                   help="debug only: also write the trapdoor (lets anyone decrypt)")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt with an exact cover or a solved sudoku")
    p.add_argument("--ct", required=True)
    p.add_argument("--witness")
    p.add_argument("--puzzle")
    p.add_argument("--sudoku-solution")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("attack", help="zeroizing attack demos")
    p.add_argument("mode", choices=["demo", "clt"])
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--eta", type=int, default=64)
    p.add_argument("--eps", type=int, default=16)
    p.add_argument("--retries", type=int, default=10)
    p.add_argument("--seed")
    p.add_argument("--pp", help="symmetric public-parameter file to attack")
    p.add_argument("--emit-pp", help="write the generated symmetric public file here")
    p.add_argument("--lambda", dest="lam", type=int, default=12)
    p.add_argument("--kappa", type=int, default=3)
    p.add_argument("--primes", type=int, default=None)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("params", help="print derived parameters and a size estimate")
    p.add_argument("--lambda", dest="lam", type=int, required=True)
    p.add_argument("--universe", type=int, required=True)
    p.add_argument("--sets", type=int, default=None)
    p.add_argument("--bits", type=int, default=256)
    p.set_defaults(func=cmd_params)
    return ap


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "attack" and args.mode == "demo" and not args.seed:
            raise UsageError("attack demo needs --seed")
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParameterError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FormatError, PuzzleError) as exc:
        print(f"format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except (SolutionError, WitnessError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
