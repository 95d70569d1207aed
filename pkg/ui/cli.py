"""
Command-line front end.

Exit codes: 0 success, 2 invalid parameters, 3 unreadable or malformed key
file, 4 message outside the scheme's message space. stdout carries data only;
diagnostics go to stderr.
"""
import argparse
import logging
import random
import secrets
import sys
from typing import List, Optional, Tuple

from algorithm.discrete_log import DlogMethod, discrete_log
from algorithm.number_theory import euler_phi, find_primitive_root, iterated_phi, multiplicative_order
from algorithm.unit_groups import build_tower, enumerate_u_k, iso_table
from core.bench import (
    BenchConfig,
    find_comparable_moduli,
    format_summary,
    run_benchmark,
    summarize,
    write_csv,
    write_gnuplot_curves,
)
from core.elgamal_classic import ClassicCiphertext, ClassicKeyPair, ClassicPublicKey, classic_decrypt, classic_encrypt, classic_keygen
from core.elgamal_u2 import (
    U2Case,
    U2Ciphertext,
    U2KeyPair,
    U2PublicKey,
    u2_decode_message,
    u2_decrypt,
    u2_encode_message,
    u2_encrypt,
    u2_keygen,
    u2_message_space,
)
from core.elgamal_u3 import U3Ciphertext, U3KeyPair, u3_decode_message, u3_decrypt, u3_encode_message, u3_encrypt, u3_keygen
from core.errors import KeyFileError, MessageOutOfRange, OutOfRange, UnitsToolkitError
from core.keyfile import SCHEMES, load_key, save_key, key_to_file
from core.settings import Settings, load_settings

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_KEYFILE = 3
EXIT_MESSAGE = 4

# Enumerations larger than this are summarized by their size only.
MAX_PRINTED_ELEMENTS = 1000


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)


def _rng(seed: Optional[int]):
    return random.Random(seed) if seed is not None else secrets.SystemRandom()


def _print_set(label: str, values) -> None:
    values = sorted(values)
    if len(values) > MAX_PRINTED_ELEMENTS:
        print(f"|{label}| = {len(values)}")
    else:
        print(f"{label} = {{{', '.join(str(v) for v in values)}}}")


def cmd_explore(args, settings: Settings) -> int:
    n, k = args.n, args.k
    if n < 2:
        raise OutOfRange(f"explore needs n >= 2, got {n}")
    # Listing walks all of U(Z_n); past the limit only the group order is shown.
    listable = euler_phi(n) <= settings.enumeration_limit
    if k == 3:
        tower = build_tower(n, settings.log_table_limit)
        header = [
            f"n = {tower.n}",
            f"phi = {tower.phi1}, {tower.phi2}, {tower.phi3}",
            f"g1 = {tower.g1}, g2 = {tower.g2}, g3 = {tower.g3}",
            f"g = {tower.g}",
        ]
    else:
        moduli = [iterated_phi(n, level) for level in range(k)]
        generators = [find_primitive_root(m) for m in moduli]
        header = [
            f"n = {n}",
            f"phi = {', '.join(str(euler_phi(m)) for m in moduli)}",
            ", ".join(f"g{i + 1} = {g}" for i, g in enumerate(generators)),
        ]
    elements = enumerate_u_k(n, k, settings.enumeration_limit) if listable else None

    print("\n".join(header))
    label = f"U^{k}(Z_{n})"
    if elements is None:
        logger.info(f"φ({n}) exceeds the enumeration limit {settings.enumeration_limit}; printing |{label}| only")
        print(f"|{label}| = {iterated_phi(n, k)}")
        return EXIT_OK
    _print_set(label, elements)
    if k == 3:
        for element, residue in iso_table(tower, settings.enumeration_limit):
            print(f"f({element}) = {residue}")
    return EXIT_OK


def cmd_keygen(args, settings: Settings) -> int:
    rng = _rng(args.seed)
    forced = args.force_private
    if args.scheme == "classic":
        key = classic_keygen(args.n, rng, a=forced)
    elif args.scheme in ("u2-case1", "u2-case2"):
        key = u2_keygen(args.n, U2Case(args.scheme), rng, a=forced)
    else:
        key = u3_keygen(build_tower(args.n, settings.log_table_limit), rng, b=forced)

    if args.out:
        save_key(f"{args.out}.pub", key, "public")
        save_key(f"{args.out}.key", key, "private")
    else:
        sys.stdout.write(key_to_file(key).serialize())
    return EXIT_OK


def _parse_pair(text: str) -> Tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise OutOfRange(f"ciphertext must be two integers separated by a comma, got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError:
        raise OutOfRange(f"ciphertext components must be decimal integers, got {text!r}") from None


def cmd_encrypt(args, settings: Settings) -> int:
    key = load_key(args.pubkey)
    rng = _rng(args.seed)
    index = args.message
    nonce = args.force_nonce

    if isinstance(key, (ClassicPublicKey, ClassicKeyPair)):
        pub = key.public if isinstance(key, ClassicKeyPair) else key
        c = classic_encrypt(pub, index, rng, k=nonce)
        pair = (c.gamma, c.delta)
    elif isinstance(key, U2PublicKey):
        pub = key.public if isinstance(key, U2KeyPair) else key
        size = len(u2_message_space(pub, settings.enumeration_limit))
        if not 0 <= index < size:
            raise MessageOutOfRange(f"message index must lie in [0, {size}), got {index}")
        c = u2_encrypt(pub, u2_encode_message(pub, index), rng, k=nonce)
        pair = (c.q, c.delta)
    else:
        pub = key.public if isinstance(key, U3KeyPair) else key
        if not 0 <= index < pub.tower.phi3:
            raise MessageOutOfRange(f"message index must lie in [0, {pub.tower.phi3}), got {index}")
        c = u3_encrypt(pub, u3_encode_message(pub.tower, index), rng, a=nonce)
        pair = (c.A.value, c.X.value)

    print(f"{pair[0]},{pair[1]}")
    return EXIT_OK


def cmd_decrypt(args, settings: Settings) -> int:
    key = load_key(args.privkey)
    x, y = _parse_pair(args.ciphertext)

    if isinstance(key, ClassicKeyPair):
        m = classic_decrypt(key, ClassicCiphertext(x, y))
    elif isinstance(key, U2KeyPair):
        m = u2_decode_message(key.public, u2_decrypt(key, U2Ciphertext(x, y)))
    elif isinstance(key, U3KeyPair):
        m = u3_decode_message(key.tower, u3_decrypt(key, U3Ciphertext(x, y)))
    else:
        raise KeyFileError(f"{args.privkey} holds a public key; decryption needs the private key file")

    print(m)
    return EXIT_OK


def cmd_bench(args, settings: Settings) -> int:
    runs = args.runs if args.runs is not None else settings.bench_runs
    slack = args.slack if args.slack is not None else settings.bench_slack
    target = args.orders if args.orders is not None else settings.bench_target_order
    max_n = args.max_n if args.max_n is not None else settings.bench_max_n

    n_u2, n_u3 = find_comparable_moduli(target, slack, max_n)
    config = BenchConfig(n_u2, n_u3, runs, args.seed, slack)
    records = run_benchmark(config)
    summary = summarize(records) if records else None

    if args.csv:
        with open(args.csv, "w", encoding="utf-8", newline="") as fh:
            write_csv(records, fh, summary)
        logger.info(f"Wrote {len(records)} records to {args.csv}")
        if summary is not None:
            print(f"# n_u2 = {n_u2}, n_u3 = {n_u3}")
            for line in format_summary(summary):
                print(f"# {line}")
    else:
        write_csv(records, sys.stdout, summary)
    if args.gnuplot:
        write_gnuplot_curves(records, args.gnuplot)
    return EXIT_OK


def cmd_dlog(args, settings: Settings) -> int:
    order = args.order if args.order is not None else multiplicative_order(args.g, args.m)
    method = DlogMethod(args.method) if args.method else None
    print(discrete_log(args.g, args.target, args.m, order, method, settings.brute_force_limit))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="units-elgamal",
        description="ElGamal over the first, second and third groups of units of Z_n.",
    )
    parser.add_argument("--config", help="JSON settings file (default: $UNITS_TOOLKIT_CONFIG)")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress to stderr (-vv for debug detail)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("explore", help="print the totient tower, U^k(Z_n) and the f table")
    p.add_argument("n", type=int)
    p.add_argument("k", type=int, nargs="?", default=3, choices=(1, 2, 3))
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("scheme", choices=SCHEMES)
    p.add_argument("n", type=int, help="modulus (the prime p for classic)")
    p.add_argument("--seed", type=int)
    p.add_argument("--out", metavar="PREFIX", help="write PREFIX.pub and PREFIX.key")
    p.add_argument("--force-private", type=int, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt an integer message")
    p.add_argument("pubkey")
    p.add_argument("message", type=int,
                   help="the plaintext for classic; the index into the message group otherwise")
    p.add_argument("--seed", type=int)
    p.add_argument("--force-nonce", type=int, help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a 'x,y' ciphertext")
    p.add_argument("privkey")
    p.add_argument("ciphertext")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("bench", help="time generator powers in U^2 against U^3")
    p.add_argument("--orders", type=int, help="minimum group order of both groups")
    p.add_argument("--slack", type=int, help="largest allowed difference of the two orders")
    p.add_argument("--runs", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--gnuplot", metavar="PREFIX", help="write PREFIX_u2.dat and PREFIX_u3.dat")
    p.add_argument("--max-n", type=int, help="search bound for the moduli")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("dlog", help="solve g^e = t (mod m)")
    p.add_argument("g", type=int)
    p.add_argument("target", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--order", type=int, help="order of g (computed when omitted)")
    p.add_argument("--method", choices=[method.value for method in DlogMethod])
    p.set_defaults(func=cmd_dlog)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        settings = load_settings(args.config)
        return args.func(args, settings)
    except MessageOutOfRange as e:
        logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_MESSAGE
    except (KeyFileError, OSError) as e:
        logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_KEYFILE
    except UnitsToolkitError as e:
        logger.debug("command failed", exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
