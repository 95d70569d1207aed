"""
Line-oriented key files.

    scheme = u3
    visibility = private
    n = 81
    g = 50
    B = 5
    b = 4

The first two lines are always ``scheme`` and ``visibility``; the rest are
the scheme's integer entries in a fixed order, decimal, one per line.
"""
import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from algorithm.number_theory import is_prime, is_primitive_root
from algorithm.unit_groups import build_tower, op_pow
from core.elgamal_classic import ClassicKeyPair, ClassicPublicKey
from core.elgamal_u2 import U2Case, U2KeyPair, U2PublicKey, check_u2_public
from core.elgamal_u3 import U3KeyPair, U3PublicKey
from core.errors import KeyFileError, UnitsToolkitError

logger = logging.getLogger(__name__)

SCHEMES = ("classic", "u2-case1", "u2-case2", "u3")
VISIBILITIES = ("public", "private")

PUBLIC_FIELDS: Dict[str, Tuple[str, ...]] = {
    "classic": ("p", "alpha", "alpha_a"),
    "u2-case1": ("n", "theta1", "s", "f"),
    "u2-case2": ("n", "p", "theta1", "s", "f"),
    "u3": ("n", "g", "B"),
}
PRIVATE_FIELD: Dict[str, str] = {
    "classic": "a",
    "u2-case1": "a",
    "u2-case2": "a",
    "u3": "b",
}

_LINE = re.compile(r"^([A-Za-z][A-Za-z0-9_]*) = (\S+)$")
_DECIMAL = re.compile(r"^(0|[1-9][0-9]*)$")

AnyKey = Union[ClassicPublicKey, ClassicKeyPair, U2PublicKey, U2KeyPair, U3PublicKey, U3KeyPair]


@dataclass(frozen=True)
class KeyFile:
    scheme: str
    visibility: str
    entries: Tuple[Tuple[str, int], ...]

    def get(self, name: str) -> Optional[int]:
        for key, value in self.entries:
            if key == name:
                return value
        return None

    @property
    def is_private(self) -> bool:
        return self.visibility == "private"

    def serialize(self) -> str:
        lines = [f"scheme = {self.scheme}", f"visibility = {self.visibility}"]
        lines.extend(f"{key} = {value}" for key, value in self.entries)
        return "\n".join(lines) + "\n"


def expected_fields(scheme: str, visibility: str) -> Tuple[str, ...]:
    fields = PUBLIC_FIELDS[scheme]
    if visibility == "private":
        fields = fields + (PRIVATE_FIELD[scheme],)
    return fields


def parse_key_file(text: str) -> KeyFile:
    """
    Parses key-file text strictly, so that serialize() reproduces it byte for byte.

    Raises:
        KeyFileError: on any deviation from the canonical layout.
    """
    if not text.endswith("\n"):
        raise KeyFileError("key file must end with a newline")
    pairs: List[Tuple[str, str]] = []
    for number, line in enumerate(text[:-1].split("\n"), start=1):
        match = _LINE.match(line)
        if not match:
            raise KeyFileError(f"line {number}: expected 'key = value', got {line!r}")
        pairs.append((match.group(1), match.group(2)))

    if len(pairs) < 2 or pairs[0][0] != "scheme" or pairs[1][0] != "visibility":
        raise KeyFileError("key file must start with 'scheme' and 'visibility' lines")
    scheme, visibility = pairs[0][1], pairs[1][1]
    if scheme not in SCHEMES:
        raise KeyFileError(f"unknown scheme {scheme!r}")
    if visibility not in VISIBILITIES:
        raise KeyFileError(f"unknown visibility {visibility!r}")

    names = tuple(name for name, _ in pairs[2:])
    expected = expected_fields(scheme, visibility)
    if names != expected:
        raise KeyFileError(f"{scheme} {visibility} key needs entries {', '.join(expected)}; got {', '.join(names)}")

    entries = []
    for name, value in pairs[2:]:
        if not _DECIMAL.match(value):
            raise KeyFileError(f"entry {name} must be a canonical decimal integer, got {value!r}")
        entries.append((name, int(value)))
    return KeyFile(scheme, visibility, tuple(entries))


def key_to_file(key: AnyKey, visibility: Optional[str] = None) -> KeyFile:
    """
    Builds the KeyFile of a key; ``visibility="public"`` strips the private exponent.
    """
    private = isinstance(key, (ClassicKeyPair, U2KeyPair, U3KeyPair))
    visibility = visibility or ("private" if private else "public")
    if visibility == "private" and not private:
        raise KeyFileError("a public key cannot be written as a private key file")

    if isinstance(key, ClassicPublicKey) or isinstance(key, ClassicKeyPair):
        scheme = "classic"
        values = {"p": key.p, "alpha": key.alpha, "alpha_a": key.alpha_a}
        if private:
            values["a"] = key.a
    elif isinstance(key, U2PublicKey):
        scheme = key.case.value
        values = {"n": key.n, "p": key.p, "theta1": key.theta1, "s": key.s, "f": key.f}
        if private:
            values["a"] = key.a
    elif isinstance(key, U3PublicKey):
        scheme = "u3"
        values = {"n": key.n, "g": key.g.value, "B": key.B.value}
        if private:
            values["b"] = key.b
    else:
        raise KeyFileError(f"cannot serialize {type(key).__name__}")

    entries = tuple((name, values[name]) for name in expected_fields(scheme, visibility))
    return KeyFile(scheme, visibility, entries)


def _classic_from_file(kf: KeyFile) -> AnyKey:
    p, alpha, alpha_a = kf.get("p"), kf.get("alpha"), kf.get("alpha_a")
    if not is_prime(p) or p < 5:
        raise KeyFileError(f"p={p} is not a prime >= 5")
    if not is_primitive_root(alpha, p):
        raise KeyFileError(f"alpha={alpha} does not generate Z_{p}*")
    if not 1 <= alpha_a < p:
        raise KeyFileError(f"alpha_a={alpha_a} is outside [1, {p})")
    if not kf.is_private:
        return ClassicPublicKey(p, alpha, alpha_a)
    a = kf.get("a")
    if not 1 <= a <= p - 2 or pow(alpha, a, p) != alpha_a:
        raise KeyFileError("private exponent a does not match alpha_a")
    return ClassicKeyPair(p, alpha, alpha_a, a)


def _u2_from_file(kf: KeyFile) -> AnyKey:
    case = U2Case(kf.scheme)
    pub = U2PublicKey(kf.get("n"), kf.get("theta1"), kf.get("s"), kf.get("f"), case, kf.get("p"))
    check_u2_public(pub)
    if not kf.is_private:
        return pub
    a = kf.get("a")
    if not 2 <= a <= pub.phi2 - 1 or pow(pub.s, a, pub.phi) != pub.f:
        raise KeyFileError("private exponent a does not match f")
    return U2KeyPair(pub.n, pub.theta1, pub.s, pub.f, case, pub.p, a)


def _u3_from_file(kf: KeyFile) -> AnyKey:
    tower = build_tower(kf.get("n"))
    if kf.get("g") != tower.g:
        raise KeyFileError(f"g={kf.get('g')} is not the generator {tower.g} of U³(Z_{tower.n})")
    g = tower.generator
    B = tower.element(kf.get("B"))
    if not kf.is_private:
        return U3PublicKey(tower, g, B)
    b = kf.get("b")
    if not 1 <= b <= tower.phi3 or op_pow(tower, g, b) != B:
        raise KeyFileError("private exponent b does not match B")
    return U3KeyPair(tower, g, B, b)


_LOADERS = {
    "classic": _classic_from_file,
    "u2-case1": _u2_from_file,
    "u2-case2": _u2_from_file,
    "u3": _u3_from_file,
}


def file_to_key(kf: KeyFile) -> AnyKey:
    """
    Rebuilds and validates the key a KeyFile describes.

    Raises:
        KeyFileError: if the entries are inconsistent.
    """
    try:
        return _LOADERS[kf.scheme](kf)
    except KeyFileError:
        raise
    except UnitsToolkitError as e:
        raise KeyFileError(f"invalid {kf.scheme} key: {e}") from e


def save_key(path: str, key: AnyKey, visibility: Optional[str] = None) -> KeyFile:
    kf = key_to_file(key, visibility)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(kf.serialize())
    logger.info(f"Wrote {kf.visibility} {kf.scheme} key to {path}")
    return kf


def load_key(path: str) -> AnyKey:
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            text = fh.read()
    except UnicodeDecodeError as e:
        raise KeyFileError(f"{path} is not UTF-8 text: {e}") from e
    return file_to_key(parse_key_file(text))
