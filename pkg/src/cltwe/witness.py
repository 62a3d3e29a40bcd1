"""Witness encryption for Exact Cover over the asymmetric graded encoding.

Encryption picks a random ring element ``a_j`` per universe element and
publishes, for every set ``S_i``, an encoding of ``prod_{j in S_i} a_j`` at
the indicator level of ``S_i``. A message bit 1 is an encoding of
``prod_j a_j`` at the top level; a bit 0 is an encoding of an unrelated random
element. Whoever knows an exact cover ``T`` multiplies the ``c_i`` for
``i in T``, lands on the top level with the same plaintext, and zero-tests the
difference.

All bits of a message share the same ``c_i``. Whether the per-bit ``d``
values stay indistinguishable from encodings of other elements under that
sharing is not something the construction guarantees.
"""

import hashlib
import logging
from dataclasses import dataclass

from . import clt
from .clt import Encoding, PublicParams
from .errors import FormatError
from .exact_cover import ExactCoverInstance, coverage_counts
from .textio import LineReader, parse_int, split_record, to_hex

log = logging.getLogger(__name__)

MAGIC = "CLTWE1"


@dataclass(frozen=True)
class Ciphertext:
    pp: PublicParams
    instance: ExactCoverInstance
    c: tuple
    d: tuple
    lam: int
    seed_commitment: bytes

    def __post_init__(self):
        U = self.instance.universe_size
        if self.pp.U != U:
            raise ValueError("public parameters and instance disagree on U")
        if len(self.c) != len(self.instance.sets):
            raise ValueError("one set encoding is required per set")
        for ci, s in zip(self.c, self.instance.sets):
            if ci.level != clt.indicator(U, s):
                raise ValueError("set encoding is not at its indicator level")
        top = clt.top_level(U)
        if not self.d or any(dk.level != top for dk in self.d):
            raise ValueError("message encodings must sit at the top level")


def encrypt_with_state(instance: ExactCoverInstance, bits, lam: int, seed: bytes):
    """Encrypt and also hand back the trapdoor. Debugging aid; see encrypt()."""
    bits = [int(b) for b in bits]
    if not bits or any(b not in (0, 1) for b in bits):
        raise ValueError("message must be a non-empty sequence of bits")
    U = instance.universe_size
    if U < 1 or not instance.sets:
        raise ValueError("instance needs a non-empty universe and at least one set")
    params = clt.derive_params(lam, U)
    state, pp, _ = clt.instance_gen(params, seed)
    g = state.g

    a = [clt.sample_plaintext(state) for _ in range(U)]

    def product(elements):
        out = [1] * params.n_p
        for j in elements:
            out = [o * aj % gi for o, aj, gi in zip(out, a[j], g)]
        return tuple(out)

    c = tuple(clt.encode(state, product(s), clt.indicator(U, s)) for s in instance.sets)
    target = product(range(U))
    top = clt.top_level(U)
    d = []
    for bit in bits:
        if bit:
            d.append(clt.encode(state, target, top))
        else:
            r = clt.sample_plaintext(state)
            while r == target:
                r = clt.sample_plaintext(state)
            d.append(clt.encode(state, r, top))
    commitment = hashlib.sha256(seed).digest()
    ct = Ciphertext(pp, instance, c, tuple(d), lam, commitment)
    return ct, state


def encrypt(instance: ExactCoverInstance, bits, lam: int, seed: bytes) -> Ciphertext:
    """Encrypt ``bits`` so that any exact cover of ``instance`` decrypts them.

    The instance need not be solvable; then nobody can decrypt. The trapdoor
    is dropped before returning.
    """
    ct, _ = encrypt_with_state(instance, bits, lam, seed)
    return ct


def decrypt(ct: Ciphertext, witness):
    """Recover the bits with an exact cover, or return None when ``witness``
    is not one (overlapping, incomplete or empty selections)."""
    witness = tuple(sorted(set(witness)))
    counts = coverage_counts(ct.instance, witness)
    if any(k != 1 for k in counts):
        return None
    c_star = None
    for i in witness:
        c_star = ct.c[i] if c_star is None else clt.mul(ct.pp, c_star, ct.c[i])
    return [int(clt.is_zero(ct.pp, clt.sub(ct.pp, dk, c_star))) for dk in ct.d]


def serialize(ct: Ciphertext) -> bytes:
    parts = [MAGIC, f"lambda={ct.lam}"]
    out = "\n".join(parts) + "\n" + ct.pp.to_text() + "EC\n" + ct.instance.to_text()
    lines = [f"nc={len(ct.c)}"]
    lines += [f"C {i} {to_hex(e.elem)}" for i, e in enumerate(ct.c)]
    lines.append(f"nd={len(ct.d)}")
    lines += [f"D {k} {to_hex(e.elem)}" for k, e in enumerate(ct.d)]
    lines.append(f"SEEDH {ct.seed_commitment.hex()}")
    lines.append("END")
    return (out + "\n".join(lines) + "\n").encode("ascii")


def deserialize(data: bytes) -> Ciphertext:
    rd = LineReader(data)
    rd.expect(MAGIC, "magic")
    lam = rd.keyval("lambda")
    pp = PublicParams.read(rd)
    rd.expect("EC", "exact cover block")
    instance = _read_cover(rd)
    U = instance.universe_size
    if pp.U != U:
        raise FormatError("cover universe disagrees with public parameters", offset=rd.pos)

    nc = rd.keyval("nc")
    if nc != len(instance.sets):
        raise FormatError("set encoding count disagrees with the cover", offset=rd.pos)
    c = []
    for i in range(nc):
        elem = _read_elem(rd, "C", i, pp.x0)
        c.append(Encoding(elem, clt.indicator(U, instance.sets[i])))
    nd = rd.keyval("nd")
    if nd < 1:
        raise FormatError("ciphertext carries no message bits", offset=rd.pos)
    top = clt.top_level(U)
    d = [Encoding(_read_elem(rd, "D", k, pp.x0), top) for k in range(nd)]

    line, off = rd.next("seed commitment")
    _, digest = split_record(line, off, "SEEDH", 2)
    if len(digest) != 64:
        raise FormatError("seed commitment must be 32 bytes", offset=off)
    if any(ch not in "0123456789abcdef" for ch in digest):
        raise FormatError("seed commitment must be lowercase hex", offset=off)
    commitment = bytes.fromhex(digest)
    rd.expect("END", "end marker")
    rd.finish()
    return Ciphertext(pp, instance, tuple(c), tuple(d), lam, commitment)


def _read_cover(rd: LineReader) -> ExactCoverInstance:
    line, off = rd.next("cover header")
    fields = line.split(" ")
    if len(fields) != 2:
        raise FormatError("cover header must be 'U L'", offset=off)
    U = parse_int(fields[0], "dec", off)
    L = parse_int(fields[1], "dec", off)
    sets = []
    for i in range(L):
        line, off = rd.next(f"cover set {i}")
        if not line:
            raise FormatError("empty set line", offset=off)
        s = [parse_int(t, "dec", off) for t in line.split(" ")]
        if s != sorted(set(s)) or s[-1] >= U:
            raise FormatError("set must be sorted, distinct and inside the universe", offset=off)
        sets.append(s)
    return ExactCoverInstance(U, sets)


def _read_elem(rd: LineReader, tag: str, index: int, x0: int) -> int:
    line, off = rd.next(f"{tag} record {index}")
    _, idx, hexval = split_record(line, off, tag, 3)
    if parse_int(idx, "dec", off) != index:
        raise FormatError(f"{tag} records out of order", offset=off)
    elem = parse_int(hexval, "hex", off)
    if elem >= x0:
        raise FormatError(f"{tag} element not reduced mod x0", offset=off)
    return elem


def bits_from_hex(h: str) -> list:
    h = h.strip().lower()
    if h.startswith("0x"):
        h = h[2:]
    if not h or any(ch not in "0123456789abcdef" for ch in h):
        raise ValueError(f"not a hex string: {h!r}")
    return [int(b) for ch in h for b in format(int(ch, 16), "04b")]


def bits_to_hex(bits) -> str:
    bits = list(bits)
    if len(bits) % 4:
        raise ValueError("bit count must be a multiple of 4")
    return "".join(format(int("".join(map(str, bits[i:i + 4])), 2), "x")
                   for i in range(0, len(bits), 4))
