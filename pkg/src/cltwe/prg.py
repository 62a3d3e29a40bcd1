"""Seedable AES-CTR pseudorandom generator.

Every consumer gets its own named stream, so the draws made for one slot
never shift the draws made for another. Streams are keyed by
``SHA-256(seed || label)`` and run AES-256 in counter mode over zero bytes.
"""

import hashlib

import gmpy2
from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes

_BLOCK = 4096

# product of the odd primes below 2**15: one gcd rejects most composites
# before the far costlier probabilistic test
_SIEVE = 1
_q = gmpy2.mpz(3)
while _q < 1 << 15:
    _SIEVE *= _q
    _q = gmpy2.next_prime(_q)
del _q


class Prg:
    """A deterministic byte/integer source for one named stream."""

    def __init__(self, seed: bytes, label: str):
        if not seed:
            raise ValueError("seed must be non-empty")
        h = hashlib.sha256()
        h.update(len(seed).to_bytes(8, "big"))
        h.update(seed)
        h.update(label.encode())
        cipher = Cipher(algorithms.AES(h.digest()), modes.CTR(bytes(16)))
        self._enc = cipher.encryptor()
        self._buf = b""
        self.label = label

    def bytes(self, n: int) -> bytes:
        while len(self._buf) < n:
            self._buf += self._enc.update(bytes(max(_BLOCK, n)))
        out, self._buf = self._buf[:n], self._buf[n:]
        return out

    def randbits(self, k: int) -> int:
        if k <= 0:
            return 0
        nbytes = (k + 7) // 8
        x = int.from_bytes(self.bytes(nbytes), "big")
        return x >> (8 * nbytes - k)

    def randbelow(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection sampling."""
        if n <= 0:
            raise ValueError("n must be positive")
        k = n.bit_length()
        while True:
            x = self.randbits(k)
            if x < n:
                return x

    def signed(self, bits: int) -> int:
        """Uniform integer in the open interval ``(-2**bits, 2**bits)``."""
        bound = 1 << bits
        return self.randbelow(2 * bound - 1) - (bound - 1)

    def prime(self, bits: int) -> int:
        """A random prime with exactly ``bits`` bits."""
        if bits < 2:
            raise ValueError("primes need at least 2 bits")
        if bits == 2:
            return 2 + self.randbits(1)
        while True:
            x = self.randbits(bits) | (1 << (bits - 1)) | 1
            if x < 1 << 15 or gmpy2.gcd(x, _SIEVE) == 1:
                if gmpy2.is_prime(x, 40):
                    return x


def streams(seed: bytes, prefix: str, count: int) -> list:
    return [Prg(seed, f"{prefix}:{i}") for i in range(count)]
