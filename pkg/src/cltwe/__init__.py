"""Witness encryption over Exact Cover with a toy CLT13-style graded encoding,
plus the zeroizing attack against its symmetric variant."""

from .clt import (Encoding, PublicParams, SecretState, SystemParams, derive_params,
                  instance_gen)
from .exact_cover import ExactCoverInstance, solve, verify
from .witness import Ciphertext, decrypt, deserialize, encrypt, serialize

__version__ = "0.1.0"

__all__ = [
    "Ciphertext", "Encoding", "ExactCoverInstance", "PublicParams", "SecretState",
    "SystemParams", "decrypt", "derive_params", "deserialize", "encrypt", "instance_gen",
    "serialize", "solve", "verify",
]
