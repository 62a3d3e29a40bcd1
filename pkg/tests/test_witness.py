import hashlib
import random

import pytest
from helpers import random_solvable_instance

from cltwe import clt, witness
from cltwe.errors import FormatError, WitnessError
from cltwe.exact_cover import ExactCoverInstance

TOY = ExactCoverInstance(3, [[0, 1], [2], [0, 2]])


@pytest.fixture(scope="module")
def toy_ct():
    return witness.encrypt(TOY, [1, 0, 1, 1, 0, 0, 1, 0], 12, b"toy")


def test_bit_one_and_zero_round_trip():
    assert witness.decrypt(witness.encrypt(TOY, [1], 12, b"s1"), [0, 1]) == [1]
    assert witness.decrypt(witness.encrypt(TOY, [0], 12, b"s1"), [0, 1]) == [0]


def test_multi_bit_shares_set_encodings():
    bits = [random.Random(9).randint(0, 1) for _ in range(16)]
    ct = witness.encrypt(TOY, bits, 12, b"sixteen")
    assert len(ct.d) == 16 and len(ct.c) == 3
    assert witness.decrypt(ct, [0, 1]) == bits


def test_levels(toy_ct):
    assert [c.level for c in toy_ct.c] == [(1, 1, 0), (0, 0, 1), (1, 0, 1)]
    assert all(d.level == (1, 1, 1) for d in toy_ct.d)
    assert toy_ct.pp.U == 3
    assert toy_ct.seed_commitment == hashlib.sha256(b"toy").digest()


@pytest.mark.parametrize("w", [[0, 2], [], [1], [0, 1, 2], [2]])
def test_structural_rejection(toy_ct, w):
    assert witness.decrypt(toy_ct, w) is None


def test_out_of_range_witness(toy_ct):
    with pytest.raises(WitnessError):
        witness.decrypt(toy_ct, [5])


def test_unsolvable_instance_still_encrypts():
    inst = ExactCoverInstance(3, [[0, 1], [0, 2]])
    ct = witness.encrypt(inst, [1], 12, b"nobody")
    assert len(ct.c) == 2


def test_encrypt_is_deterministic():
    a = witness.serialize(witness.encrypt(TOY, [1, 0], 12, b"same"))
    b = witness.serialize(witness.encrypt(TOY, [1, 0], 12, b"same"))
    assert a == b
    assert a != witness.serialize(witness.encrypt(TOY, [1, 0], 12, b"other"))


def test_correctness_random_instances():
    rng = random.Random(77)
    for trial in range(20):
        inst, planted = random_solvable_instance(rng)
        bits = [rng.randint(0, 1) for _ in range(8)]
        ct = witness.encrypt(inst, bits, 12, f"trial{trial}".encode())
        assert witness.decrypt(ct, planted) == bits


def test_bit_zero_soundness():
    ct = witness.encrypt(TOY, [0] * 200, 12, b"zeros")
    assert witness.decrypt(ct, [0, 1]) == [0] * 200


def test_serialize_round_trip(toy_ct):
    data = witness.serialize(toy_ct)
    assert data.startswith(b"CLTWE1\nlambda=12\nCLTPP1\n")
    assert data.endswith(b"END\n")
    back = witness.deserialize(data)
    assert back == toy_ct
    assert witness.serialize(back) == data


def test_every_truncation_is_a_format_error(toy_ct):
    data = witness.serialize(toy_ct)
    for cut in range(len(data)):
        with pytest.raises(FormatError):
            witness.deserialize(data[:cut])


def test_truncation_names_missing_section(toy_ct):
    data = witness.serialize(toy_ct)
    cut = data.index(b"nd=")
    with pytest.raises(FormatError, match="missing nd"):
        witness.deserialize(data[:cut])


@pytest.mark.parametrize("old,new", [
    (b"CLTWE1", b"CLTWE2"),
    (b"\nC 1 ", b"\nC 2 "),
    (b"nc=3", b"nc=4"),
    (b"SEEDH ", b"SEEDH 0"),
])
def test_corruptions_rejected(toy_ct, old, new):
    data = witness.serialize(toy_ct).replace(old, new, 1)
    with pytest.raises(FormatError):
        witness.deserialize(data)


def test_non_hex_digit_reports_offset(toy_ct):
    data = bytearray(witness.serialize(toy_ct))
    pos = data.index(b"\nD 0 ") + 6
    data[pos] = ord("g")
    with pytest.raises(FormatError) as info:
        witness.deserialize(bytes(data))
    assert info.value.offset is not None and info.value.offset <= pos


def _independent_read(text):
    """Minimal reader written from the format description alone."""
    lines = text.split("\n")
    assert lines[0] == "CLTWE1" and lines[-1] == "" and lines[-2] == "END"
    kv = {}
    i = 1
    while "=" in lines[i] or lines[i] == "CLTPP1":
        if "=" in lines[i]:
            k, v = lines[i].split("=")
            kv[k] = v
        i += 1
    assert lines[i] == "EC"
    U, L = map(int, lines[i + 1].split())
    sets = [list(map(int, ln.split())) for ln in lines[i + 2:i + 2 + L]]
    c = {int(ln.split()[1]): int(ln.split()[2], 16) for ln in lines if ln.startswith("C ")}
    d = {int(ln.split()[1]): int(ln.split()[2], 16) for ln in lines if ln.startswith("D ")}
    return int(kv["x0"], 16), int(kv["pzt"], 16), int(kv["nu"]), U, sets, c, d


def test_independent_reader_decrypts(toy_ct):
    x0, pzt, nu, U, sets, c, d = _independent_read(witness.serialize(toy_ct).decode())
    assert U == 3 and sets == [[0, 1], [2], [0, 2]]
    cstar = c[0] * c[1] % x0
    bits = []
    for k in sorted(d):
        w = (d[k] - cstar) * pzt % x0
        w = w - x0 if w > x0 // 2 else w
        bits.append(int(abs(w) * 2**nu < x0))
    assert bits == [1, 0, 1, 1, 0, 0, 1, 0]


def test_ciphertext_carries_no_secrets():
    ct, state = witness.encrypt_with_state(TOY, [1, 0, 1], 12, b"leak?")
    text = witness.serialize(ct).decode()
    secrets = list(state.p) + list(state.z) + list(state.z_inv)
    for s in secrets:
        assert format(s, "x") not in text
    # the plaintext moduli are short, so look for them as whole tokens only
    tokens = set(text.replace("=", " ").split())
    for g in state.g:
        assert format(g, "x") not in tokens and str(g) not in tokens
    assert state.secrets_text().startswith("CLTSK1\n")


def test_hex_bit_helpers():
    bits = witness.bits_from_hex("deadbeef")
    assert len(bits) == 32 and bits[:4] == [1, 1, 0, 1]
    assert witness.bits_to_hex(bits) == "deadbeef"
    with pytest.raises(ValueError):
        witness.bits_from_hex("xyz")


def test_ciphertext_rejects_wrong_levels(toy_ct):
    with pytest.raises(ValueError):
        witness.Ciphertext(toy_ct.pp, toy_ct.instance, toy_ct.c[::-1], toy_ct.d,
                           toy_ct.lam, toy_ct.seed_commitment)
    with pytest.raises(ValueError):
        witness.Ciphertext(toy_ct.pp, toy_ct.instance, toy_ct.c,
                           (clt.Encoding(1, (1, 1, 0)),), toy_ct.lam, toy_ct.seed_commitment)
