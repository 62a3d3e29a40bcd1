import random
from math import prod

import pytest

from cltwe import attack, clt
from cltwe.errors import FormatError, ParameterError


def brute_crt(moduli, residues):
    M = prod(moduli)
    lo = -((M - 1) // 2)
    return next(x for x in range(lo, lo + M) if all(x % m == r % m for m, r in zip(moduli, residues)))


@pytest.mark.parametrize("residues,expected", [((1, 2), 7), ((2, 3), -7), ((0, 0), 0)])
def test_crt_combine_examples(residues, expected):
    assert attack.crt_combine((3, 5), residues) == expected == brute_crt((3, 5), residues)


def test_crt_combine_matches_brute_force():
    rng = random.Random(6)
    for _ in range(200):
        moduli = rng.choice([(3, 5), (2, 7, 11), (4, 9), (13,), (5, 7, 8)])
        residues = [rng.randint(-20, 20) for _ in moduli]
        assert attack.crt_combine(moduli, residues) == brute_crt(moduli, residues)


def test_crt_combine_rejects_shared_factor():
    with pytest.raises(ArithmeticError):
        attack.crt_combine((6, 9), (1, 2))


def test_lemma_small_example():
    p = (3, 5)
    x0 = 15
    P_hat = attack.crt_combine(p, [x0 // q for q in p])
    assert P_hat == -7
    # a = -5 has residues (1, 0): 1*5 + 0*3 = 5
    assert attack.lemma_product(-5, P_hat, x0) == 5
    # a = 1 has residues (1, 1): the sum 8 exceeds x0/2, so the identity fails
    assert attack.lemma_product(1, P_hat, x0) == -7 != 5 + 3
    assert attack.lemma_product(0, P_hat, x0) == 0


def test_lemma_on_random_samples():
    inst, primes = attack.generate_crt_acd(4, 64, 16, b"lemma")
    rng = random.Random(8)
    x0 = inst.x0
    for _ in range(1000):
        r = [rng.randint(-(1 << 16) + 1, (1 << 16) - 1) for _ in primes]
        a = attack.crt_combine(primes, r)
        assert attack.lemma_product(a, inst.P_hat, x0) == sum(ri * (x0 // p) for ri, p in zip(r, primes))


def test_generate_checks_parameters():
    with pytest.raises(ParameterError):
        attack.generate_crt_acd(4, 40, 16, b"x")
    with pytest.raises(ParameterError):
        attack.generate_crt_acd(0, 64, 16, b"x")


def test_generated_instance_shape():
    inst, primes = attack.generate_crt_acd(3, 48, 12, b"shape")
    assert len(set(primes)) == 3 and all(p.bit_length() == 48 for p in primes)
    assert inst.x0 == prod(primes)
    a = inst.sample()
    for p in primes:
        assert inst.P_hat % p == (inst.x0 // p) % p
        r = a % p
        assert min(r, p - r) < 1 << 12


@pytest.mark.parametrize("n", [1, 3, 4])
def test_attack_recovers_planted_primes(n):
    inst, primes = attack.generate_crt_acd(n, 64, 16, f"n{n}".encode())
    res = attack.attack_crt_acd(inst, max_retries=3)
    assert res.ok and res.primes == tuple(sorted(primes))
    assert res.trials_used >= 1


def test_attack_success_rate_n5():
    wins = 0
    for s in range(20):
        inst, primes = attack.generate_crt_acd(5, 64, 16, f"rate{s}".encode())
        res = attack.attack_crt_acd(inst, max_retries=3)
        wins += res.ok and res.primes == tuple(sorted(primes))
    assert wins >= 18


def test_attack_is_deterministic():
    r1 = attack.attack_crt_acd(attack.generate_crt_acd(4, 64, 16, b"det")[0])
    r2 = attack.attack_crt_acd(attack.generate_crt_acd(4, 64, 16, b"det")[0])
    assert (r1.primes, r1.trials_used) == (r2.primes, r2.trials_used)


def test_attack_reports_singular_exhaustion():
    inst, _ = attack.generate_crt_acd(3, 64, 16, b"zero")
    inst.sampler = lambda: 0
    res = attack.attack_crt_acd(inst, max_retries=2)
    assert not res.ok and res.status == attack.SINGULAR and res.trials_used == 3


def test_recover_primes_no_distinct():
    # b with equal residues gives a scalar matrix: one repeated eigenvalue
    p = (1000003, 1000033)
    x0 = prod(p)
    P_hat = attack.crt_combine(p, [x0 // q for q in p])
    a = [attack.crt_combine(p, r) for r in ((3, 1), (1, 2))]
    c = [attack.crt_combine(p, r) for r in ((2, 5), (7, 1))]
    b = 9
    Wp = [[attack.lemma_product(ai * cj, P_hat, x0) for cj in c] for ai in a]
    W = [[attack.lemma_product(ai * b * cj, P_hat, x0) for cj in c] for ai in a]
    assert attack.recover_primes(W, Wp, b, x0, bound=64) == (attack.NO_DISTINCT, ())
    b = attack.crt_combine(p, (9, -4))
    W = [[attack.lemma_product(ai * b * cj, P_hat, x0) for cj in c] for ai in a]
    assert attack.recover_primes(W, Wp, b, x0, bound=64) == (attack.SUCCESS, p)


@pytest.fixture(scope="module")
def symmetric_instance():
    params = clt.attack_profile(12, 3)
    state, pp, pub = clt.instance_gen(params, b"attack-clt")
    return state, pp, pub


def test_attack_clt_recovers_secret_primes(symmetric_instance):
    state, pp, pub = symmetric_instance
    res = attack.attack_clt(pp.x0, pp.pzt, pub, pub.kappa)
    assert res.ok
    assert res.primes == tuple(sorted(state.p))


def test_attack_clt_needs_enough_encodings(symmetric_instance):
    _, pp, pub = symmetric_instance
    short = clt.SymmetricPublicEncodings(pub.xs, pub.xps[:2], pub.y, pub.kappa)
    with pytest.raises(ParameterError):
        attack.attack_clt(pp.x0, pp.pzt, short, pub.kappa)


def test_symmetric_text_round_trip(symmetric_instance):
    _, pp, pub = symmetric_instance
    text = attack.symmetric_to_text(pp.x0, pp.pzt, pp.nu, pub)
    assert text.startswith("CLTSYM1\n") and text.endswith("END\n")
    assert attack.symmetric_from_text(text) == (pp.x0, pp.pzt, pp.nu, pub)
    for cut in range(0, len(text), 7):
        with pytest.raises(FormatError):
            attack.symmetric_from_text(text[:cut])
    with pytest.raises(FormatError):
        attack.symmetric_from_text(text.replace("X 1 ", "X 2 "))


def test_report_lists_primes():
    res = attack.AttackResult((5, 7), 1, attack.SUCCESS, 0.5)
    out = attack.report(res)
    assert "status    success" in out and "p[1]      7" in out
