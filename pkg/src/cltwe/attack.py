"""Zeroizing attack on CLT13 via CRT-ACD with auxiliary input.

Given ``x0 = prod(p_i)``, ``P_hat = CRT(x0 / p_i)`` and samples
``a = CRT(a_i)`` with small residues, ``a * P_hat mod x0`` (centered) equals
``sum(a_i * x0/p_i)`` over the integers. Two matrices of such products,

    W[i][j]  = a_i * b * c_j * P_hat mod x0 = (A^T diag(b_k x0/p_k) C)[i][j]
    W'[i][j] = a_i * c_j * P_hat mod x0     = (A^T diag(x0/p_k) C)[i][j]

give ``W W'^-1 = A^T diag(b_k) A^-T``, whose eigenvalues are the residues
``b_k``. Then ``gcd(b - b_k, x0) = p_k``.

Against the symmetric scheme the zero-test element plays the role of
``P_hat``: products of public encodings that land on a top-level zero are
linear forms in the ``x0/p_i`` with small coefficients.
"""

import logging
import time
from dataclasses import dataclass
from math import gcd, prod

from .clt import SymmetricPublicEncodings, centered
from .errors import FormatError, ParameterError
from .linalg import (as_integer_poly, charpoly_faddeev, integer_roots_divisors,
                     integer_roots_newton, integer_roots_scan, inverse, matmul)
from .prg import Prg
from .textio import LineReader, parse_int, split_record

log = logging.getLogger(__name__)

SUCCESS = "success"
SINGULAR = "singular-retry-exhausted"
NO_DISTINCT = "no-distinct-eigenvalues"

SCAN_LIMIT_BITS = 20


def _clog2(n: int) -> int:
    return (n - 1).bit_length()


def crt_combine(moduli, residues) -> int:
    """The unique ``x`` in ``(-M/2, M/2]`` with ``x = r_i mod m_i``."""
    moduli = [int(m) for m in moduli]
    for i, a in enumerate(moduli):
        for b in moduli[i + 1:]:
            if gcd(a, b) != 1:
                raise ArithmeticError(f"moduli {a} and {b} are not coprime")
    M = prod(moduli)
    x = 0
    for m, r in zip(moduli, residues):
        Mi = M // m
        x += r * Mi * pow(Mi, -1, m)
    return centered(x, M)


def lemma_product(a: int, P_hat: int, x0: int) -> int:
    """Centered ``a * P_hat mod x0``; equals ``sum(r_i * x0/p_i)`` when the
    residues of ``a`` are small enough."""
    return centered(a * P_hat, x0)


@dataclass
class CrtAcdInstance:
    n: int
    eta: int
    eps: int
    x0: int
    P_hat: int
    sampler: object     # zero-argument callable returning CRT(r_i)

    def sample(self) -> int:
        return self.sampler()

    def check(self) -> None:
        if 3 * self.eps + _clog2(self.n) + 1 >= self.eta:
            raise ParameterError(
                f"attack needs 3*eps + log2(n) + 1 < eta (eps={self.eps}, eta={self.eta})")


def generate_crt_acd(n: int, eta: int, eps: int, seed: bytes):
    """Plant ``n`` random ``eta``-bit primes; return ``(instance, primes)``."""
    if n < 1 or eta < 3 or eps < 1:
        raise ParameterError("need n >= 1, eta >= 3, eps >= 1")
    rng = Prg(seed, "crt-acd:primes")
    primes = []
    while len(primes) < n:
        p = rng.prime(eta)
        if p not in primes:
            primes.append(p)
    x0 = prod(primes)
    P_hat = crt_combine(primes, [x0 // p for p in primes])
    draw = Prg(seed, "crt-acd:samples")

    def sampler():
        return crt_combine(primes, [draw.signed(eps) for _ in primes])

    inst = CrtAcdInstance(n, eta, eps, x0, P_hat, sampler)
    inst.check()
    return inst, tuple(primes)


@dataclass(frozen=True)
class AttackResult:
    primes: tuple
    trials_used: int
    status: str
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.status == SUCCESS


def find_integer_roots(coeffs, bound=None):
    """Integer eigenvalue candidates of an integral characteristic polynomial.

    Scans ``(-bound, bound)`` when that range is small, otherwise falls back to
    the Newton descent (valid because the eigenvalues are real integers).
    """
    if bound is not None and bound <= 1 << SCAN_LIMIT_BITS:
        return integer_roots_scan(coeffs, bound)
    roots = integer_roots_newton(coeffs)
    return [] if roots is None else roots


def recover_primes(W, Wp, b: int, x0: int, bound=None):
    """One attack attempt. Returns ``(status, primes)``."""
    n = len(W)
    Wp_inv = inverse(Wp)
    if Wp_inv is None:
        return SINGULAR, ()
    V = matmul(W, Wp_inv)
    coeffs = as_integer_poly(charpoly_faddeev(V))
    if coeffs is None:
        log.debug("characteristic polynomial is not integral")
        return NO_DISTINCT, ()
    roots = find_integer_roots(coeffs, bound)
    if len(set(roots)) != n:
        return NO_DISTINCT, ()
    primes = []
    for r in roots:
        g = gcd(b - r, x0)
        if g == 1:
            return NO_DISTINCT, ()
        primes.append(g)
    if len(set(primes)) != n or prod(primes) != x0:
        return NO_DISTINCT, ()
    return SUCCESS, tuple(sorted(primes))


def attack_crt_acd(inst: CrtAcdInstance, max_retries: int = 10) -> AttackResult:
    """Recover every prime from ``2n + 1`` samples, redrawing on singular or
    degenerate draws up to ``max_retries`` times."""
    inst.check()
    n, x0, P_hat = inst.n, inst.x0, inst.P_hat
    start = time.perf_counter()
    status = SINGULAR
    for trial in range(1, max_retries + 2):
        a = [inst.sample() for _ in range(n)]
        b = inst.sample()
        c = [inst.sample() for _ in range(n)]
        Wp = [[lemma_product(ai * cj, P_hat, x0) for cj in c] for ai in a]
        W = [[lemma_product(ai * b * cj, P_hat, x0) for cj in c] for ai in a]
        status, primes = recover_primes(W, Wp, b, x0, bound=1 << inst.eps)
        if status == SUCCESS:
            return AttackResult(primes, trial, status, time.perf_counter() - start)
        log.info("trial %d failed: %s", trial, status)
    return AttackResult((), max_retries + 1, status, time.perf_counter() - start)


def attack_clt(x0: int, pzt: int, pub: SymmetricPublicEncodings, kappa: int,
               max_retries: int = None) -> AttackResult:
    """Break a symmetric instance from its public encodings and ``pzt``.

    With ``x'_t`` a pivot level-0 encoding, rows ``x'_j`` (``j != t``) and
    columns the level-1 zeros ``x_k``:

        W[j][k]  = x'_j * x'_t * x_k * y^(kappa-1) * pzt mod x0
        W'[j][k] = x'_j * x_k * y^(kappa-1) * pzt mod x0

    The eigenvalues of ``W W'^-1`` are the residues of ``x'_t`` modulo each
    ``p_i``. Other pivots are tried when a draw is singular.
    """
    n = len(pub.xs)
    if len(pub.xps) < n + 1:
        raise ParameterError("need at least n + 1 level-0 encodings")
    if kappa < 1:
        raise ParameterError("kappa must be at least 1")
    start = time.perf_counter()
    lift = pow(pub.y, kappa - 1, x0) * pzt % x0
    cols = [xk * lift % x0 for xk in pub.xs]
    pivots = range(len(pub.xps))
    if max_retries is not None:
        pivots = pivots[:max_retries + 1]
    status, trial = SINGULAR, 0
    for trial, t in enumerate(pivots, start=1):
        rows = [x for j, x in enumerate(pub.xps) if j != t][:n]
        piv = pub.xps[t]
        Wp = [[centered(xj * ck, x0) for ck in cols] for xj in rows]
        W = [[centered(xj * piv * ck, x0) for ck in cols] for xj in rows]
        status, primes = recover_primes(W, Wp, piv, x0)
        if status == SUCCESS:
            return AttackResult(primes, trial, status, time.perf_counter() - start)
        log.info("pivot %d failed: %s", t, status)
    return AttackResult((), trial, status, time.perf_counter() - start)


def report(result: AttackResult) -> str:
    lines = [f"status    {result.status}",
             f"trials    {result.trials_used}",
             f"time      {result.seconds:.3f}s"]
    for i, p in enumerate(result.primes):
        lines.append(f"p[{i}]      {p:x}")
    return "\n".join(lines) + "\n"


SYM_MAGIC = "CLTSYM1"


def symmetric_to_text(x0: int, pzt: int, nu: int, pub: SymmetricPublicEncodings) -> str:
    """Public file of a symmetric instance: everything the attack consumes."""
    lines = [SYM_MAGIC, f"x0={x0:x}", f"pzt={pzt:x}", f"nu={nu}", f"kappa={pub.kappa}",
             f"nx={len(pub.xs)}"]
    lines += [f"X {i} {v:x}" for i, v in enumerate(pub.xs)]
    lines.append(f"nxp={len(pub.xps)}")
    lines += [f"XP {i} {v:x}" for i, v in enumerate(pub.xps)]
    lines += [f"Y {pub.y:x}", "END"]
    return "\n".join(lines) + "\n"


def symmetric_from_text(data):
    """Inverse of symmetric_to_text: ``(x0, pzt, nu, pub)``."""
    rd = LineReader(data)
    rd.expect(SYM_MAGIC, "magic")
    x0 = rd.keyval("x0", "hex")
    pzt = rd.keyval("pzt", "hex")
    nu = rd.keyval("nu")
    kappa = rd.keyval("kappa")

    def block(count_key, tag):
        out = []
        for i in range(rd.keyval(count_key)):
            line, off = rd.next(f"{tag} record {i}")
            _, idx, val = split_record(line, off, tag, 3)
            if parse_int(idx, "dec", off) != i:
                raise FormatError(f"{tag} records out of order", offset=off)
            out.append(parse_int(val, "hex", off))
        return tuple(out)

    xs = block("nx", "X")
    xps = block("nxp", "XP")
    line, off = rd.next("Y record")
    y = parse_int(split_record(line, off, "Y", 2)[1], "hex", off)
    rd.expect("END", "end marker")
    rd.finish()
    return x0, pzt, nu, SymmetricPublicEncodings(xs, xps, y, kappa)


__all__ = [
    "AttackResult", "CrtAcdInstance", "attack_clt", "attack_crt_acd", "crt_combine",
    "find_integer_roots", "generate_crt_acd", "integer_roots_divisors", "lemma_product",
    "recover_primes", "report", "symmetric_from_text", "symmetric_to_text",
]
