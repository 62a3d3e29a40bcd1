"""Asymmetric CLT13-style graded encoding over the integers.

An encoding of a plaintext vector ``m`` (one component per secret prime) at
level ``v`` is an integer ``c`` modulo ``x0 = prod(p_i)`` with

    c = (r_i * g_i + m_i) / prod_j z_j**v_j   (mod p_i)     for every slot i

where ``r_i`` is fresh noise. Levels are 0/1 vectors over a universe of ``U``
coordinates; the top level is the all-ones vector and only there does the
public zero test work.

Parameters here are desk-scale. Nothing in this module is secure.
"""

from dataclasses import dataclass, field
from math import gcd, prod

import gmpy2

from .errors import DecodeError, FormatError, LevelError, ParameterError
from .prg import Prg, streams
from .textio import LineReader, to_hex

MIN_LAMBDA = 8


def _clog2(n: int) -> int:
    return (n - 1).bit_length()


@dataclass(frozen=True)
class SystemParams:
    lam: int
    U: int
    n_p: int
    eta: int
    alpha: int
    rho: int
    beta: int
    nu: int
    D: int
    ell: int = 0
    tau: int = 0
    symmetric: bool = False

    @property
    def fresh_bits(self) -> int:
        """Bit bound on a fresh numerator ``r*g + m``."""
        return self.rho + self.alpha + 1

    @property
    def noise_budget_bits(self) -> int:
        return self.D * self.fresh_bits + 1

    def validate(self) -> None:
        fields_ = (self.lam, self.U, self.n_p, self.eta, self.alpha,
                   self.rho, self.beta, self.nu, self.D)
        if any(f <= 0 for f in fields_):
            raise ParameterError("all size parameters must be positive")
        if self.lam < MIN_LAMBDA:
            raise ParameterError(f"lambda must be at least {MIN_LAMBDA}")
        if self.D < self.U + 1:
            raise ParameterError("degree bound D must be at least U + 1")
        if self.nu < self.lam:
            raise ParameterError("nu must be at least lambda")
        need = self.D * self.fresh_bits + self.beta + self.nu + _clog2(self.n_p) + 8
        if self.eta < need:
            raise ParameterError(f"eta={self.eta} below the zero-test bound {need}")
        if self.symmetric and (self.ell < self.n_p + 1 or self.tau < self.n_p):
            raise ParameterError("symmetric mode needs ell >= n_p + 1 and tau >= n_p")


def derive_params(lam: int, U: int, symmetric: bool = False) -> SystemParams:
    """Derive every size parameter from the security parameter and universe size.

    ``rho = alpha = beta = lam``, ``D = U + 1`` and ``eta`` is the smallest
    prime size for which an honest zero at degree ``D`` always passes the
    zero test with ``nu`` bits to spare.
    """
    if lam < MIN_LAMBDA:
        raise ParameterError(f"lambda must be at least {MIN_LAMBDA}, got {lam}")
    if U < 1:
        raise ParameterError(f"universe size must be at least 1, got {U}")
    return _build(lam, U, D=U + 1, symmetric=symmetric)


def attack_profile(lam: int, kappa: int, n_p: int = None) -> SystemParams:
    """Symmetric parameters sized for the zeroizing attack demo.

    The attack multiplies ``kappa + 2`` public encodings (two level-0 values,
    one zero at level 1 and ``kappa - 1`` copies of ``y``), one more than the
    honest degree bound, so ``D`` is raised to ``kappa + 2``.
    """
    if lam < MIN_LAMBDA:
        raise ParameterError(f"lambda must be at least {MIN_LAMBDA}, got {lam}")
    if kappa < 1:
        raise ParameterError("kappa must be at least 1")
    return _build(lam, kappa, D=kappa + 2, symmetric=True, n_p=n_p)


def _build(lam, U, D, symmetric, n_p=None):
    if n_p is None:
        n_p = max(4, -(-lam // 4))
    if n_p < 1:
        raise ParameterError("n_p must be positive")
    rho = alpha = beta = lam
    nu = lam + _clog2(n_p) + 2
    eta = D * (rho + alpha + 1) + beta + nu + _clog2(n_p) + 8
    ell, tau = (n_p + 1, n_p) if symmetric else (0, 0)
    params = SystemParams(lam=lam, U=U, n_p=n_p, eta=eta, alpha=alpha, rho=rho,
                          beta=beta, nu=nu, D=D, ell=ell, tau=tau, symmetric=symmetric)
    params.validate()
    return params


@dataclass(frozen=True)
class PublicParams:
    x0: int
    pzt: int
    nu: int
    U: int

    def to_text(self) -> str:
        return (f"CLTPP1\nx0={to_hex(self.x0)}\npzt={to_hex(self.pzt)}\n"
                f"nu={self.nu}\nU={self.U}\n")

    @classmethod
    def read(cls, reader: LineReader) -> "PublicParams":
        reader.expect("CLTPP1", "public parameters header")
        x0 = reader.keyval("x0", "hex")
        pzt = reader.keyval("pzt", "hex")
        nu = reader.keyval("nu")
        U = reader.keyval("U")
        if x0 < 2 or pzt >= x0 or U < 1 or nu < 1:
            raise FormatError("inconsistent public parameters", offset=reader.pos)
        return cls(x0, pzt, nu, U)

    @classmethod
    def from_text(cls, text) -> "PublicParams":
        reader = LineReader(text)
        pp = cls.read(reader)
        reader.finish()
        return pp


@dataclass(frozen=True)
class Encoding:
    elem: int
    level: tuple
    # number of fresh encodings multiplied together; bounds the noise
    degree: int = 1


@dataclass(frozen=True)
class SymmetricPublicEncodings:
    """Public values of the classic symmetric scheme, published only for the attack demo."""

    xs: tuple      # level-1 encodings of zero
    xps: tuple     # level-0 encodings of random plaintext columns
    y: int         # level-1 encoding of the all-ones plaintext
    kappa: int


@dataclass
class SecretState:
    params: SystemParams
    p: tuple
    x0: int
    g: tuple
    z: tuple
    z_inv: tuple
    h: tuple
    crt_coeffs: tuple
    pzt: int
    seed: bytes = field(repr=False)
    noise_rngs: list = field(repr=False, default_factory=list)
    sample_rng: Prg = field(repr=False, default=None)
    _zinv_cache: dict = field(repr=False, default_factory=dict)

    def public(self) -> PublicParams:
        return PublicParams(self.x0, self.pzt, self.params.nu, self.params.U)

    def crt(self, residues) -> int:
        """Combine per-slot residues into the representative in ``[0, x0)``."""
        return sum(c * r for c, r in zip(self.crt_coeffs, residues)) % self.x0

    def z_inv_product(self, level) -> int:
        key = tuple(level)
        cached = self._zinv_cache.get(key)
        if cached is None:
            cached = 1
            for zi, vj in zip(self.z_inv, key):
                if vj:
                    cached = cached * pow(zi, vj, self.x0) % self.x0
            if len(self._zinv_cache) < 4096:
                self._zinv_cache[key] = cached
        return cached

    def z_product(self, level) -> int:
        out = 1
        for zj, vj in zip(self.z, level):
            if vj:
                out = out * pow(zj, vj, self.x0) % self.x0
        return out

    def secrets_text(self) -> str:
        """Debug dump of the trapdoor. Anyone holding it can decrypt anything."""
        lines = ["CLTSK1", f"lambda={self.params.lam}", f"U={self.params.U}"]
        lines += [f"p {i} {to_hex(v)}" for i, v in enumerate(self.p)]
        lines += [f"g {i} {to_hex(v)}" for i, v in enumerate(self.g)]
        lines += [f"h {i} {to_hex(v)}" for i, v in enumerate(self.h)]
        lines += [f"z {j} {to_hex(v)}" for j, v in enumerate(self.z)]
        return "\n".join(lines) + "\n"


def top_level(U: int) -> tuple:
    return (1,) * U


def indicator(U: int, indices) -> tuple:
    v = [0] * U
    for j in indices:
        v[j] = 1
    return tuple(v)


def _check_level(level, U) -> tuple:
    level = tuple(level)
    if len(level) != U:
        raise LevelError(f"level vector has length {len(level)}, expected {U}")
    if any(x not in (0, 1) for x in level):
        raise LevelError("level coordinates must be 0 or 1")
    return level


def instance_gen(params: SystemParams, seed: bytes):
    """Generate the trapdoor, the published zero-test triple and, in symmetric
    mode, the public encodings the attack consumes.

    Deterministic in ``(params, seed)``: slot ``i`` draws its prime, plaintext
    modulus and zero-test coefficient from its own stream.
    """
    params.validate()
    if not seed:
        raise ValueError("seed must be non-empty")
    setup = streams(seed, "setup", params.n_p)
    p, g, h = [], [], []
    for rng in setup:
        pi = rng.prime(params.eta)
        while pi in p:
            pi = rng.prime(params.eta)
        p.append(pi)
        g.append(rng.prime(params.alpha))
        h.append(1 + rng.randbelow((1 << params.beta) - 1))
    x0 = prod(p)

    zrng = Prg(seed, "z")

    def draw_z():
        while True:
            zj = 2 + zrng.randbelow(x0 - 2)
            if gcd(zj, x0) == 1:
                return zj

    if params.symmetric:
        z = (draw_z(),) * params.U
    else:
        z = tuple(draw_z() for _ in range(params.U))
    z_inv = tuple(int(gmpy2.invert(zj, x0)) for zj in z)

    crt_coeffs = []
    for pi in p:
        phat = x0 // pi
        crt_coeffs.append(phat * pow(phat, -1, pi) % x0)

    ztop = 1
    for zj in z:
        ztop = ztop * zj % x0
    pzt = 0
    for pi, gi, hi in zip(p, g, h):
        pzt += hi * (ztop * pow(gi, -1, pi) % pi) * (x0 // pi)
    pzt %= x0

    state = SecretState(
        params=params, p=tuple(p), x0=x0, g=tuple(g), z=z, z_inv=z_inv,
        h=tuple(h), crt_coeffs=tuple(crt_coeffs), pzt=pzt, seed=seed,
        noise_rngs=streams(seed, "noise", params.n_p),
        sample_rng=Prg(seed, "plaintext"),
    )
    pub = _symmetric_publics(state) if params.symmetric else None
    return state, state.public(), pub


def _symmetric_publics(state: SecretState) -> SymmetricPublicEncodings:
    prm = state.params
    zinv = state.z_inv[0]
    x0 = state.x0

    def numerators(msg):
        return [rng.signed(prm.rho) * gi + mi
                for rng, gi, mi in zip(state.noise_rngs, state.g, msg)]

    zeros = (0,) * prm.n_p
    ones = (1,) * prm.n_p
    xs = tuple(state.crt(numerators(zeros)) * zinv % x0 for _ in range(prm.tau))
    xps = tuple(state.crt(numerators(sample_plaintext(state))) for _ in range(prm.ell))
    y = state.crt(numerators(ones)) * zinv % x0
    return SymmetricPublicEncodings(xs=xs, xps=xps, y=y, kappa=prm.U)


def sample_plaintext(state: SecretState) -> tuple:
    """Uniform element of ``Z_g1 x ... x Z_gn``."""
    return tuple(state.sample_rng.randbelow(gi) for gi in state.g)


def encode(state: SecretState, m, level) -> Encoding:
    prm = state.params
    level = _check_level(level, prm.U)
    m = tuple(m)
    if len(m) != prm.n_p:
        raise ValueError(f"plaintext has {len(m)} slots, expected {prm.n_p}")
    if any(not 0 <= mi < gi for mi, gi in zip(m, state.g)):
        raise ValueError("plaintext component out of range [0, g_i)")
    nums = [rng.signed(prm.rho) * gi + mi
            for rng, gi, mi in zip(state.noise_rngs, state.g, m)]
    elem = state.crt(nums) * state.z_inv_product(level) % state.x0
    return Encoding(elem, level)


def add(pp: PublicParams, e1: Encoding, e2: Encoding) -> Encoding:
    if e1.level != e2.level:
        raise LevelError("cannot add encodings at different levels")
    return Encoding((e1.elem + e2.elem) % pp.x0, e1.level, max(e1.degree, e2.degree))


def neg(pp: PublicParams, e: Encoding) -> Encoding:
    return Encoding(-e.elem % pp.x0, e.level, e.degree)


def sub(pp: PublicParams, e1: Encoding, e2: Encoding) -> Encoding:
    return add(pp, e1, neg(pp, e2))


def mul(pp: PublicParams, e1: Encoding, e2: Encoding) -> Encoding:
    if len(e1.level) != len(e2.level):
        raise LevelError("level vectors differ in length")
    level = tuple(a + b for a, b in zip(e1.level, e2.level))
    if any(x > 1 for x in level):
        raise LevelError("product level exceeds the top level")
    degree = e1.degree + e2.degree
    if degree > pp.U + 1:
        raise LevelError(f"multiplicative degree {degree} exceeds the noise budget")
    return Encoding(e1.elem * e2.elem % pp.x0, level, degree)


def centered(x: int, modulus: int) -> int:
    """Representative of ``x`` in ``(-modulus/2, modulus/2]``."""
    x %= modulus
    return x - modulus if 2 * x > modulus else x


def zero_test(pp: PublicParams, elem: int) -> bool:
    """Raw zero test of a top-level integer: ``|elem*pzt mod x0| < x0 * 2**-nu``."""
    w = centered(elem * pp.pzt, pp.x0)
    return (abs(w) << pp.nu) < pp.x0


def is_zero(pp: PublicParams, e: Encoding) -> bool:
    if e.level != top_level(pp.U):
        raise LevelError("zero test requires a top-level encoding")
    return zero_test(pp, e.elem)


def decode_debug(state: SecretState, e: Encoding) -> tuple:
    """Recover the plaintext with the trapdoor. Test oracle only."""
    level = _check_level(e.level, state.params.U)
    lifted = e.elem * state.z_product(level) % state.x0
    bound = 1 << state.params.noise_budget_bits
    out = []
    for pi, gi in zip(state.p, state.g):
        r = centered(lifted, pi)
        if abs(r) >= bound:
            raise DecodeError("decode unreliable: numerator exceeds the noise budget")
        out.append(r % gi)
    return tuple(out)
