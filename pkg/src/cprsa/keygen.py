"""Common prime RSA instance generation.

The keys use balanced primes p = 2ga+1 and q = 2gb+1 sharing a prime g, with
gcd(a,b) = 1 and h = 2gab+a+b prime, so (pq-1)/2 = gh is a semiprime.  The
exponents satisfy e*d = 1 (mod 2gab) because lcm(p-1, q-1) = 2gab.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass
from fractions import Fraction

_SMALL_PRIMES = [p for p in range(2, 1500) if all(p % q for q in range(2, p))]

RETRY_CAP = 10 ** 6


class InfeasibleParametersError(Exception):
    """Raised when the prime search exceeds its retry budget."""


def is_probable_prime(n: int, rounds: int = 64, rng: random.Random | None = None) -> bool:
    """Miller-Rabin with trial division by small primes first."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if rng is None:
        rng = random.Random(n & 0xFFFFFFFF)
    r, s = 0, n - 1
    while s % 2 == 0:
        r += 1
        s //= 2
    for _ in range(rounds):
        a = rng.randrange(2, n - 1)
        x = pow(a, s, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _random_prime(bits: int, rng: random.Random) -> int:
    while True:
        c = rng.randrange(1 << (bits - 1), 1 << bits) | 1
        if is_probable_prime(c, rng=rng):
            return c


@dataclass(frozen=True)
class CommonPrimeInstance:
    """A full key generation transcript."""

    n: int
    p: int
    q: int
    g: int
    a: int
    b: int
    h: int
    e: int
    d: int
    k: int
    bits: int
    gamma_bits: int
    delta_bits: int
    seed: int

    @property
    def gamma(self) -> Fraction:
        return Fraction(self.gamma_bits, self.bits)

    @property
    def delta(self) -> Fraction:
        return Fraction(self.delta_bits, self.bits)

    @property
    def lcm(self) -> int:
        return 2 * self.g * self.a * self.b

    @property
    def root(self) -> tuple[int, int, int]:
        """The planted root (d, ak, bk) of the attack polynomial."""
        return (self.d, self.a * self.k, self.b * self.k)

    def to_json(self) -> str:
        fields = ("n", "p", "q", "g", "a", "b", "h", "e", "d", "k",
                  "bits", "gamma_bits", "delta_bits", "seed")
        return json.dumps({f: str(getattr(self, f)) for f in fields}, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "CommonPrimeInstance":
        data = json.loads(text)
        return cls(**{key: int(value) for key, value in data.items()})


def generate_instance(bits: int, gamma_bits: int, delta_bits: int,
                      seed: int) -> CommonPrimeInstance:
    """Generate an instance with |N| ~ bits, |g| = gamma_bits, |d| = delta_bits.

    Deterministic given the seed.  Sampling order: prime g first, then
    coprime (a, b) until p, q, and h are simultaneously prime, then an odd d
    coprime to 2gab with e its modular inverse.  Raises
    InfeasibleParametersError after RETRY_CAP candidate (a, b) pairs.
    """
    if not 0 < gamma_bits < bits // 2:
        raise InfeasibleParametersError(
            f"gamma_bits={gamma_bits} must lie strictly between 0 and bits/2={bits // 2}")
    if not 0 < delta_bits < bits:
        raise InfeasibleParametersError(f"delta_bits={delta_bits} out of range for bits={bits}")
    rng = random.Random(seed)
    half = bits // 2
    g = _random_prime(gamma_bits, rng)
    # a, b ranges chosen so p = 2ga+1 and q = 2gb+1 land on `half` bits
    lo = ((1 << (half - 1)) - 1) // (2 * g) + 1
    hi = ((1 << half) - 2) // (2 * g)
    if lo > hi:
        raise InfeasibleParametersError("gamma_bits too close to bits/2: empty (a, b) range")
    tries = 0
    a = p = 0
    while True:
        tries += 1
        if tries > RETRY_CAP:
            raise InfeasibleParametersError(f"no valid (a, b) pair within {RETRY_CAP} tries")
        if not a:
            cand = rng.randrange(lo, hi + 1)
            pc = 2 * g * cand + 1
            if is_probable_prime(pc, rng=rng):
                a, p = cand, pc
            continue
        b = rng.randrange(lo, hi + 1)
        if math.gcd(a, b) != 1:
            continue
        q = 2 * g * b + 1
        if not is_probable_prime(q, rng=rng):
            continue
        h = 2 * g * a * b + a + b
        if is_probable_prime(h, rng=rng):
            break
    n = p * q
    lcm = 2 * g * a * b
    while True:
        d = rng.randrange(1 << (delta_bits - 1), 1 << delta_bits) | 1
        if math.gcd(d, lcm) == 1:
            break
    e = pow(d, -1, lcm)
    k = (e * d - 1) // lcm
    return CommonPrimeInstance(n=n, p=p, q=q, g=g, a=a, b=b, h=h, e=e, d=d, k=k,
                               bits=bits, gamma_bits=gamma_bits,
                               delta_bits=delta_bits, seed=seed)


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class VerificationReport:
    checks: list[CheckResult]
    gcd_k_2g: int

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed(self) -> list[str]:
        return [c.name for c in self.checks if not c.ok]


def verify_instance(inst: CommonPrimeInstance) -> VerificationReport:
    """Re-check every structural invariant independently.

    Primality uses 64 Miller-Rabin rounds.  gcd(k, 2g) is measured and
    reported but not required to be 1: the key equation holds either way,
    and generated instances do occasionally have gcd(k, 2g) > 1.
    """
    checks = []

    def add(name, ok, detail=""):
        checks.append(CheckResult(name, bool(ok), detail))

    add("n_is_pq", inst.n == inst.p * inst.q)
    add("p_structure", inst.p == 2 * inst.g * inst.a + 1)
    add("q_structure", inst.q == 2 * inst.g * inst.b + 1)
    add("h_structure", inst.h == 2 * inst.g * inst.a * inst.b + inst.a + inst.b)
    add("g_prime", is_probable_prime(inst.g))
    add("p_prime", is_probable_prime(inst.p))
    add("q_prime", is_probable_prime(inst.q))
    add("h_prime", is_probable_prime(inst.h))
    add("a_b_coprime", math.gcd(inst.a, inst.b) == 1)
    add("semiprime_split", (inst.p * inst.q - 1) // 2 == inst.g * inst.h,
        "(pq-1)/2 == g*h")
    lcm = inst.lcm
    add("key_equation", inst.e * inst.d % lcm == 1, "e*d = 1 (mod 2gab)")
    add("k_consistent", inst.e * inst.d - 1 == inst.k * lcm)
    add("e_range", 1 < inst.e < lcm)
    add("d_bits", inst.d.bit_length() == inst.delta_bits)
    add("g_bits", abs(inst.g.bit_length() - inst.gamma_bits) <= 1)
    add("balanced", abs(inst.p.bit_length() - inst.q.bit_length()) <= 1)
    add("n_bits", abs(inst.n.bit_length() - inst.bits) <= 1)
    return VerificationReport(checks=checks, gcd_k_2g=math.gcd(inst.k, 2 * inst.g))


def toy_instance() -> CommonPrimeInstance:
    """The hand-checkable fixture: g=3, a=2, b=3, d=11 (N=247, e=23, k=7)."""
    return CommonPrimeInstance(n=247, p=13, q=19, g=3, a=2, b=3, h=41,
                               e=23, d=11, k=7, bits=8, gamma_bits=2,
                               delta_bits=4, seed=0)
