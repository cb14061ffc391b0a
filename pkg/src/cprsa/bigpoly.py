"""Exact integer and sparse polynomial arithmetic.

Everything here works over plain Python ints (arbitrary precision), so all
coefficient growth in lattice rows, resultants and root isolation stays exact.
Trivariate polynomials are sparse maps from exponent triples to coefficients;
univariate polynomials are dense coefficient lists.
"""

from __future__ import annotations

import math
from fractions import Fraction


# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

def nth_root_floor(x: int, n: int) -> int:
    """Largest r with r**n <= x, for x >= 0, n >= 1."""
    if x < 0:
        raise ValueError("nth_root_floor needs x >= 0")
    if n <= 0:
        raise ValueError("nth_root_floor needs n >= 1")
    if x == 0:
        return 0
    if n == 1:
        return x
    if n == 2:
        return math.isqrt(x)
    r = 1 << (x.bit_length() // n + 1)
    while True:
        nr = ((n - 1) * r + x // r ** (n - 1)) // n
        if nr >= r:
            return r
        r = nr


def pow_ceil(base: int, exponent: Fraction) -> int:
    """ceil(base**exponent) for base >= 1 and exponent > 0, exactly."""
    if base < 1 or exponent <= 0:
        raise ValueError("pow_ceil needs base >= 1 and exponent > 0")
    num, den = exponent.numerator, exponent.denominator
    v = base ** num
    r = nth_root_floor(v, den)
    if r ** den < v:
        r += 1
    return r


def sqrt_fraction(value: Fraction, prec_bits: int = 128) -> Fraction:
    """Square root of a nonnegative rational.

    Returns the exact rational root whenever ``value`` is a perfect square of
    a rational (e.g. 484/25 -> 22/5); otherwise a lower approximation with a
    ``prec_bits``-bit mantissa, i.e. relative error below 2**-prec_bits.
    """
    if value < 0:
        raise ValueError("sqrt_fraction needs a nonnegative value")
    if value == 0:
        return Fraction(0)
    n, d = value.numerator, value.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    scale = 1 << prec_bits
    return Fraction(math.isqrt(n * d * scale * scale), d * scale)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# sparse trivariate polynomials
# ---------------------------------------------------------------------------

class TrivariatePolynomial:
    """Sparse integer polynomial in x1, x2, x3.

    Terms live in a dict mapping exponent triples to nonzero coefficients.
    Instances are treated as immutable; all operations return new objects.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for expo, coeff in (terms.items() if isinstance(terms, dict) else terms):
                expo = tuple(expo)
                if len(expo) != 3 or any(e < 0 or not isinstance(e, int) for e in expo):
                    raise ValueError(f"bad exponent triple {expo!r}")
                coeff = clean.get(expo, 0) + coeff
                if coeff:
                    clean[expo] = coeff
                elif expo in clean:
                    del clean[expo]
        self.terms = clean

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c: int) -> "TrivariatePolynomial":
        return cls({(0, 0, 0): c} if c else {})

    @classmethod
    def variable(cls, var: int) -> "TrivariatePolynomial":
        expo = [0, 0, 0]
        expo[var] = 1
        return cls({tuple(expo): 1})

    # -- predicates and accessors -------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0, 0, 0)}

    def constant_coeff(self) -> int:
        return self.terms.get((0, 0, 0), 0)

    def coeff(self, expo) -> int:
        return self.terms.get(tuple(expo), 0)

    def monomials(self):
        return sorted(self.terms)

    def degree(self, var: int) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(e[var] for e in self.terms)

    def max_abs_coeff(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, TrivariatePolynomial):
            return self.terms == other.terms
        if isinstance(other, int):
            return self.terms == ({(0, 0, 0): other} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"TrivariatePolynomial({self.to_text()!r})"

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = TrivariatePolynomial.constant(other)
        out = dict(self.terms)
        for expo, coeff in other.terms.items():
            c = out.get(expo, 0) + coeff
            if c:
                out[expo] = c
            elif expo in out:
                del out[expo]
        res = TrivariatePolynomial.__new__(TrivariatePolynomial)
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = TrivariatePolynomial.__new__(TrivariatePolynomial)
        res.terms = {e: -c for e, c in self.terms.items()}
        return res

    def __sub__(self, other):
        if isinstance(other, int):
            other = TrivariatePolynomial.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return TrivariatePolynomial()
            res = TrivariatePolynomial.__new__(TrivariatePolynomial)
            res.terms = {e: c * other for e, c in self.terms.items()}
            return res
        out = {}
        for (a1, a2, a3), ca in self.terms.items():
            for (b1, b2, b3), cb in other.terms.items():
                expo = (a1 + b1, a2 + b2, a3 + b3)
                c = out.get(expo, 0) + ca * cb
                if c:
                    out[expo] = c
                elif expo in out:
                    del out[expo]
        res = TrivariatePolynomial.__new__(TrivariatePolynomial)
        res.terms = out
        return res

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = TrivariatePolynomial.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    # -- evaluation and norms -------------------------------------------------

    def eval(self, point) -> int:
        x1, x2, x3 = point
        total = 0
        for (i1, i2, i3), c in self.terms.items():
            total += c * x1 ** i1 * x2 ** i2 * x3 ** i3
        return total

    __call__ = eval

    def norm2_sq(self) -> int:
        """Sum of squared coefficients (the squared Euclidean norm)."""
        return sum(c * c for c in self.terms.values())

    def scale_vars(self, X1: int, X2: int, X3: int) -> "TrivariatePolynomial":
        """Substitute x_j -> x_j * X_j; multiplies each coefficient by X^expo."""
        if X1 < 1 or X2 < 1 or X3 < 1:
            raise ValueError("scale factors must be >= 1")
        res = TrivariatePolynomial.__new__(TrivariatePolynomial)
        res.terms = {
            (i1, i2, i3): c * X1 ** i1 * X2 ** i2 * X3 ** i3
            for (i1, i2, i3), c in self.terms.items()
        }
        return res

    def subs_var(self, var: int, value: int) -> "TrivariatePolynomial":
        """Partial evaluation: substitute an integer for one variable."""
        out = TrivariatePolynomial()
        for expo, c in self.terms.items():
            new = list(expo)
            k = new[var]
            new[var] = 0
            out = out + TrivariatePolynomial({tuple(new): c * value ** k})
        return out

    def coeffs_in_var(self, var: int):
        """Coefficients of var^0..var^deg as polynomials in the other variables."""
        deg = self.degree(var)
        buckets = [{} for _ in range(max(deg, 0) + 1)]
        for expo, c in self.terms.items():
            new = list(expo)
            k = new[var]
            new[var] = 0
            buckets[k][tuple(new)] = c
        out = []
        for b in buckets:
            p = TrivariatePolynomial.__new__(TrivariatePolynomial)
            p.terms = b
            out.append(p)
        return out

    def to_univariate(self, var: int) -> "UnivariatePolynomial":
        """Convert when the support uses only one variable."""
        coeffs = [0] * (self.degree(var) + 1)
        for expo, c in self.terms.items():
            others = [expo[j] for j in range(3) if j != var]
            if any(others):
                raise ValueError("polynomial is not univariate in the requested variable")
            coeffs[expo[var]] = c
        return UnivariatePolynomial(coeffs)

    # -- exact division -------------------------------------------------------

    def div_exact(self, divisor: "TrivariatePolynomial") -> "TrivariatePolynomial":
        """Exact quotient self/divisor; raises ValueError if it does not divide."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = dict(self.terms)
        lead = max(divisor.terms)  # lex order
        lead_c = divisor.terms[lead]
        quot = {}
        while rem:
            rlead = max(rem)
            rc = rem[rlead]
            qe = tuple(r - l for r, l in zip(rlead, lead))
            if any(e < 0 for e in qe) or rc % lead_c != 0:
                raise ValueError("division is not exact")
            qc = rc // lead_c
            quot[qe] = quot.get(qe, 0) + qc
            for de, dc in divisor.terms.items():
                expo = tuple(q + d for q, d in zip(qe, de))
                c = rem.get(expo, 0) - qc * dc
                if c:
                    rem[expo] = c
                elif expo in rem:
                    del rem[expo]
        res = TrivariatePolynomial.__new__(TrivariatePolynomial)
        res.terms = {e: c for e, c in quot.items() if c}
        return res

    def divisible_by(self, divisor: "TrivariatePolynomial") -> bool:
        try:
            self.div_exact(divisor)
            return True
        except ValueError:
            return False

    # -- canonical text form --------------------------------------------------

    def to_text(self) -> str:
        """Canonical serialization: lex-sorted `coeff*x1^i1*x2^i2*x3^i3` terms."""
        if not self.terms:
            return "0"
        parts = []
        for (i1, i2, i3) in sorted(self.terms):
            c = self.terms[(i1, i2, i3)]
            parts.append(f"{c}*x1^{i1}*x2^{i2}*x3^{i3}")
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str) -> "TrivariatePolynomial":
        text = text.strip()
        if text == "0":
            return cls()
        terms = {}
        for part in text.split(" + "):
            cs, xs1, xs2, xs3 = part.split("*")
            expo = tuple(int(x.split("^")[1]) for x in (xs1, xs2, xs3))
            terms[expo] = int(cs)
        return cls(terms)


# ---------------------------------------------------------------------------
# resultants
# ---------------------------------------------------------------------------

def sylvester_matrix(f: TrivariatePolynomial, g: TrivariatePolynomial, var: int):
    """Sylvester matrix of f and g with respect to one variable.

    Entries are polynomials in the remaining variables.  f's coefficients
    occupy the top rows (this fixes the sign of the resultant).
    """
    m, n = f.degree(var), g.degree(var)
    if m < 1 or n < 1:
        raise ValueError("resultant needs positive degree in the eliminated variable")
    fc = f.coeffs_in_var(var)[::-1]  # leading first
    gc = g.coeffs_in_var(var)[::-1]
    size = m + n
    zero = TrivariatePolynomial()
    mat = [[zero] * size for _ in range(size)]
    for i in range(n):
        for j, c in enumerate(fc):
            mat[i][i + j] = c
    for i in range(m):
        for j, c in enumerate(gc):
            mat[n + i][i + j] = c
    return mat


def _bareiss_det_poly(mat):
    """Fraction-free determinant of a matrix of TrivariatePolynomial entries."""
    n = len(mat)
    m = [row[:] for row in mat]
    sign = 1
    prev = TrivariatePolynomial.constant(1)
    for k in range(n - 1):
        if m[k][k].is_zero():
            for r in range(k + 1, n):
                if not m[r][k].is_zero():
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return TrivariatePolynomial()
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num.div_exact(prev)
            m[i][k] = TrivariatePolynomial()
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def resultant(f: TrivariatePolynomial, g: TrivariatePolynomial, var: int) -> TrivariatePolynomial:
    """Res_var(f, g): eliminates `var`; zero iff f and g share a factor.

    Computed as the Bareiss determinant of the Sylvester matrix, so the
    result is exact and vanishes at every common root of f and g.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("resultant of a zero polynomial is degenerate")
    return _bareiss_det_poly(sylvester_matrix(f, g, var))


# ---------------------------------------------------------------------------
# dense univariate polynomials
# ---------------------------------------------------------------------------

class UnivariatePolynomial:
    """Dense integer polynomial; coeffs[i] is the coefficient of x^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = c

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, UnivariatePolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def __repr__(self):
        return f"UnivariatePolynomial({self.coeffs})"

    def eval(self, x: int) -> int:
        total = 0
        for c in reversed(self.coeffs):
            total = total * x + c
        return total

    __call__ = eval

    def derivative(self) -> "UnivariatePolynomial":
        return UnivariatePolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def content(self) -> int:
        return math.gcd(*self.coeffs) if self.coeffs else 0

    def primitive_part(self) -> "UnivariatePolynomial":
        c = self.content()
        if c in (0, 1):
            return self
        return UnivariatePolynomial([x // c for x in self.coeffs])

    def div_exact(self, divisor: "UnivariatePolynomial") -> "UnivariatePolynomial":
        """Exact quotient; raises ValueError when the division leaves a remainder."""
        if divisor.is_zero():
            raise ZeroDivisionError
        rem = list(self.coeffs)
        dv = divisor.coeffs
        dd = len(dv) - 1
        if len(rem) - 1 < dd:
            if not rem:
                return UnivariatePolynomial()
            raise ValueError("division is not exact")
        q = [0] * (len(rem) - dd)
        for i in range(len(rem) - 1, dd - 1, -1):
            if rem[i] == 0:
                continue
            if rem[i] % dv[-1] != 0:
                raise ValueError("division is not exact")
            qi = rem[i] // dv[-1]
            q[i - dd] = qi
            for j, dc in enumerate(dv):
                rem[i - dd + j] -= qi * dc
        if any(rem[:dd]):
            raise ValueError("division is not exact")
        return UnivariatePolynomial(q)


def _pseudo_rem(a, b):
    """Pseudo-remainder of dense coefficient lists (b nonzero, deg a >= deg b)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [lb * x for x in a]
        for j in range(db + 1):
            a[shift + j] -= la * b[j]
        while a and a[-1] == 0:
            a.pop()
    return a


def univariate_gcd(f: UnivariatePolynomial, g: UnivariatePolynomial) -> UnivariatePolynomial:
    """Primitive gcd over the integers via a primitive pseudo-remainder sequence."""
    a, b = list(f.coeffs), list(g.coeffs)
    if not a:
        return g.primitive_part()
    if not b:
        return f.primitive_part()
    if len(a) < len(b):
        a, b = b, a
    a = UnivariatePolynomial(a).primitive_part().coeffs
    b = UnivariatePolynomial(b).primitive_part().coeffs
    while b:
        r = _pseudo_rem(a, b)
        a, b = b, UnivariatePolynomial(r).primitive_part().coeffs
    res = UnivariatePolynomial(a)
    if res.coeffs and res.coeffs[-1] < 0:
        res = UnivariatePolynomial([-c for c in res.coeffs])
    return res


def squarefree_part(h: UnivariatePolynomial) -> UnivariatePolynomial:
    """h with repeated factors collapsed: h / gcd(h, h')."""
    if h.degree <= 1:
        return h.primitive_part()
    g = univariate_gcd(h, h.derivative())
    if g.degree < 1:
        return h.primitive_part()
    return h.primitive_part().div_exact(g).primitive_part()


# ---------------------------------------------------------------------------
# integer root isolation
# ---------------------------------------------------------------------------

def _taylor_shift(coeffs, a):
    """Coefficients of p(x + a), synthetic-division style, exact."""
    c = list(coeffs)
    n = len(c)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            c[j] += a * c[j + 1]
    return c


def _descartes_variations(coeffs, lo, hi):
    """Sign variations bounding the roots of p in the open interval (lo, hi).

    Maps (lo, hi) onto (0, inf) with x = (lo + hi*t)/(1 + t) and counts the
    Descartes sign variations of the transformed polynomial: 0 means no root
    in the interval, 1 means exactly one, and larger counts bound the root
    count from above (with matching parity).
    """
    width = hi - lo
    q = _taylor_shift(coeffs, lo)  # p(lo + u)
    scale = 1
    for i in range(1, len(q)):
        scale *= width
        q[i] *= scale  # p(lo + width*u)
    t = _taylor_shift(q[::-1], 1)  # (1+t)^n * p((lo + hi*t)/(1+t))
    var = 0
    prev = 0
    for c in t:
        s = _sign(c)
        if s and prev and s != prev:
            var += 1
        if s:
            prev = s
    return var


def univariate_integer_roots(h: UnivariatePolynomial, bound: int):
    """All integers r with |r| <= bound and h(r) = 0, in ascending order.

    Root isolation runs on the squarefree part: intervals with integer
    endpoints are split by bisection, pruned by Descartes variation counts
    (a plain sign-change rule would miss even-multiplicity clusters), and
    single-root intervals finish with integer sign-change bisection.  Every
    candidate is then verified by exact evaluation of the original h.
    """
    if h.is_zero():
        raise ValueError("zero polynomial has every root")
    if bound < 1:
        raise ValueError("bound must be >= 1")
    candidates = set()
    coeffs = list(h.coeffs)
    if coeffs[0] == 0:
        candidates.add(0)
        while coeffs[0] == 0:
            coeffs.pop(0)
    core = squarefree_part(UnivariatePolynomial(coeffs))
    if core.degree >= 1:
        cf = core.coeffs
        cauchy = 2 + max(abs(c) for c in cf[:-1]) // abs(cf[-1]) if len(cf) > 1 else 1
        b = min(bound, cauchy)
        stack = [(-b, b)]
        candidates.add(b)
        candidates.add(-b)
        while stack:
            lo, hi = stack.pop()
            if hi - lo < 2:
                continue
            var = _descartes_variations(cf, lo, hi)
            if var == 0:
                continue
            if var == 1:
                slo, shi = _sign(core.eval(lo)), _sign(core.eval(hi))
                if slo and shi:
                    while hi - lo > 1:
                        mid = (lo + hi) // 2
                        smid = _sign(core.eval(mid))
                        if smid == 0:
                            candidates.add(mid)
                            break
                        if smid == slo:
                            lo = mid
                        else:
                            hi = mid
                    continue
                # an endpoint of the interval is itself a root: fall through
                # to the generic split, which re-counts on both halves
            mid = (lo + hi) // 2
            candidates.add(mid)
            stack.append((lo, mid))
            stack.append((mid, hi))
    return sorted(r for r in candidates if abs(r) <= bound and h.eval(r) == 0)
