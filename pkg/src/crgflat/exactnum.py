"""Exact arithmetic in the rationals and in cyclotomic fields Q(zeta_N).

An element of Q(zeta_N) is stored as a vector of phi(N) rational coordinates
on the power basis 1, zeta_N, ..., zeta_N^(phi(N)-1), reduced modulo the
N-th cyclotomic polynomial.  Internally the coordinates are kept as a tuple
of integer numerators over one positive common denominator.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
import cmath

import mpmath

from .errors import IncompatibleOrder

Rational = Fraction

# Cross-order consistent hashing.  Every order dividing _HASH_M has a fixed
# primitive root of unity modulo the prime _HASH_P, compatible with the
# embeddings Q(zeta_N) -> Q(zeta_M).  Equal numbers hash equally no matter
# which order they are stored in.
_HASH_M = 9690712164777231700912800  # lcm(1..60)
_HASH_P = 634072987653539047422425416801
_HASH_W = 187096935059537657728129633683


def _to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


@lru_cache(maxsize=None)
def _cyclo_int(n: int) -> tuple:
    """Coefficients of Phi_n, ascending powers, as ints."""
    if n < 1:
        raise ValueError("order must be positive")
    # start from x^n - 1 and divide out Phi_d for proper divisors d
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _exact_div_int(num, _cyclo_int(d))
    return tuple(num)


def _exact_div_int(a, b):
    # monic integer polynomial division, ascending coefficient lists
    a = list(a)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            q[k - db] = c
            for j, bj in enumerate(b):
                a[k - db + j] -= c * bj
    assert not any(a[:db]), "inexact cyclotomic division"
    return q


def cyclotomic_polynomial(n: int) -> list:
    """Phi_n as a list of Fractions, index = power of x."""
    return [Fraction(c) for c in _cyclo_int(n)]


def totient(n: int) -> int:
    return len(_cyclo_int(n)) - 1


@lru_cache(maxsize=None)
def _sparse_phi(n: int):
    # (power, coeff) pairs of Phi_n minus its leading term, for reduction
    phi = _cyclo_int(n)
    deg = len(phi) - 1
    return deg, tuple((j, c) for j, c in enumerate(phi[:-1]) if c)


def _reduce(coeffs, n):
    """Reduce an int coefficient list (any length) modulo Phi_n, in place."""
    deg, tail = _sparse_phi(n)
    c = coeffs
    for k in range(len(c) - 1, deg - 1, -1):
        v = c[k]
        if v:
            base = k - deg
            for j, pj in tail:
                c[base + j] -= v * pj
    if len(c) < deg:
        c.extend([0] * (deg - len(c)))
    return c[:deg]


class CycloNumber:
    """Element of Q(zeta_N).

    ``CycloNumber(N, coeffs)`` accepts a coefficient sequence on powers of
    zeta_N of any length; it is reduced modulo Phi_N.
    """

    __slots__ = ("_n", "_nums", "_den", "_hash")

    def __init__(self, order: int, coeffs=()):
        order = int(order)
        if order < 1:
            raise ValueError("order must be positive")
        fr = [_to_fraction(c) for c in coeffs]
        den = 1
        for c in fr:
            den = lcm(den, c.denominator)
        nums = [c.numerator * (den // c.denominator) for c in fr]
        nums = _reduce(nums, order)
        self._set(order, nums, den)

    def _set(self, order, nums, den):
        g = gcd(den, *nums)
        if g > 1:
            nums = [x // g for x in nums]
            den //= g
        self._n = order
        self._nums = tuple(nums)
        self._den = den
        self._hash = None

    @classmethod
    def _raw(cls, order, nums, den):
        # nums already reduced, den > 0; normalises the gcd
        self = cls.__new__(cls)
        self._set(order, nums, den)
        return self

    @classmethod
    def from_rational(cls, r, order: int = 1):
        r = _to_fraction(r)
        nums = [0] * totient(order)
        nums[0] = r.numerator
        return cls._raw(order, nums, r.denominator)

    @classmethod
    def zeta(cls, order: int, power: int = 1):
        """zeta_order ** power."""
        nums = [0] * order
        nums[power % order] = 1
        return cls._raw(order, _reduce(nums, order), 1)

    # -- accessors -----------------------------------------------------
    @property
    def order(self) -> int:
        return self._n

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(x, self._den) for x in self._nums)

    def is_zero(self) -> bool:
        return not any(self._nums)

    def __bool__(self):
        return any(self._nums)

    def is_rational(self) -> bool:
        return not any(self._nums[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not rational")
        return Fraction(self._nums[0], self._den)

    # -- coercion ------------------------------------------------------
    def embed(self, order: int) -> "CycloNumber":
        """Image in Q(zeta_order); requires self.order | order."""
        if order == self._n:
            return self
        if order % self._n:
            raise IncompatibleOrder(f"cannot embed order {self._n} into {order}")
        step = order // self._n
        nums = [0] * max(order, 1)
        for j, c in enumerate(self._nums):
            if c:
                nums[(j * step) % order] += c
        return CycloNumber._raw(order, _reduce(nums, order), self._den)

    def _coerce(self, other):
        if isinstance(other, CycloNumber):
            if other._n == self._n:
                return self, other
            m = lcm(self._n, other._n)
            return self.embed(m), other.embed(m)
        if isinstance(other, (int, Fraction)):
            return self, CycloNumber.from_rational(other, self._n)
        return None, None

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if a._den == b._den:
            nums = [x + y for x, y in zip(a._nums, b._nums)]
            return CycloNumber._raw(a._n, nums, a._den)
        den = lcm(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        nums = [x * fa + y * fb for x, y in zip(a._nums, b._nums)]
        return CycloNumber._raw(a._n, nums, den)

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber._raw(self._n, [-x for x in self._nums], self._den)

    def __sub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return b + (-a)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _to_fraction(other)
            return CycloNumber._raw(
                self._n,
                [x * other.numerator for x in self._nums],
                self._den * other.denominator,
            )
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        an, bn = a._nums, b._nums
        deg = len(an)
        if deg == 1:
            return CycloNumber._raw(a._n, [an[0] * bn[0]], a._den * b._den)
        prod = [0] * (2 * deg - 1)
        for i, x in enumerate(an):
            if x:
                for j, y in enumerate(bn):
                    if y:
                        prod[i + j] += x * y
        return CycloNumber._raw(a._n, _reduce(prod, a._n), a._den * b._den)

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if len(self._nums) == 1:
            f = Fraction(self._den, self._nums[0])
            return CycloNumber.from_rational(f, self._n)
        # extended Euclid in Q[x]:  s*a + t*Phi = 1
        a = [Fraction(x, self._den) for x in self._nums]
        s = _poly_inverse_mod(a, cyclotomic_polynomial(self._n))
        return CycloNumber(self._n, s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = _to_fraction(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / other)
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        return b * a.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNumber.from_rational(1, self._n)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def conjugate(self) -> "CycloNumber":
        """Complex conjugate (zeta -> zeta^-1)."""
        n = self._n
        nums = [0] * max(n, 1)
        for j, c in enumerate(self._nums):
            if c:
                nums[(-j) % n] += c
        return CycloNumber._raw(n, _reduce(nums, n), self._den)

    # -- comparison ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and Fraction(self._nums[0], self._den) == other
        if not isinstance(other, CycloNumber):
            return NotImplemented
        a, b = self._coerce(other)
        return a._den == b._den and a._nums == b._nums

    def __hash__(self):
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(Fraction(self._nums[0], self._den))
            elif _HASH_M % self._n == 0:
                p = _HASH_P
                w = pow(_HASH_W, _HASH_M // self._n, p)
                acc = 0
                for c in reversed(self._nums):
                    acc = (acc * w + c) % p
                self._hash = hash((acc * pow(self._den, -1, p)) % p)
            else:
                # outside the supported conductor range: consistent but coarse
                self._hash = hash(self._n)
        return self._hash

    def __repr__(self):
        return f"CycloNumber({self._n}, {[str(c) for c in self.coeffs]})"

    def __str__(self):
        return format_cyclo(self)

    def __complex__(self):
        return approx_complex(self, 15)


def _poly_trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    if len(a) < len(b):
        return [Fraction(0)], a
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for j, bj in enumerate(b):
            a[shift + j] -= c * bj
        a.pop()
        _poly_trim(a)
    return q, a


def _poly_sub_mul(a, q, b):
    # a - q*b
    out = list(a) + [Fraction(0)] * max(0, len(q) + len(b) - 1 - len(a))
    for i, x in enumerate(q):
        if x:
            for j, y in enumerate(b):
                out[i + j] -= x * y
    return _poly_trim(out)


def _poly_inverse_mod(a, m):
    r0, r1 = _poly_trim(list(m)), _poly_trim(list(a))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub_mul(s0, q, s1)
    if not r1:
        raise ZeroDivisionError("element not invertible modulo cyclotomic polynomial")
    c = r1[0]
    return [x / c for x in s1]


# -- constructors ------------------------------------------------------------

def rational(r, order: int = 1) -> CycloNumber:
    return CycloNumber.from_rational(r, order)


def root_of_unity(k: int, order: int | None = None, power: int = 1) -> CycloNumber:
    """zeta_k ** power, stored in Q(zeta_order) (order defaults to k)."""
    order = k if order is None else order
    if order % k:
        raise IncompatibleOrder(f"zeta_{k} is not in Q(zeta_{order})")
    return CycloNumber.zeta(order, (order // k) * power)


def imag_unit(order: int) -> CycloNumber:
    return root_of_unity(4, order)


def _squarefree(n: int):
    sq, rest, p = 1, 1, 2
    while p * p <= n:
        while n % (p * p) == 0:
            sq *= p
            n //= p * p
        if n % p == 0:
            rest *= p
            n //= p
        p += 1
    return sq, rest * n


def _sqrt_prime(p: int, order: int) -> CycloNumber:
    if p == 2:
        # zeta_8 + zeta_8^-1
        return root_of_unity(8, order) + root_of_unity(8, order, -1)
    # quadratic Gauss sum gives sqrt(p*) with p* = (-1)^((p-1)/2) p
    g = rational(0, order)
    for k in range(1, p):
        leg = pow(k, (p - 1) // 2, p)
        g = g + (root_of_unity(p, order, k) if leg == 1 else -root_of_unity(p, order, k))
    if p % 4 == 1:
        return g
    return -imag_unit(order) * g


def sqrt_rational(r, order: int) -> CycloNumber:
    """Principal square root of a rational number inside Q(zeta_order)."""
    r = _to_fraction(r)
    if r == 0:
        return rational(0, order)
    neg = r < 0
    num, den = abs(r.numerator), r.denominator
    # sqrt(num/den) = sqrt(num*den)/den
    sq, free = _squarefree(num * den)
    out = rational(Fraction(sq, den), order)
    p = 2
    f = free
    while f > 1:
        if f % p == 0:
            out = out * _sqrt_prime(p, order)
            f //= p
        p += 1
    if neg:
        out = out * imag_unit(order)
    return out


def embed(a: CycloNumber, order: int) -> CycloNumber:
    return a.embed(order)


def common_order(*xs) -> int:
    m = 1
    for x in xs:
        if isinstance(x, CycloNumber):
            m = lcm(m, x.order)
    return m


def approx_complex(a, precision: int = 15):
    """Numerical value with |error| < 10**-precision.

    Returns a Python complex for precision <= 15, else an mpmath mpc.
    """
    if isinstance(a, (int, Fraction)):
        a = rational(a)
    with mpmath.workdps(precision + 10):
        z = mpmath.mpc(0)
        n = a.order
        for j, c in enumerate(a.coeffs):
            if c:
                z += mpmath.mpf(c.numerator) / c.denominator * mpmath.expjpi(mpmath.mpf(2 * j) / n)
        if precision <= 15:
            return complex(z)
        return +z


# -- serialization -----------------------------------------------------------

def to_json(a: CycloNumber) -> dict:
    return {
        "order": a.order,
        "coeffs": [[str(c.numerator), str(c.denominator)] for c in a.coeffs],
    }


def from_json(obj) -> CycloNumber:
    if not isinstance(obj, dict) or "order" not in obj or "coeffs" not in obj:
        raise ValueError("malformed cyclotomic number")
    cs = [Fraction(int(n), int(d)) for n, d in obj["coeffs"]]
    n = int(obj["order"])
    if len(cs) != totient(n):
        raise ValueError("coefficient length does not match totient of order")
    return CycloNumber(n, cs)


# -- pretty printing -----------------------------------------------------------

@lru_cache(maxsize=None)
def _named_units(order):
    # small table of recognisable irrationalities available in this field
    out = [("", rational(1, order))]
    for tag, val in (("i", lambda: imag_unit(order)),):
        try:
            out.append((tag, val()))
        except IncompatibleOrder:
            pass
    for p in (2, 3, 5, 6, 10, 15):
        try:
            s = sqrt_rational(p, order)
        except IncompatibleOrder:
            continue
        out.append((f"sqrt({p})", s))
        try:
            out.append((f"i*sqrt({p})", s * imag_unit(order)))
        except IncompatibleOrder:
            pass
    return tuple(out)


def recognize(a: CycloNumber):
    """Return (Fraction, tag) with a == Fraction * unit(tag), or None."""
    if a.is_rational():
        return a.to_fraction(), ""
    for tag, u in _named_units(a.order)[1:]:
        q = a / u
        if q.is_rational():
            return q.to_fraction(), tag
    return None


def format_cyclo(a: CycloNumber, latex: bool = False) -> str:
    rec = recognize(a)
    if rec is not None:
        f, tag = rec
        return _fmt_scaled(f, tag, latex)
    z = "\\zeta_{%d}" % a.order if latex else f"z{a.order}"
    parts = []
    for j, c in enumerate(a.coeffs):
        if not c:
            continue
        mono = "" if j == 0 else (z if j == 1 else (f"{z}^{{{j}}}" if latex else f"{z}^{j}"))
        parts.append(_fmt_scaled(c, mono, latex))
    s = " + ".join(parts).replace("+ -", "- ")
    return f"({s})"


def _fmt_scaled(f: Fraction, tag: str, latex: bool) -> str:
    if latex:
        tag = tag.replace("sqrt(", "\\sqrt{").replace(")", "}").replace("*", " ")
    if not tag:
        if latex and f.denominator != 1:
            sign = "-" if f < 0 else ""
            return f"{sign}\\frac{{{abs(f.numerator)}}}{{{f.denominator}}}"
        return str(f)
    if f == 1:
        return tag
    if f == -1:
        return "-" + tag
    if latex:
        if f.denominator != 1:
            sign = "-" if f < 0 else ""
            return f"{sign}\\frac{{{abs(f.numerator)}}}{{{f.denominator}}}{tag}"
        return f"{f.numerator}{tag}"
    return f"{f}*{tag}"
