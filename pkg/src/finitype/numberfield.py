"""Exact arithmetic in a real algebraic number field Q(rho).

Elements are coefficient vectors over the rationals in the power basis
``1, rho, ..., rho**(d-1)``.  The real embedding is fixed by a rational
isolating interval for ``rho``; signs are decided by interval evaluation
at increasing precision, which terminates because a nonzero element of
the field is a nonzero real number.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

__all__ = [
    "FieldError",
    "FieldMismatchError",
    "NumberField",
    "FieldElement",
    "RationalInterval",
    "QQ",
    "as_fraction",
    "field_arith",
    "field_sign",
    "field_to_float",
]


class FieldError(ValueError):
    """Invalid field definition or illegal operation (e.g. division by zero)."""


class FieldMismatchError(FieldError):
    """Operands live in different number fields."""


def as_fraction(value) -> Fraction:
    """Parse ``value`` (int, Fraction, or a ``"num/den"`` string) exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        # floats are accepted only when they are exact binary values the user typed
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational number")


# --- dense polynomials over Q, low degree first ----------------------------


def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_eval(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def _poly_sub(p, q):
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] -= c
    return _trim(out)


def _poly_mul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _poly_divmod(p, q):
    p = list(p)
    q = _trim(list(q))
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 1)
    lead = q[-1]
    while len(_trim(p)) >= len(q):
        shift = len(p) - len(q)
        coef = p[-1] / lead
        quot[shift] = coef
        for i, c in enumerate(q):
            p[i + shift] -= coef * c
        _trim(p)
    return _trim(quot), p


def _poly_deriv(p):
    return _trim([i * c for i, c in enumerate(p)][1:])


def _poly_gcd(p, q):
    p, q = _trim(list(p)), _trim(list(q))
    while q:
        p, q = q, _poly_divmod(p, q)[1]
    return p


def _sturm_count(p, lo: Fraction, hi: Fraction) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``."""
    seq = [_trim(list(p)), _poly_deriv(p)]
    while seq[-1]:
        rem = _poly_divmod(seq[-2], seq[-1])[1]
        if not rem:
            break
        seq.append([-c for c in rem])

    def changes(x):
        signs = [s for s in ((_poly_eval(f, x) > 0) - (_poly_eval(f, x) < 0) for f in seq) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    return changes(lo) - changes(hi)


# --- rational intervals -----------------------------------------------------


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval ``[lo, hi]`` with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def radius(self) -> float:
        return float(self.width / 2)

    def __float__(self) -> float:
        return float(self.mid)

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0

    def __add__(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    def __mul__(self, other: "RationalInterval") -> "RationalInterval":
        prods = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RationalInterval(min(prods), max(prods))

    def scale(self, c: Fraction) -> "RationalInterval":
        a, b = self.lo * c, self.hi * c
        return RationalInterval(min(a, b), max(a, b))

    def __repr__(self):
        return f"RationalInterval({float(self.lo)!r}, {float(self.hi)!r})"


# --- the field --------------------------------------------------------------


class NumberField:
    """The real field Q(rho), rho the unique root of ``minpoly`` in ``[lo, hi]``.

    ``minpoly`` is given low-degree-first.  Irreducibility is the caller's
    responsibility; only square-freeness and root isolation are verified.
    """

    __slots__ = ("minpoly", "degree", "interval", "_monic", "_powers", "_refined", "name")

    def __init__(self, minpoly: Iterable, root_interval: tuple, name: str = "rho"):
        poly = _trim([as_fraction(c) for c in minpoly])
        if len(poly) < 2:
            raise FieldError("minimal polynomial must have degree >= 1")
        lo, hi = (as_fraction(v) for v in root_interval)
        if lo > hi:
            raise FieldError("root interval is empty")
        if len(_poly_gcd(poly, _poly_deriv(poly))) > 1:
            raise FieldError("minimal polynomial is not square-free")
        flo, fhi = _poly_eval(poly, lo), _poly_eval(poly, hi)
        if not flo * fhi < 0:
            raise FieldError("minpoly must take strictly opposite signs at the interval ends")
        roots = _sturm_count(poly, lo, hi)
        if roots != 1:
            raise FieldError(f"root interval contains {roots} real roots, expected exactly one")
        self.minpoly = tuple(poly)
        self.degree = len(poly) - 1
        self.interval = (lo, hi)
        self.name = name
        self._monic = [c / poly[-1] for c in poly]
        d = self.degree
        # rho**(d+k) for k = 0..d-2 in the power basis
        powers = []
        cur = [-c for c in self._monic[:-1]]
        for _ in range(max(d - 1, 0)):
            powers.append(tuple(cur))
            lead = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            cur = [a - lead * m for a, m in zip(cur, self._monic[:-1])]
        self._powers = powers
        self._refined = RationalInterval(lo, hi)

    # equality is structural so that independently parsed specs interoperate
    def _key(self):
        return (self.minpoly, self.interval)

    def __eq__(self, other):
        return isinstance(other, NumberField) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"NumberField(minpoly={[str(c) for c in self.minpoly]}, root_interval={[str(v) for v in self.interval]})"

    # -- elements --

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatchError("element belongs to a different field")
            return value
        if isinstance(value, (list, tuple)):
            return self.element(value)
        return self.element([value])

    def element(self, coeffs: Iterable) -> "FieldElement":
        cs = [as_fraction(c) for c in coeffs]
        if len(cs) > self.degree:
            return FieldElement(self, self._reduce(cs))
        cs += [Fraction(0)] * (self.degree - len(cs))
        return FieldElement(self, tuple(cs))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, (Fraction(0),) * self.degree)

    @property
    def one(self) -> "FieldElement":
        return self.element([1])

    @property
    def gen(self) -> "FieldElement":
        """The generator rho itself."""
        if self.degree == 1:
            return self.element([-self._monic[0]])
        return self.element([0, 1])

    def _reduce(self, cs: list[Fraction]) -> tuple:
        d = self.degree
        if d == 1:
            return (_poly_eval(cs, -self._monic[0]),)
        out = list(cs[:d]) + [Fraction(0)] * max(d - len(cs), 0)
        for k, c in enumerate(cs[d:]):
            if c:
                for i, pc in enumerate(self._powers[k]):
                    out[i] += c * pc
        return tuple(out)

    # -- root refinement --

    def root_enclosure(self, bits: int) -> RationalInterval:
        """Isolating interval for rho of width at most ``2**-bits``."""
        iv = self._refined
        target = Fraction(1, 1 << bits)
        if iv.width <= target:
            return iv
        lo, hi = iv.lo, iv.hi
        s_lo = _poly_eval(self.minpoly, lo) > 0
        while hi - lo > target:
            m = (lo + hi) / 2
            fm = _poly_eval(self.minpoly, m)
            if fm == 0:
                lo = hi = m
                break
            if (fm > 0) == s_lo:
                lo = m
            else:
                hi = m
        iv = RationalInterval(lo, hi)
        self._refined = iv
        return iv

    def evaluate(self, coeffs: Sequence[Fraction], bits: int) -> RationalInterval:
        """Interval enclosure of ``sum c_i rho**i`` using a rho enclosure of width 2**-bits."""
        if self.degree == 1:
            v = coeffs[0]
            return RationalInterval(v, v)
        r = self.root_enclosure(bits)
        acc = RationalInterval(coeffs[-1], coeffs[-1])
        for c in reversed(coeffs[:-1]):
            acc = acc * r
            acc = RationalInterval(acc.lo + c, acc.hi + c)
        return acc


QQ = NumberField([0, 1], (-1, 1), name="q")


class FieldElement:
    """Immutable element of a :class:`NumberField`."""

    __slots__ = ("field", "coeffs", "_hash", "_sign")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs
        self._hash = None
        self._sign = None

    # -- coercion --

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatchError("cannot combine elements of different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([other])
        return NotImplemented

    # -- arithmetic --

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self.field.degree
        if d == 1:
            return FieldElement(self.field, (self.coeffs[0] * o.coeffs[0],))
        prod = [Fraction(0)] * (2 * d - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return FieldElement(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in number field")
        f = self.field
        if f.degree == 1:
            return FieldElement(f, (1 / self.coeffs[0],))
        # extended Euclid: s*x + t*m = g
        r0, r1 = list(f.minpoly), _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        if len(r0) != 1:
            raise FieldError("minimal polynomial is reducible: element is a zero divisor")
        inv = [c / r0[0] for c in s0]
        return f.element(inv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result, base = self.field.one, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- comparison --

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def sign(self) -> int:
        if self._sign is None:
            self._sign = _sign(self)
        return self._sign

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if not any(self.coeffs[1:]):
                self._hash = hash(self.coeffs[0])
            else:
                self._hash = hash(self.coeffs)
        return self._hash

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare FieldElement with {type(other).__name__}")
        return (self - o).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    # -- conversion --

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f"{self} is irrational")
        return self.coeffs[0]

    def enclosure(self, bits: int = 64) -> RationalInterval:
        return field_to_float(self, bits)

    def __float__(self):
        if self.is_rational():
            return float(self.coeffs[0])
        return float(field_to_float(self, 60).mid)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self):
        if self.field.degree == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else (self.field.name if i == 1 else f"{self.field.name}^{i}")
            if mono and c == 1:
                t = mono
            elif mono and c == -1:
                t = "-" + mono
            elif mono:
                t = f"{c}*{mono}"
            else:
                t = str(c)
            terms.append(t)
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out

    def __repr__(self):
        return f"FieldElement({self})"


def _sign(x: FieldElement) -> int:
    if x.is_zero():
        return 0
    if x.field.degree == 1 or x.is_rational():
        c = x.coeffs[0]
        return (c > 0) - (c < 0)
    bits = 64
    while True:
        iv = x.field.evaluate(x.coeffs, bits)
        if iv.lo > 0:
            return 1
        if iv.hi < 0:
            return -1
        bits *= 2


# --- functional surface -----------------------------------------------------


def field_arith(x: FieldElement, y: FieldElement, op: str) -> FieldElement:
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} exactly."""
    if not isinstance(x, FieldElement) or not isinstance(y, FieldElement):
        raise TypeError("field_arith expects two FieldElements")
    if x.field != y.field:
        raise FieldMismatchError("cannot combine elements of different number fields")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def field_sign(x: FieldElement) -> int:
    """Sign of the real number ``x`` (-1, 0 or +1)."""
    return x.sign()


def field_to_float(x: FieldElement, precision_bits: int = 53) -> RationalInterval:
    """Enclosure of ``x`` with width <= 2**(2 - precision_bits) * max(1, |x|)."""
    if precision_bits < 16:
        raise ValueError("precision_bits must be >= 16")
    if x.is_rational():
        v = x.coeffs[0]
        return RationalInterval(v, v)
    bits = precision_bits + 8
    while True:
        iv = x.field.evaluate(x.coeffs, bits)
        scale = max(Fraction(1), abs(iv.lo), abs(iv.hi))
        if iv.width <= Fraction(4, 1 << precision_bits) * scale:
            return iv
        bits *= 2
