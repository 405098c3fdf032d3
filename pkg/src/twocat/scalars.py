"""Exact scalars in Q or in a quadratic extension Q(T), T^2 = p*T + q.

Every coefficient in the package (structure constants, witness weights,
module actions) is a :class:`Scalar`.  Floats never enter this module.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import ConfigurationError, DivisionByZero, MixedFields, NoRealEmbedding

RationalLike = Union[int, Fraction]


def _is_square(x: Fraction) -> bool:
    if x < 0:
        return False
    n, d = x.numerator, x.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


@dataclass(frozen=True)
class FieldSpec:
    """Q (kind="rationals") or Q(T) with T^2 = p*T + q (kind="quadratic")."""

    kind: str = "rationals"
    p: Fraction | None = None
    q: Fraction | None = None
    real_embedding: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.kind == "rationals":
            if self.p is not None or self.q is not None:
                raise ConfigurationError("the rationals take no p, q")
            object.__setattr__(self, "real_embedding", True)
            return
        if self.kind != "quadratic":
            raise ConfigurationError(
                f"unsupported field kind {self.kind!r}; only Q and quadratic extensions")
        if self.p is None or self.q is None:
            raise ConfigurationError("a quadratic field needs p and q")
        p, q = Fraction(self.p), Fraction(self.q)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        disc = p * p + 4 * q
        if _is_square(disc):
            raise ConfigurationError(
                f"T^2 = {p}*T + {q} is reducible over Q; not a field")
        object.__setattr__(self, "real_embedding", disc >= 0)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return QQ

    @classmethod
    def quadratic(cls, p: RationalLike, q: RationalLike) -> "FieldSpec":
        return cls("quadratic", Fraction(p), Fraction(q))

    @property
    def is_rational(self) -> bool:
        return self.kind == "rationals"

    @property
    def discriminant(self) -> Fraction:
        if self.is_rational:
            raise ConfigurationError("Q has no discriminant")
        return self.p * self.p + 4 * self.q

    # element constructors
    def __call__(self, a: RationalLike = 0, b: RationalLike = 0) -> "Scalar":
        return Scalar(a, b, self)

    @property
    def zero(self) -> "Scalar":
        return Scalar(0, 0, self)

    @property
    def one(self) -> "Scalar":
        return Scalar(1, 0, self)

    @property
    def theta(self) -> "Scalar":
        if self.is_rational:
            raise ConfigurationError("Q has no generator T")
        return Scalar(0, 1, self)

    def coerce(self, x) -> "Scalar":
        """Lift an int, Fraction or rational-valued Scalar into this field."""
        if isinstance(x, Scalar):
            if x.spec == self:
                return x
            if x.b == 0:
                return Scalar(x.a, 0, self)
            raise MixedFields(f"cannot move {x} from {x.spec} to {self}")
        if isinstance(x, Rational):
            return Scalar(Fraction(x), 0, self)
        raise TypeError(f"cannot coerce {type(x).__name__} into a field element")

    def text(self) -> str:
        if self.is_rational:
            return "Q"
        return f"quad {self.p} {self.q}"

    def __str__(self) -> str:
        if self.is_rational:
            return "Q"
        return f"Q(T), T^2 = {self.p}*T + {self.q}"


QQ = FieldSpec()


def sqrt_field(d: int) -> FieldSpec:
    """Q(sqrt d) with T the positive square root."""
    return FieldSpec.quadratic(0, d)


class Scalar:
    """Immutable a + b*T in the field ``spec``."""

    __slots__ = ("a", "b", "spec")

    def __init__(self, a: RationalLike = 0, b: RationalLike = 0, spec: FieldSpec = QQ):
        a = a if type(a) is Fraction else Fraction(a)
        b = b if type(b) is Fraction else Fraction(b)
        if spec.is_rational and b:
            raise ConfigurationError("a rational Scalar has no T-part")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "spec", spec)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # coercion: Q embeds silently into any quadratic field; two distinct
    # quadratic fields never mix
    def _pair(self, y):
        if isinstance(y, Scalar):
            if y.spec is self.spec or y.spec == self.spec:
                return self, y
            if y.spec.is_rational:
                return self, Scalar(y.a, 0, self.spec)
            if self.spec.is_rational:
                return Scalar(self.a, 0, y.spec), y
            raise MixedFields(f"{self.spec} vs {y.spec}")
        if isinstance(y, Rational):
            return self, Scalar(y, 0, self.spec)
        return None

    # arithmetic
    def __add__(self, y):
        p = self._pair(y)
        if p is None:
            return NotImplemented
        x, y = p
        return Scalar(x.a + y.a, x.b + y.b, x.spec)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(-self.a, -self.b, self.spec)

    def __pos__(self):
        return self

    def __sub__(self, y):
        p = self._pair(y)
        if p is None:
            return NotImplemented
        x, y = p
        return Scalar(x.a - y.a, x.b - y.b, x.spec)

    def __rsub__(self, y):
        p = self._pair(y)
        if p is None:
            return NotImplemented
        x, y = p
        return y - x

    def __mul__(self, y):
        p = self._pair(y)
        if p is None:
            return NotImplemented
        x, y = p
        a, b, c, d = x.a, x.b, y.a, y.b
        if not b or not d:
            return Scalar(a * c, a * d + b * c, x.spec)
        bd = b * d
        s = x.spec
        return Scalar(a * c + bd * s.q, a * d + b * c + bd * s.p, s)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        """(a + bT)(a + bT') with T' = p - T the conjugate root."""
        if not self.b:
            return self.a * self.a
        s = self.spec
        return self.a * self.a + self.a * self.b * s.p - self.b * self.b * s.q

    def conjugate(self) -> "Scalar":
        if not self.b:
            return self
        return Scalar(self.a + self.b * self.spec.p, -self.b, self.spec)

    def inverse(self) -> "Scalar":
        if not self.a and not self.b:
            raise DivisionByZero("division by zero Scalar")
        if not self.b:
            return Scalar(1 / self.a, 0, self.spec)
        n = self.norm()
        c = self.conjugate()
        return Scalar(c.a / n, c.b / n, self.spec)

    def __truediv__(self, y):
        p = self._pair(y)
        if p is None:
            return NotImplemented
        x, y = p
        return x * y.inverse()

    def __rtruediv__(self, y):
        p = self._pair(y)
        if p is None:
            return NotImplemented
        x, y = p
        return y * x.inverse()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar(1, 0, self.spec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparisons
    def __eq__(self, y):
        if isinstance(y, Scalar):
            if y.spec != self.spec and (self.b or y.b):
                return False
            return self.a == y.a and self.b == y.b
        if isinstance(y, Rational):
            return not self.b and self.a == y
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.spec))

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def sign(self) -> int:
        """Exact sign under the designated real embedding: -1, 0 or 1."""
        if not self.b:
            return (self.a > 0) - (self.a < 0)
        s = self.spec
        if not s.real_embedding:
            raise NoRealEmbedding(f"{s} has no real embedding")
        # a + bT = u + w*sqrt(D) with T = (p + sqrt D)/2
        u = self.a + self.b * s.p / 2
        w = self.b / 2
        su = (u > 0) - (u < 0)
        sw = (w > 0) - (w < 0)
        if su == 0 or su == sw:
            return sw if su == 0 else su
        if sw == 0:
            return su
        # opposite signs: the larger magnitude wins (equality impossible, D non-square)
        return su if u * u > w * w * s.discriminant else sw

    def _cmp(self, y) -> int:
        p = self._pair(y)
        if p is None:
            raise TypeError(f"cannot compare Scalar with {type(y).__name__}")
        x, y = p
        return (x - y).sign()

    def __lt__(self, y):
        return self._cmp(y) < 0

    def __le__(self, y):
        return self._cmp(y) <= 0

    def __gt__(self, y):
        return self._cmp(y) > 0

    def __ge__(self, y):
        return self._cmp(y) >= 0

    def __float__(self) -> float:
        s = self.spec
        if not self.b:
            return float(self.a)
        if not s.real_embedding:
            raise NoRealEmbedding(f"{s} has no real embedding")
        root = (float(s.p) + math.sqrt(float(s.discriminant))) / 2
        return float(self.a) + float(self.b) * root

    def is_rational(self) -> bool:
        return not self.b

    def to_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is not rational")
        return self.a

    def __str__(self) -> str:
        return format_scalar(self)

    def __repr__(self) -> str:
        if self.spec.is_rational:
            return f"Scalar({format_scalar(self)})"
        return f"Scalar({format_scalar(self)} in {self.spec.text()})"


def scalar_arith(x: Scalar, y: Scalar, op: str) -> Scalar:
    if x.spec != y.spec:
        raise MixedFields(f"{x.spec} vs {y.spec}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown operation {op!r}")


def scalar_sign(x: Scalar) -> str:
    if not x.spec.real_embedding:
        raise NoRealEmbedding(f"{x.spec} has no real embedding")
    return {-1: "negative", 0: "zero", 1: "positive"}[x.sign()]


# textual syntax ---------------------------------------------------------

_TERM = re.compile(r"([+-])?(\d+(?:/\d+)?)?(\*)?(T)?")


def format_scalar(x: Scalar) -> str:
    if not x.b:
        return str(x.a)
    tpart = "T" if abs(x.b) == 1 else f"{abs(x.b)}*T"
    if not x.a:
        return ("-" if x.b < 0 else "") + tpart
    return f"{x.a}{'-' if x.b < 0 else '+'}{tpart}"


def parse_scalar(text: str, spec: FieldSpec = QQ) -> Scalar:
    """Parse ``a``, ``a/b``, ``a+b*T``, ``-T``, ``3*T+1/2`` and similar sums."""
    s = "".join(text.split())
    if not s:
        raise ValueError("empty scalar")
    pos = 0
    a = Fraction(0)
    b = Fraction(0)
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, star, t = m.groups()
        if m.end() == pos or (num is None and t is None) or (star and not (num and t)):
            raise ValueError(f"bad scalar {text!r} at offset {pos}")
        if pos > 0 and sign is None:
            raise ValueError(f"bad scalar {text!r}: missing operator at offset {pos}")
        coeff = Fraction(num) if num is not None else Fraction(1)
        if sign == "-":
            coeff = -coeff
        if t:
            b += coeff
        else:
            a += coeff
        pos = m.end()
    if b and spec.is_rational:
        raise ValueError(f"{text!r} uses T but the field is Q")
    return Scalar(a, b, spec)


def parse_field(text: str) -> FieldSpec:
    """``Q`` or ``quad p q``."""
    parts = text.split()
    if parts == ["Q"]:
        return QQ
    if len(parts) == 3 and parts[0] == "quad":
        try:
            return FieldSpec.quadratic(Fraction(parts[1]), Fraction(parts[2]))
        except ValueError as exc:
            raise ConfigurationError(f"bad field coefficients in {text!r}") from exc
    raise ConfigurationError(f"unsupported field {text!r}; use 'Q' or 'quad p q'")
