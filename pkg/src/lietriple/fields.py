"""Exact scalar fields: the rationals and prime fields of characteristic >= 5.

Rationals are plain :class:`fractions.Fraction` values.  Prime-field values
are :class:`GFElement` instances that carry their modulus, so mixing two
different fields fails loudly instead of silently producing garbage.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Integral

import gmpy2

from .errors import BadScalarError, FieldMismatchError, InputError

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def _normalize_minus(text: str) -> str:
    return text.replace("−", "-")


def _split_rational(text: str) -> tuple[int, int]:
    if not isinstance(text, str):
        raise BadScalarError(f"scalar must be a string, got {type(text).__name__}")
    match = _RATIONAL_RE.match(_normalize_minus(text))
    if match is None:
        raise BadScalarError(f"cannot parse scalar {text!r}")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise BadScalarError(f"zero denominator in {text!r}")
    return num, den


class Field:
    """Common interface of :data:`QQ` and :func:`GF` fields."""

    characteristic: int
    zero: object
    one: object

    def __call__(self, value):
        raise NotImplementedError

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, value) -> str:
        raise NotImplementedError

    def contains(self, value) -> bool:
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError

    # Fast internal representation used by Gaussian elimination.
    def to_fast(self, value):
        raise NotImplementedError

    def from_fast(self, value):
        raise NotImplementedError


class RationalField(Field):
    characteristic = 0
    tag = "Q"

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __repr__(self):
        return "QQ"

    def __reduce__(self):
        return (_rational_field, ())

    def __call__(self, value):
        if isinstance(value, Fraction):
            return value
        if isinstance(value, Integral):
            return Fraction(int(value))
        if isinstance(value, GFElement):
            raise FieldMismatchError(f"cannot coerce {value!r} into QQ")
        if isinstance(value, str):
            return self.parse(value)
        if type(value).__name__ == "mpq":
            return Fraction(int(value.numerator), int(value.denominator))
        raise InputError(f"cannot coerce {value!r} into QQ")

    def parse(self, text: str) -> Fraction:
        num, den = _split_rational(text)
        return Fraction(num, den)

    def format(self, value) -> str:
        value = self(value)
        if value.denominator == 1:
            return str(value.numerator)
        return f"{value.numerator}/{value.denominator}"

    def contains(self, value) -> bool:
        return isinstance(value, (Fraction, Integral)) and not isinstance(value, bool)

    def to_json(self):
        return "Q"

    def to_fast(self, value):
        return gmpy2.mpq(value.numerator, value.denominator)

    def from_fast(self, value):
        return Fraction(int(value.numerator), int(value.denominator))


def _rational_field():
    return QQ


QQ = RationalField()


def _is_prime(p: int) -> bool:
    return p >= 2 and bool(gmpy2.is_prime(p))


class PrimeField(Field):
    def __init__(self, p: int):
        self.characteristic = p
        self.tag = f"F{p}"
        self.zero = GFElement(0, p)
        self.one = GFElement(1, p)

    def __repr__(self):
        return f"GF({self.characteristic})"

    def __reduce__(self):
        return (GF, (self.characteristic,))

    def __call__(self, value):
        p = self.characteristic
        if isinstance(value, GFElement):
            if value.p != p:
                raise FieldMismatchError(f"{value!r} is not in GF({p})")
            return value
        if isinstance(value, Integral):
            return GFElement(int(value), p)
        if isinstance(value, Fraction):
            return GFElement(value.numerator, p) / GFElement(value.denominator, p)
        if isinstance(value, str):
            return self.parse(value)
        raise InputError(f"cannot coerce {value!r} into GF({p})")

    def parse(self, text: str) -> GFElement:
        num, den = _split_rational(text)
        if den % self.characteristic == 0:
            raise BadScalarError(f"denominator of {text!r} vanishes mod {self.characteristic}")
        return GFElement(num, self.characteristic) / GFElement(den, self.characteristic)

    def format(self, value) -> str:
        return str(self(value).value)

    def contains(self, value) -> bool:
        return isinstance(value, GFElement) and value.p == self.characteristic

    def to_json(self):
        return {"Fp": self.characteristic}

    def to_fast(self, value):
        return value.value

    def from_fast(self, value):
        return GFElement(value, self.characteristic)


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    """The prime field with ``p`` elements; ``p`` must be a prime >= 5."""
    if not isinstance(p, Integral) or not _is_prime(int(p)):
        raise InputError(f"GF(p) needs a prime modulus, got {p!r}")
    if p < 5:
        raise InputError(f"characteristic must differ from 2 and 3, got {p}")
    return PrimeField(int(p))


class GFElement:
    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _other(self, other):
        if isinstance(other, GFElement):
            if other.p != self.p:
                raise FieldMismatchError(f"GF({self.p}) and GF({other.p}) mixed")
            return other.value
        if isinstance(other, Integral) and not isinstance(other, bool):
            return int(other)
        if isinstance(other, Fraction):
            raise FieldMismatchError(f"rational {other} mixed with GF({self.p})")
        return None

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GFElement(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GFElement(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GFElement(o - self.value, self.p)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return GFElement(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return GFElement(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return GFElement(o * pow(self.value, -1, self.p), self.p)

    def __pow__(self, k: int):
        return GFElement(pow(self.value, k, self.p), self.p)

    def __neg__(self):
        return GFElement(-self.value, self.p)

    def __pos__(self):
        return self

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        try:
            o = self._other(other)
        except FieldMismatchError:
            return False
        if o is None:
            return NotImplemented
        return (self.value - o) % self.p == 0

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"GF({self.p})({self.value})"

    def __str__(self):
        return str(self.value)


def field_of(value):
    """Field a single scalar naturally lives in (ints and Fractions -> QQ)."""
    if isinstance(value, GFElement):
        return GF(value.p)
    if isinstance(value, (Fraction, Integral)):
        return QQ
    raise InputError(f"{value!r} is not an exact scalar")


def field_from_json(spec) -> Field:
    if spec == "Q":
        return QQ
    if isinstance(spec, dict) and set(spec) == {"Fp"} and isinstance(spec["Fp"], int):
        return GF(spec["Fp"])
    raise InputError(f"unknown field specification {spec!r}")
