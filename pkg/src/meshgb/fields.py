"""Exact coefficient fields: the rationals and prime fields GF(p)."""
from __future__ import annotations

import random
from fractions import Fraction
from functools import total_ordering


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@total_ordering
class ModP:
    """An element of GF(p). Mixed arithmetic with ``int`` is allowed."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"cannot mix GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return ModP(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.value == o

    def __lt__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self.value < o

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return f"{self.value} mod {self.p}"

    def __str__(self):
        return str(self.value)


class Field:
    """Base class for a coefficient field. Calling the field coerces a value into it."""

    name = "field"

    def __call__(self, value):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, c) -> str:
        return str(c)

    def random_element(self, rng: random.Random, nonzero: bool = False, bound: int = 9):
        while True:
            c = self(rng.randint(-bound, bound))
            if c or not nonzero:
                return c

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items()))))


class Rationals(Field):
    name = "Q"

    def __call__(self, value) -> Fraction:
        if isinstance(value, ModP):
            raise TypeError("cannot coerce a GF(p) element into Q")
        return Fraction(value)

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(str(text).strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {text!r}") from exc

    def format(self, c) -> str:
        c = Fraction(c)
        return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"

    def __repr__(self):
        return "Rationals()"


class PrimeField(Field):
    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def name(self):
        return f"Fp:{self.p}"

    def __call__(self, value) -> ModP:
        if isinstance(value, ModP):
            if value.p != self.p:
                raise ValueError(f"cannot coerce GF({value.p}) element into GF({self.p})")
            return value
        if isinstance(value, Fraction):
            return ModP(value.numerator, self.p) / value.denominator
        return ModP(int(value), self.p)

    def parse(self, text: str) -> ModP:
        text = str(text).strip()
        if "/" in text:
            return self(Fraction(text))
        return self(int(text))

    def random_element(self, rng: random.Random, nonzero: bool = False, bound: int | None = None):
        lo = 1 if nonzero else 0
        return self(rng.randint(lo, self.p - 1))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = Rationals()


def field_from_spec(spec: str) -> Field:
    """Parse ``Q`` or ``Fp:<p>``."""
    spec = spec.strip()
    if spec in ("Q", "QQ"):
        return QQ
    if spec.startswith(("Fp:", "GF:")):
        return PrimeField(int(spec.split(":", 1)[1]))
    raise ValueError(f"unknown field {spec!r}; expected Q or Fp:<prime>")
