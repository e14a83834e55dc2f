"""Exact ground fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

import os
from fractions import Fraction


class ModP:
    """Residue class modulo a prime, stored in [0, p)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.p = p
        self.value = value % p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other.value
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(self.value * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return ModP(self.value * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP(-self.value, self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.value == o

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} mod {self.p}"


class Field:
    """A ground field. Calling it coerces ints/strings/Fractions into elements."""

    def __init__(self, characteristic: int = 0):
        if characteristic and not _is_prime(characteristic):
            raise ValueError(f"{characteristic} is not prime")
        self.characteristic = characteristic

    def __call__(self, x):
        if isinstance(x, str):
            x = Fraction(x)
        if self.characteristic == 0:
            if isinstance(x, ModP):
                raise TypeError("cannot lift a residue to Q")
            return Fraction(x)
        if isinstance(x, ModP):
            if x.p != self.characteristic:
                raise ValueError("field mismatch")
            return x
        x = Fraction(x)
        return ModP(x.numerator * pow(x.denominator, -1, self.characteristic),
                    self.characteristic)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    @property
    def name(self) -> str:
        return "Q" if self.characteristic == 0 else f"Fp:{self.characteristic}"

    def format(self, x) -> str:
        if isinstance(x, ModP):
            return str(x.value)
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def parse(self, s):
        if isinstance(s, int):
            return self(s)
        return self(Fraction(str(s)))

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


QQ = Field(0)


def GF(p: int) -> Field:
    return Field(p)


def field_from_name(name: str) -> Field:
    if name == "Q":
        return QQ
    if name.startswith("Fp:"):
        return GF(int(name[3:]))
    raise ValueError(f"unknown field {name!r}")


def default_field() -> Field:
    """Field named by the AINFTY_FIELD environment variable (default Q)."""
    return field_from_name(os.environ.get("AINFTY_FIELD", "Q"))
