"""Exact scalars: the rationals and prime fields.

A field here is a small descriptor object; the elements themselves are plain
``fractions.Fraction`` values or ``ModInt`` residues, both supporting ordinary
arithmetic operators, so the linear algebra code is field-agnostic.  Scalars
serialize as strings like ``"3/2"`` or ``"5"``; floats are rejected
everywhere.
"""

from __future__ import annotations

from fractions import Fraction


class ModInt:
    """Residue in Z/p with field arithmetic (p prime, carried alongside)."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModInt):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other.value
        if isinstance(other, int):
            return other % self.p
        return None

    def __add__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ModInt(self.value + v, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ModInt(self.value - v, self.p)

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ModInt(v - self.value, self.p)

    def __mul__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        return ModInt(self.value * v, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if v == 0:
            raise ZeroDivisionError("division by zero residue")
        return ModInt(self.value * pow(v, -1, self.p), self.p)

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is None:
            return NotImplemented
        if self.value == 0:
            raise ZeroDivisionError("division by zero residue")
        return ModInt(v * pow(self.value, -1, self.p), self.p)

    def __neg__(self):
        return ModInt(-self.value, self.p)

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, ModInt):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"ModInt({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


def is_prime(n: int) -> bool:
    """Trial division; moduli here are desk-scale."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class RationalField:
    """The field Q; elements are reduced Fractions."""

    name = "rational"
    characteristic = 0

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def scalar(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to a rational")

    def parse(self, text: str) -> Fraction:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad rational scalar {text!r}: {exc}") from None

    def format(self, x) -> str:
        return str(x)

    def entry_size(self, x) -> int:
        # pivot-selection weight: prefer small numerators and denominators
        return abs(x.numerator).bit_length() + x.denominator.bit_length()

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rational")

    def __repr__(self):
        return "RationalField()"


class PrimeField:
    """The field F_p for a prime p; elements are ModInt residues."""

    def __init__(self, p: int):
        if not is_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p

    @property
    def name(self):
        return f"prime:{self.p}"

    @property
    def characteristic(self):
        return self.p

    @property
    def zero(self):
        return ModInt(0, self.p)

    @property
    def one(self):
        return ModInt(1, self.p)

    def scalar(self, x):
        if isinstance(x, ModInt):
            if x.p != self.p:
                raise ValueError(f"residue mod {x.p} used in F_{self.p}")
            return x
        if isinstance(x, int):
            return ModInt(x, self.p)
        if isinstance(x, Fraction):
            return ModInt(x.numerator, self.p) / ModInt(x.denominator, self.p)
        if isinstance(x, str):
            return self.parse(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to F_{self.p}")

    def parse(self, text: str) -> ModInt:
        text = text.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            return ModInt(int(num), self.p) / ModInt(int(den), self.p)
        return ModInt(int(text), self.p)

    def format(self, x) -> str:
        return str(x.value)

    def entry_size(self, x) -> int:
        return 1

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = RationalField()


def field_from_name(name: str):
    """Resolve a field descriptor string: "rational" or "prime:p"."""
    name = name.strip()
    if name == "rational":
        return QQ
    if name.startswith("prime:"):
        try:
            p = int(name.split(":", 1)[1])
        except ValueError:
            raise ValueError(f"bad field descriptor {name!r}") from None
        return PrimeField(p)
    raise ValueError(f"unknown field descriptor {name!r}")
