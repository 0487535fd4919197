"""Exact coefficient fields: the rationals and prime fields F_p.

Field elements are plain Python values (``Fraction`` for the rationals,
``int`` in ``range(p)`` for F_p).  All arithmetic goes through the field
object, so the same polynomial code serves both.
"""

from fractions import Fraction


class Field:
    characteristic = 0
    name = "?"

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def from_int(self, n):
        raise NotImplementedError

    def from_fraction(self, num, den=1):
        raise NotImplementedError

    def is_zero(self, a):
        return a == self.zero()

    def to_str(self, a):
        return str(a)

    def __repr__(self):
        return self.name


class Rationals(Field):
    characteristic = 0
    name = "QQ"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return 1 / a

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, num, den=1):
        return Fraction(num, den)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    def __init__(self, p):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"F{p}"

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, num, den=1):
        return self.mul(self.from_int(num), self.inv(self.from_int(den)))

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))


QQ = Rationals()


def field_from_name(name):
    """Map a field label like ``QQ`` or ``F2`` to a Field instance."""
    if name == "QQ":
        return QQ
    if name.startswith("F") and name[1:].isdigit():
        return PrimeField(int(name[1:]))
    raise ValueError(f"unsupported field {name!r}")
