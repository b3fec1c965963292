"""Exact coefficient fields.

Two fields are supported: the rationals (scalars are ``fractions.Fraction``,
kept in lowest terms with positive denominator by the stdlib) and prime
fields F_p (scalars are ints in ``[0, p)``).  Scalars are raw Python values,
not wrapper objects; the field object supplies the operations that are not
plain ``+``/``*`` (reduction, inversion, parsing, printing).  Sums and
products of raw scalars stay exact under native arithmetic, so hot loops may
accumulate with operators and call :meth:`Field.reduce` once per result.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatchError, NonUnitError, SpecFormatError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24 (covers 2**64)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Field:
    """Common interface of the two coefficient fields."""

    kind = None  # "rationals" or "prime_field"

    @property
    def characteristic(self) -> int:
        raise NotImplementedError

    def reduce(self, x):
        """Canonicalize a raw arithmetic result into a field scalar."""
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def neg(self, x):
        return self.reduce(-x)

    def inv(self, x):
        raise NotImplementedError

    def div(self, x, y):
        return self.reduce(x * self.inv(y))

    def parse(self, text):
        """Parse an int or an "num/den" string into a scalar."""
        raise NotImplementedError

    def format(self, x) -> str:
        """Canonical string form; inverse of :meth:`parse`."""
        raise NotImplementedError


class RationalField(Field):
    """Exact rationals, canonicalized as plain int when integral.

    Integer-valued scalars are kept as Python ints (native-speed +/*, still
    exact) and promote to Fraction only when a true fraction appears; ints
    and Fractions mix exactly and compare equal, so the two spellings are
    interchangeable everywhere.
    """

    kind = "rationals"

    @property
    def characteristic(self) -> int:
        return 0

    def reduce(self, x):
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        raise TypeError(f"not an exact rational: {x!r}")

    def from_int(self, n: int):
        return n

    def inv(self, x):
        x = Fraction(x)
        if x == 0:
            raise NonUnitError("division by zero in the rationals")
        return self.reduce(Fraction(x.denominator, x.numerator))

    def parse(self, text):
        if isinstance(text, bool):
            raise SpecFormatError(f"not a rational value: {text!r}")
        if isinstance(text, int):
            return text
        if isinstance(text, str):
            try:
                return self.reduce(Fraction(text))
            except (ValueError, ZeroDivisionError) as exc:
                raise SpecFormatError(f"not a rational value: {text!r}") from exc
        raise SpecFormatError(f"not a rational value: {text!r}")

    def format(self, x) -> str:
        return str(self.reduce(x))

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("rationals")

    def __repr__(self):
        return "RationalField()"


class PrimeField(Field):
    kind = "prime_field"

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise SpecFormatError(f"modulus {p!r} is not prime")
        self.p = p

    @property
    def characteristic(self) -> int:
        return self.p

    def reduce(self, x):
        return x % self.p

    def from_int(self, n: int):
        return n % self.p

    def inv(self, x):
        x = x % self.p
        if x == 0:
            raise NonUnitError(f"0 has no inverse mod {self.p}")
        return pow(x, self.p - 2, self.p)

    def parse(self, text):
        if isinstance(text, bool):
            raise SpecFormatError(f"not a field value: {text!r}")
        if isinstance(text, int):
            return text % self.p
        if isinstance(text, str):
            try:
                q = Fraction(text)
            except (ValueError, ZeroDivisionError) as exc:
                raise SpecFormatError(f"not a field value: {text!r}") from exc
            den = q.denominator % self.p
            if den == 0:
                raise SpecFormatError(
                    f"{text!r} has denominator divisible by {self.p}"
                )
            return q.numerator * self.inv(den) % self.p
        raise SpecFormatError(f"not a field value: {text!r}")

    def format(self, x) -> str:
        return str(x % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime_field", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


QQ = RationalField()


def require_same_field(a: Field, b: Field) -> Field:
    if a != b:
        raise FieldMismatchError(f"mixed coefficient fields: {a!r} vs {b!r}")
    return a


def field_from_json(doc) -> Field:
    """Decode the "field" member of a spec document."""
    if doc == "rational":
        return QQ
    if isinstance(doc, dict) and set(doc) == {"prime"}:
        return PrimeField(doc["prime"])
    raise SpecFormatError(f'bad "field" entry: {doc!r}')


def field_to_json(field: Field):
    if field.kind == "rationals":
        return "rational"
    return {"prime": field.p}
