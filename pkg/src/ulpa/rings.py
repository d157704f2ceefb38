"""Exact coefficient rings: integers, rationals and integers mod n.

Ring elements are plain Python values (int, Fraction, ModInt) so that
coefficient arithmetic uses the ordinary operators; the Ring descriptor
supplies identities, literal parsing and the structural flags consulted
by the algebra (zero divisors, field).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable


@dataclass(frozen=True)
class ModInt:
    """An integer mod n with exact reduced representative."""

    value: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other) -> "ModInt":
        if isinstance(other, ModInt):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other
        if isinstance(other, int):
            return ModInt(other, self.modulus)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return ModInt(self.value + o.value, self.modulus) if o is not NotImplemented else o

    __radd__ = __add__

    def __neg__(self):
        return ModInt(-self.value, self.modulus)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        o = self._coerce(other)
        return ModInt(self.value * o.value, self.modulus) if o is not NotImplemented else o

    __rmul__ = __mul__

    def __repr__(self):
        return f"{self.value} (mod {self.modulus})"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Ring:
    """Descriptor for an exact commutative unital coefficient ring."""

    name: str
    zero: Any
    one: Any
    has_zero_divisors: bool
    is_field: bool
    from_int: Callable[[int], Any]
    parse: Callable[[str], Any]
    render: Callable[[Any], str]

    def __repr__(self):
        return f"Ring({self.name})"


def _parse_int(text: str) -> int:
    return int(text)


def _parse_fraction(text: str) -> Fraction:
    return Fraction(text)


ZZ = Ring(
    name="Z",
    zero=0,
    one=1,
    has_zero_divisors=False,
    is_field=False,
    from_int=lambda k: k,
    parse=_parse_int,
    render=str,
)

QQ = Ring(
    name="Q",
    zero=Fraction(0),
    one=Fraction(1),
    has_zero_divisors=False,
    is_field=True,
    from_int=Fraction,
    parse=_parse_fraction,
    render=str,
)


def Zmod(n: int) -> Ring:
    """Integers mod n; a field exactly when n is prime."""
    if n < 2:
        raise ValueError("modulus must be at least 2")
    prime = _is_prime(n)
    return Ring(
        name=f"Z/{n}",
        zero=ModInt(0, n),
        one=ModInt(1, n),
        has_zero_divisors=not prime,
        is_field=prime,
        from_int=lambda k: ModInt(k, n),
        parse=lambda text: ModInt(int(text), n),
        render=lambda x: str(x.value),
    )


def ring_from_name(name: str) -> Ring:
    """Resolve a CLI ring flag: z, q or zmod:<n>."""
    name = name.strip().lower()
    if name == "z":
        return ZZ
    if name == "q":
        return QQ
    if name.startswith("zmod:"):
        return Zmod(int(name.split(":", 1)[1]))
    raise ValueError(f"unknown ring {name!r} (expected z, q or zmod:<n>)")
