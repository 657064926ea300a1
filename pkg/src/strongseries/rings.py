"""Exact commutative coefficient rings: integers, integers mod m, rationals.

Elements are plain Python values in canonical form (unbounded ``int`` for the
integers and for residues in ``[0, m)``, ``fractions.Fraction`` in lowest terms
for the rationals), so equality of elements is plain ``==`` and arithmetic
never overflows.  Ring objects carry the operations, much like a domain object
in a computer-algebra system.

Only commutative rings with identity are supported: the series composition and
inversion routines rearrange products of coefficients freely, which is unsound
over a noncommutative ring.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

from .errors import NotAUnitError, ParseError, UsageError

Element = Union[int, Fraction]

_INT_RE = re.compile(r"-?[0-9]+$")
_FRAC_RE = re.compile(r"(-?[0-9]+)(?:/([0-9]+))?$")


class Ring:
    """Interface shared by the concrete coefficient rings.

    ``zero`` and ``one`` are attributes; ``add``/``sub``/``mul``/``neg`` are
    total; ``inverse_unit`` is partial and raises :class:`NotAUnitError` on
    non-units.  ``spec`` is the stable textual name used by the CLI and in
    JSON output (``z``, ``zmod:<m>``, ``q``).
    """

    spec: str
    zero: Element
    one: Element

    def coerce(self, value) -> Element:
        raise NotImplementedError

    def parse(self, text: str) -> Element:
        raise NotImplementedError

    def format(self, value: Element) -> str:
        return str(value)

    def add(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def sub(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def mul(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def neg(self, a: Element) -> Element:
        raise NotImplementedError

    def is_unit(self, a: Element) -> bool:
        try:
            self.inverse_unit(a)
        except NotAUnitError:
            return False
        return True

    def inverse_unit(self, a: Element) -> Element:
        raise NotImplementedError

    def __eq__(self, other) -> bool:
        return isinstance(other, Ring) and self.spec == other.spec

    def __hash__(self) -> int:
        return hash(self.spec)

    def __repr__(self) -> str:
        return f"<ring {self.spec}>"


class IntegerRing(Ring):
    """The ring of unbounded integers; units are exactly 1 and -1."""

    spec = "z"
    zero = 0
    one = 1

    def coerce(self, value) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise UsageError(f"not an integer element: {value!r}")
        return value

    def parse(self, text: str) -> int:
        if not _INT_RE.match(text):
            raise ParseError(f"not an integer literal: {text!r}")
        return int(text)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a) -> bool:
        return a == 1 or a == -1

    def inverse_unit(self, a):
        if a == 1 or a == -1:
            return a
        raise NotAUnitError(f"{a} is not a unit of Z")


class ModularRing(Ring):
    """Integers modulo m (m >= 2), residues canonicalized into [0, m)."""

    def __init__(self, modulus: int):
        if not isinstance(modulus, int) or modulus < 2:
            raise UsageError(f"modulus must be an integer >= 2, got {modulus!r}")
        self.modulus = modulus
        self.spec = f"zmod:{modulus}"
        self.zero = 0
        self.one = 1 % modulus

    def coerce(self, value) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise UsageError(f"not an integer element: {value!r}")
        return value % self.modulus

    def parse(self, text: str) -> int:
        if not _INT_RE.match(text):
            raise ParseError(f"not an integer literal: {text!r}")
        return int(text) % self.modulus

    def add(self, a, b):
        return (a + b) % self.modulus

    def sub(self, a, b):
        return (a - b) % self.modulus

    def mul(self, a, b):
        return (a * b) % self.modulus

    def neg(self, a):
        return (-a) % self.modulus

    def is_unit(self, a) -> bool:
        return math.gcd(a, self.modulus) == 1

    def inverse_unit(self, a):
        try:
            return pow(a, -1, self.modulus)
        except ValueError:
            raise NotAUnitError(f"{a} is not a unit of Z/{self.modulus}") from None


class RationalRing(Ring):
    """The field of rationals; Fraction keeps lowest terms automatically."""

    spec = "q"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value) -> Fraction:
        if isinstance(value, bool):
            raise UsageError(f"not a rational element: {value!r}")
        if isinstance(value, (int, Fraction)):
            return Fraction(value)
        raise UsageError(f"not a rational element: {value!r}")

    def parse(self, text: str) -> Fraction:
        m = _FRAC_RE.match(text)
        if not m:
            raise ParseError(f"not a rational literal: {text!r}")
        num, den = m.group(1), m.group(2)
        if den is None:
            return Fraction(int(num))
        if int(den) == 0:
            raise ParseError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_unit(self, a) -> bool:
        return a != 0

    def inverse_unit(self, a):
        if a == 0:
            raise NotAUnitError("0 is not a unit of Q")
        return 1 / Fraction(a)


Z = IntegerRing()
Q = RationalRing()


def Zmod(modulus: int) -> ModularRing:
    return ModularRing(modulus)


def ring_from_spec(spec: str) -> Ring:
    """Resolve a CLI ring name: ``z``, ``zmod:<m>`` or ``q``."""
    spec = spec.strip().lower()
    if spec == "z":
        return Z
    if spec == "q":
        return Q
    if spec.startswith("zmod:"):
        body = spec[len("zmod:"):]
        if not body.isdigit():
            raise UsageError(f"bad modulus in ring spec {spec!r}")
        return ModularRing(int(body))
    raise UsageError(f"unknown ring spec {spec!r} (expected z, zmod:<m> or q)")
