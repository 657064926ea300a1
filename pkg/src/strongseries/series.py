"""Univariate truncated power series with zero constant term.

A :class:`TruncatedSeries` represents the class of a series modulo
x^(precision+1), with exact coefficients stored sparsely for exponents
1..precision.  Because every series here has zero constant term, composition
is exact at that precision: the term in x^t of the outer series contributes
only exponents >= t, so truncated inputs fully determine the truncated output.
This replaces limit arguments with finite, testable arithmetic.

Binary operations take the minimum of the two operand precisions (composition
pipelines naturally shrink precision); no operation ever invents coefficients
beyond what its inputs determine.

Compositional inversion follows the classical induction on the target
coefficient: the linear coefficient of the inverse is the inverse unit of the
linear coefficient of the input, and each later coefficient b_n is read off
from the requirement that the composition agree with x mod x^(n+1).  Powers of
the partial inverse are memoized row by row, which keeps the induction exact
while avoiding recomputation; the coefficient of x^n in any power >= 2 of the
partial inverse never depends on b_n itself, so the triangular fill is sound.
"""

from __future__ import annotations

import re
import warnings
from typing import Iterable

from .errors import (
    ConstantTermError,
    MismatchError,
    NotInvertibleError,
    ParseError,
    UsageError,
)
from .rings import Element, Ring
from .strongmonoid import StrongMonoid, Verdict

INFINITE_ORDER = float("inf")


class TruncationWarning(UserWarning):
    """Emitted when parsed terms fall beyond the requested precision."""


class TruncatedSeries:
    """An element of x*R[[x]] modulo x^(precision+1).

    ``coeffs`` maps exponent to nonzero coefficient; exponents outside
    1..precision are never stored.
    """

    __slots__ = ("ring", "precision", "coeffs")

    def __init__(self, ring: Ring, precision: int, coeffs: dict | Iterable | None = None):
        if not isinstance(precision, int) or precision < 1:
            raise UsageError(f"precision must be an integer >= 1, got {precision!r}")
        clean: dict[int, Element] = {}
        items = coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())
        for exp, value in items:
            if not isinstance(exp, int) or isinstance(exp, bool) or exp < 1:
                raise UsageError(f"exponents must be integers >= 1, got {exp!r}")
            if exp > precision:
                continue
            value = ring.coerce(value)
            if value == ring.zero:
                continue
            if exp in clean:
                value = ring.add(clean[exp], value)
                if value == ring.zero:
                    del clean[exp]
                    continue
            clean[exp] = value
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "precision", precision)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @classmethod
    def zero(cls, ring: Ring, precision: int) -> "TruncatedSeries":
        return cls(ring, precision, {})

    @classmethod
    def identity(cls, ring: Ring, precision: int) -> "TruncatedSeries":
        """The series x, the identity of the composition monoid."""
        return cls(ring, precision, {1: ring.one})

    def coeff(self, exp: int) -> Element:
        return self.coeffs.get(exp, self.ring.zero)

    def order(self) -> int | float:
        """Least exponent with nonzero coefficient; infinity for the zero series."""
        return min(self.coeffs) if self.coeffs else INFINITE_ORDER

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs

    def truncate(self, precision: int) -> "TruncatedSeries":
        if precision > self.precision:
            raise UsageError(
                f"cannot extend precision {self.precision} to {precision}")
        return TruncatedSeries(self.ring, precision, self.coeffs)

    def _require_same_ring(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            raise UsageError(f"expected a series, got {other!r}")
        if self.ring != other.ring:
            raise MismatchError(
                f"ring mismatch: {self.ring.spec} vs {other.ring.spec}")

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._require_same_ring(other)
        n = min(self.precision, other.precision)
        add = self.ring.add
        out = {e: c for e, c in self.coeffs.items() if e <= n}
        for e, c in other.coeffs.items():
            if e > n:
                continue
            if e in out:
                s = add(out[e], c)
                if s == self.ring.zero:
                    del out[e]
                else:
                    out[e] = s
            else:
                out[e] = c
        return TruncatedSeries(self.ring, n, out)

    def __neg__(self) -> "TruncatedSeries":
        neg = self.ring.neg
        return TruncatedSeries(self.ring, self.precision,
                               {e: neg(c) for e, c in self.coeffs.items()})

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + (-other)

    def scale(self, scalar: Element) -> "TruncatedSeries":
        scalar = self.ring.coerce(scalar)
        mul = self.ring.mul
        return TruncatedSeries(self.ring, self.precision,
                               {e: mul(scalar, c) for e, c in self.coeffs.items()})

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._require_same_ring(other)
        n = min(self.precision, other.precision)
        out = _mul_maps(self.ring, self.coeffs, other.coeffs, n)
        return TruncatedSeries(self.ring, n, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, TruncatedSeries)
                and self.ring == other.ring
                and self.precision == other.precision
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ring, self.precision, tuple(sorted(self.coeffs.items()))))

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.ring.spec}, N={self.precision}, {format_series(self)!r})"

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """Substitute ``inner`` for the variable: self(inner(x)).

        Exact mod x^(n+1) for n = min precision, by a running power of the
        inner series; powers whose order already exceeds n are skipped.
        """
        self._require_same_ring(inner)
        n = min(self.precision, inner.precision)
        g = {e: c for e, c in inner.coeffs.items() if e <= n}
        if inner.order() < 1:
            raise UsageError("inner series must have order >= 1")
        out: dict[int, Element] = {}
        ring = self.ring
        add = ring.add
        mul = ring.mul
        zero = ring.zero
        order_g = min(g) if g else None
        power: dict[int, Element] = {}
        cur = 0
        for t in sorted(self.coeffs):
            if t > n or order_g is None or t * order_g > n:
                break
            if cur == 0:
                power = dict(g)
                cur = 1
            while cur < t:
                power = _mul_maps(ring, power, g, n)
                cur += 1
            if not power:
                break
            a_t = self.coeffs[t]
            for e, c in power.items():
                prev = out.get(e, zero)
                s = add(prev, mul(a_t, c))
                if s == zero:
                    out.pop(e, None)
                else:
                    out[e] = s
        return TruncatedSeries(ring, n, out)

    def is_supported_on(self, monoid: StrongMonoid) -> Verdict:
        """Whether every exponent with nonzero coefficient lies in the monoid;
        witness is the least offending exponent."""
        for e in self.support():
            if e not in monoid:
                return Verdict(False, (e,))
        return Verdict(True)

    def is_invertible(self) -> bool:
        """True iff the linear coefficient is a unit (constant term is zero
        structurally), i.e. the series lies in the composition group."""
        return self.ring.is_unit(self.coeff(1))

    def invert(self) -> "TruncatedSeries":
        """Compositional inverse at the same precision.

        Built by induction on the coefficient index: each b_n is forced by
        requiring the composition with the inverse to agree with x mod
        x^(n+1).  Coefficients of powers of the partial inverse are memoized
        in a triangular table; the entry for x^n in a power >= 2 depends only
        on b_1..b_(n-1), so every value is final when written.
        """
        ring = self.ring
        n_max = self.precision
        a1 = self.coeff(1)
        if not ring.is_unit(a1):
            raise NotInvertibleError(
                f"linear coefficient {ring.format(a1)} is not a unit of {ring.spec}")
        inv1 = ring.inverse_unit(a1)
        zero = ring.zero
        add = ring.add
        mul = ring.mul
        neg = ring.neg
        b = [zero] * (n_max + 1)
        b[1] = inv1
        tail = sorted(t for t in self.coeffs if t >= 2)
        # rows[t][e] = coefficient of x^e in the t-th power of the inverse
        rows: list[list[Element] | None] = [None, b]
        for n in range(2, n_max + 1):
            for t in range(2, n + 1):
                if t == len(rows):
                    rows.append([zero] * (n_max + 1))
                prev = rows[t - 1]
                acc = zero
                for j in range(1, n - t + 2):
                    bj = b[j]
                    if bj != zero:
                        c = prev[n - j]
                        if c != zero:
                            acc = add(acc, mul(bj, c))
                rows[t][n] = acc
            c_n = zero
            for t in tail:
                if t > n:
                    break
                v = rows[t][n]
                if v != zero:
                    c_n = add(c_n, mul(self.coeffs[t], v))
            if c_n != zero:
                b[n] = neg(mul(inv1, c_n))
        return TruncatedSeries(ring, n_max,
                               {e: b[e] for e in range(1, n_max + 1) if b[e] != zero})

    def to_json_obj(self) -> dict:
        """JSON form: exponents strictly increasing, all numbers as decimal strings."""
        return {
            "ring": self.ring.spec,
            "precision": str(self.precision),
            "terms": [[str(e), self.ring.format(self.coeffs[e])]
                      for e in sorted(self.coeffs)],
        }


def _mul_maps(ring: Ring, fa: dict, fb: dict, cap: int) -> dict:
    """Sparse product of coefficient maps, dropping exponents beyond cap."""
    out: dict[int, Element] = {}
    if not fa or not fb:
        return out
    add = ring.add
    mul = ring.mul
    zero = ring.zero
    exps_b = sorted(fb)
    for e1 in sorted(fa):
        if e1 + exps_b[0] > cap:
            break
        c1 = fa[e1]
        for e2 in exps_b:
            e = e1 + e2
            if e > cap:
                break
            prod = mul(c1, fb[e2])
            prev = out.get(e)
            if prev is None:
                if prod != zero:
                    out[e] = prod
            else:
                s = add(prev, prod)
                if s == zero:
                    del out[e]
                else:
                    out[e] = s
    return out


def from_json_obj(obj: dict, ring: Ring) -> TruncatedSeries:
    if obj.get("ring") != ring.spec:
        raise MismatchError(f"ring mismatch: {obj.get('ring')!r} vs {ring.spec}")
    precision = int(obj["precision"])
    terms = [(int(e), ring.parse(c)) for e, c in obj["terms"]]
    return TruncatedSeries(ring, precision, terms)


_WS = re.compile(r"\s*")
_NUMBER = re.compile(r"-?[0-9]+(?:/[0-9]+)?")
_EXPONENT = re.compile(r"[0-9]+")


def parse_series(text: str, ring: Ring, precision: int) -> TruncatedSeries:
    """Parse ``term (+/- term)*`` with term = ``[coeff *] x [^ exp]``.

    Coefficients use the ring's literal syntax (integers, or a/b over the
    rationals).  Constant terms are rejected: the domain is series with zero
    constant term.  A lone ``0`` denotes the zero series, so formatting
    round-trips.  Terms with exponent beyond the precision are discarded with
    a :class:`TruncationWarning`.
    """
    if text.strip() == "0":
        return TruncatedSeries.zero(ring, precision)
    pos = 0
    n = len(text)
    terms: list[tuple[int, Element]] = []
    dropped: list[int] = []
    first = True

    def skip_ws(p: int) -> int:
        return _WS.match(text, p).end()

    pos = skip_ws(pos)
    if pos == n:
        raise ParseError("empty series text", text, 0)
    while pos < n:
        sign = 1
        if text[pos] in "+-":
            if text[pos] == "-":
                sign = -1
            pos = skip_ws(pos + 1)
        elif not first:
            raise ParseError("expected '+' or '-' between terms", text, pos)
        first = False
        m = _NUMBER.match(text, pos)
        coeff = None
        coeff_pos = pos
        if m:
            coeff = ring.parse(m.group(0))
            pos = skip_ws(m.end())
            if pos < n and text[pos] == "*":
                pos = skip_ws(pos + 1)
        if pos < n and text[pos] == "x":
            pos += 1
            exp = 1
            if pos < n and text[pos] == "^":
                em = _EXPONENT.match(text, pos + 1)
                if not em:
                    raise ParseError("expected an exponent after '^'", text, pos + 1)
                exp = int(em.group(0))
                pos = em.end()
            if exp == 0:
                raise ConstantTermError(
                    "constant term (x^0) not allowed", text, coeff_pos)
            value = coeff if coeff is not None else ring.one
            if sign < 0:
                value = ring.neg(value)
            if exp > precision:
                dropped.append(exp)
            else:
                terms.append((exp, value))
        elif coeff is not None:
            raise ConstantTermError("constant term not allowed", text, coeff_pos)
        else:
            raise ParseError("expected a term", text, pos)
        pos = skip_ws(pos)
    if dropped:
        warnings.warn(
            f"discarded exponents beyond precision {precision}: {sorted(dropped)}",
            TruncationWarning,
            stacklevel=2,
        )
    return TruncatedSeries(ring, precision, terms)


def format_series(series: TruncatedSeries) -> str:
    """Render in the grammar accepted by :func:`parse_series`; parses back equal."""
    if not series.coeffs:
        return "0"
    ring = series.ring
    chunks: list[str] = []
    for e in sorted(series.coeffs):
        c_str = ring.format(series.coeffs[e])
        base = "x" if e == 1 else f"x^{e}"
        if c_str == "1":
            term = base
        elif c_str == "-1":
            term = "-" + base
        else:
            term = f"{c_str}*{base}"
        if not chunks:
            chunks.append(term)
        elif term.startswith("-"):
            chunks.append("- " + term[1:])
        else:
            chunks.append("+ " + term)
    return " ".join(chunks)
