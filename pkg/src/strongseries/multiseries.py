"""Multivariate truncated series and tuple composition.

Series in n variables are truncated at a *total degree* bound: a monomial is
kept iff the sum of its exponents (its norm) is at most the bound.  Total
degree is the right truncation here because substitution sends a monomial of
norm d to a series of order >= d, so tuple composition is exact modulo terms
of higher total degree, mirroring the univariate case.

Tuples of such series compose componentwise by substitution and form a monoid
with identity (x_1, ..., x_n).  Support sets of monomials are represented by
:class:`SupportSetND`; the ones pulled back from a strongly closed exponent
monoid through the norm are exactly the supports closed under tuple
composition, and :func:`is_norm_saturated` checks the necessary condition that
a support set contain every monomial of a norm it already meets.

Monomials are plain exponent tuples, ordered by total degree and then
lexicographically with the first variable dominant, so output is
deterministic.
"""

from __future__ import annotations

import re
from typing import Callable, Iterable, Sequence

from .errors import ConstantTermError, MismatchError, ParseError, UsageError
from .rings import Element, Ring
from .strongmonoid import StrongMonoid, Verdict

Monomial = tuple[int, ...]


def norm(monomial: Monomial) -> int:
    """Total degree: the sum of the exponents (additive in the monomial)."""
    return sum(monomial)


def _order_key(monomial: Monomial):
    # grade first, then first-variable-dominant within a grade
    return (sum(monomial), tuple(-e for e in monomial))


def monomials_upto(nvars: int, degree: int) -> list[Monomial]:
    """All nonzero monomials of norm <= degree, in display order."""
    out: list[Monomial] = []

    def build(prefix: list[int], remaining_vars: int, budget: int):
        if remaining_vars == 1:
            for e in range(budget, -1, -1):
                out.append(tuple(prefix + [e]))
            return
        for e in range(budget, -1, -1):
            build(prefix + [e], remaining_vars - 1, budget - e)

    for d in range(1, degree + 1):
        chunk_start = len(out)
        build([], nvars, d)
        out[chunk_start:] = [u for u in out[chunk_start:] if sum(u) == d]
    return out


class MultiSeries:
    """A series in ``nvars`` variables, zero constant term, modulo total
    degree > ``degree``; coefficients stored sparsely by exponent tuple."""

    __slots__ = ("ring", "nvars", "degree", "coeffs")

    def __init__(self, ring: Ring, nvars: int, degree: int,
                 coeffs: dict | Iterable | None = None):
        if not isinstance(nvars, int) or nvars < 1:
            raise UsageError(f"number of variables must be >= 1, got {nvars!r}")
        if not isinstance(degree, int) or degree < 1:
            raise UsageError(f"degree bound must be >= 1, got {degree!r}")
        clean: dict[Monomial, Element] = {}
        items = coeffs.items() if isinstance(coeffs, dict) else (coeffs or ())
        for mono, value in items:
            mono = tuple(mono)
            if len(mono) != nvars or any(
                    not isinstance(e, int) or isinstance(e, bool) or e < 0 for e in mono):
                raise UsageError(f"bad monomial for {nvars} variables: {mono!r}")
            if not any(mono):
                raise ConstantTermError("constant term not allowed in a series tuple")
            if sum(mono) > degree:
                continue
            value = ring.coerce(value)
            if value == ring.zero:
                continue
            if mono in clean:
                value = ring.add(clean[mono], value)
                if value == ring.zero:
                    del clean[mono]
                    continue
            clean[mono] = value
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "coeffs", clean)

    def __setattr__(self, name, value):
        raise AttributeError("MultiSeries is immutable")

    @classmethod
    def zero(cls, ring: Ring, nvars: int, degree: int) -> "MultiSeries":
        return cls(ring, nvars, degree, {})

    @classmethod
    def variable(cls, ring: Ring, nvars: int, degree: int, index: int) -> "MultiSeries":
        """The series x_index (1-based index)."""
        if not 1 <= index <= nvars:
            raise UsageError(f"variable index {index} out of range 1..{nvars}")
        mono = tuple(1 if i == index - 1 else 0 for i in range(nvars))
        return cls(ring, nvars, degree, {mono: ring.one})

    def support(self) -> list[Monomial]:
        return sorted(self.coeffs, key=_order_key)

    def order(self) -> int | float:
        return min((sum(u) for u in self.coeffs), default=float("inf"))

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, monomial: Monomial) -> Element:
        return self.coeffs.get(tuple(monomial), self.ring.zero)

    def _require_compatible(self, other: "MultiSeries"):
        if not isinstance(other, MultiSeries):
            raise UsageError(f"expected a multivariate series, got {other!r}")
        if self.ring != other.ring:
            raise MismatchError(f"ring mismatch: {self.ring.spec} vs {other.ring.spec}")
        if self.nvars != other.nvars:
            raise MismatchError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "MultiSeries") -> "MultiSeries":
        self._require_compatible(other)
        d = min(self.degree, other.degree)
        add = self.ring.add
        out = {u: c for u, c in self.coeffs.items() if sum(u) <= d}
        for u, c in other.coeffs.items():
            if sum(u) > d:
                continue
            if u in out:
                s = add(out[u], c)
                if s == self.ring.zero:
                    del out[u]
                else:
                    out[u] = s
            else:
                out[u] = c
        return MultiSeries(self.ring, self.nvars, d, out)

    def __neg__(self) -> "MultiSeries":
        neg = self.ring.neg
        return MultiSeries(self.ring, self.nvars, self.degree,
                           {u: neg(c) for u, c in self.coeffs.items()})

    def __sub__(self, other: "MultiSeries") -> "MultiSeries":
        return self + (-other)

    def scale(self, scalar: Element) -> "MultiSeries":
        scalar = self.ring.coerce(scalar)
        mul = self.ring.mul
        return MultiSeries(self.ring, self.nvars, self.degree,
                           {u: mul(scalar, c) for u, c in self.coeffs.items()})

    def __mul__(self, other: "MultiSeries") -> "MultiSeries":
        self._require_compatible(other)
        d = min(self.degree, other.degree)
        out = _mul_nd(self.ring, self.coeffs, other.coeffs, d)
        return MultiSeries(self.ring, self.nvars, d, out)

    def __eq__(self, other) -> bool:
        return (isinstance(other, MultiSeries)
                and self.ring == other.ring
                and self.nvars == other.nvars
                and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ring, self.nvars, self.degree,
                     tuple(sorted(self.coeffs.items()))))

    def __repr__(self) -> str:
        return (f"MultiSeries({self.ring.spec}, n={self.nvars}, "
                f"D={self.degree}, {format_multiseries(self)!r})")

    def to_json_obj(self) -> dict:
        """JSON form: monomials in display order, all numbers as decimal strings."""
        return {
            "ring": self.ring.spec,
            "nvars": str(self.nvars),
            "degree": str(self.degree),
            "terms": [[[str(e) for e in u], self.ring.format(self.coeffs[u])]
                      for u in self.support()],
        }

    def substitute(self, replacements: Sequence["MultiSeries"],
                   _pow_cache: dict | None = None) -> "MultiSeries":
        """Substitute replacements[j] for variable j+1 in this series.

        Powers of each replacement are memoized up to the largest exponent
        needed; a monomial of norm d maps to a series of order >= d, so
        monomials of norm beyond the result degree are skipped outright.
        """
        if len(replacements) != self.nvars:
            raise MismatchError(
                f"need {self.nvars} replacement series, got {len(replacements)}")
        ring = self.ring
        d = self.degree
        for g in replacements:
            if not isinstance(g, MultiSeries) or g.ring != ring:
                raise MismatchError("replacement series in a different ring")
            d = min(d, g.degree)
        nvars_out = replacements[0].nvars
        for g in replacements:
            if g.nvars != nvars_out:
                raise MismatchError("replacement series disagree on variable count")
        cache = _pow_cache if _pow_cache is not None else {}
        add = ring.add
        mul = ring.mul
        zero = ring.zero
        out: dict[Monomial, Element] = {}
        for mono in sorted(self.coeffs, key=_order_key):
            if sum(mono) > d:
                continue
            prod: dict[Monomial, Element] | None = None
            for j, e in enumerate(mono):
                if e == 0:
                    continue
                pw = _power(ring, replacements[j], e, d, cache, j)
                prod = dict(pw) if prod is None else _mul_nd(ring, prod, pw, d)
                if not prod:
                    break
            if not prod:
                continue
            c = self.coeffs[mono]
            for u, v in prod.items():
                prev = out.get(u, zero)
                s = add(prev, mul(c, v))
                if s == zero:
                    out.pop(u, None)
                else:
                    out[u] = s
        return MultiSeries(ring, nvars_out, d, out)


def _power(ring: Ring, base: MultiSeries, exponent: int, cap: int,
           cache: dict, tag) -> dict:
    """base**exponent as a coefficient map, truncated to norm <= cap."""
    key = (tag, exponent, cap)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if exponent == 1:
        result = {u: c for u, c in base.coeffs.items() if sum(u) <= cap}
    else:
        prev = _power(ring, base, exponent - 1, cap, cache, tag)
        result = _mul_nd(ring, prev, base.coeffs, cap)
    cache[key] = result
    return result


def _mul_nd(ring: Ring, fa: dict, fb: dict, cap: int) -> dict:
    """Sparse product of monomial maps, degree-bucketed so pairs beyond the
    total-degree cap are never visited."""
    out: dict[Monomial, Element] = {}
    if not fa or not fb:
        return out
    add = ring.add
    mul = ring.mul
    zero = ring.zero
    by_norm: dict[int, list[tuple[Monomial, Element]]] = {}
    for u, c in fb.items():
        by_norm.setdefault(sum(u), []).append((u, c))
    norms_b = sorted(by_norm)
    for u1, c1 in fa.items():
        budget = cap - sum(u1)
        if budget < norms_b[0]:
            continue
        for nb in norms_b:
            if nb > budget:
                break
            for u2, c2 in by_norm[nb]:
                u = tuple(a + b for a, b in zip(u1, u2))
                prod = mul(c1, c2)
                prev = out.get(u)
                if prev is None:
                    if prod != zero:
                        out[u] = prod
                else:
                    s = add(prev, prod)
                    if s == zero:
                        del out[u]
                    else:
                        out[u] = s
    return out


class SeriesTuple:
    """An n-tuple of n-variable series sharing ring and degree bound; the
    monoid element (f_1, ..., f_n) under componentwise substitution."""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[MultiSeries]):
        components = tuple(components)
        if not components:
            raise UsageError("a series tuple needs at least one component")
        first = components[0]
        if len(components) != first.nvars:
            raise MismatchError(
                f"{first.nvars}-variable tuples need exactly {first.nvars} components, "
                f"got {len(components)}")
        for c in components:
            if c.ring != first.ring or c.nvars != first.nvars or c.degree != first.degree:
                raise MismatchError("tuple components disagree on ring/nvars/degree")
        object.__setattr__(self, "components", components)

    def __setattr__(self, name, value):
        raise AttributeError("SeriesTuple is immutable")

    @property
    def ring(self) -> Ring:
        return self.components[0].ring

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    @property
    def degree(self) -> int:
        return self.components[0].degree

    @classmethod
    def identity(cls, ring: Ring, nvars: int, degree: int) -> "SeriesTuple":
        return cls([MultiSeries.variable(ring, nvars, degree, i + 1)
                    for i in range(nvars)])

    def compose(self, inner: "SeriesTuple") -> "SeriesTuple":
        """Componentwise substitution of the inner tuple; the power cache is
        shared across components."""
        if not isinstance(inner, SeriesTuple):
            raise UsageError(f"expected a series tuple, got {inner!r}")
        if inner.ring != self.ring:
            raise MismatchError(f"ring mismatch: {self.ring.spec} vs {inner.ring.spec}")
        if inner.nvars != self.nvars:
            raise MismatchError(
                f"variable count mismatch: {self.nvars} vs {inner.nvars}")
        cache: dict = {}
        return SeriesTuple([f.substitute(inner.components, _pow_cache=cache)
                            for f in self.components])

    def is_supported_on(self, support: "SupportSetND") -> Verdict:
        """Every component's monomials must lie in the support set; witness is
        (1-based component index, offending monomial)."""
        if support.nvars != self.nvars:
            raise MismatchError(
                f"support set has {support.nvars} variables, tuple has {self.nvars}")
        if self.degree > support.degree:
            raise MismatchError(
                f"tuple degree {self.degree} exceeds support bound {support.degree}")
        for i, component in enumerate(self.components):
            for u in component.support():
                if not support.contains(u):
                    return Verdict(False, (i + 1, u))
        return Verdict(True)

    def __eq__(self, other) -> bool:
        return isinstance(other, SeriesTuple) and self.components == other.components

    def __repr__(self) -> str:
        return f"SeriesTuple({format_tuple(self)!r})"

    def to_json_obj(self) -> dict:
        return {
            "ring": self.ring.spec,
            "nvars": str(self.nvars),
            "degree": str(self.degree),
            "components": [c.to_json_obj()["terms"] for c in self.components],
        }


class SupportSetND:
    """A set of nonzero monomials of norm <= degree.

    Either the pullback of a strongly closed exponent monoid through the norm
    (membership then extends to any norm), or an explicit finite set used for
    counterexample experiments (membership is defined only up to the bound).
    """

    __slots__ = ("nvars", "degree", "_monoid", "_explicit")

    def __init__(self, nvars: int, degree: int, *,
                 monoid: StrongMonoid | None = None,
                 explicit: frozenset | None = None):
        if (monoid is None) == (explicit is None):
            raise UsageError("need exactly one of a monoid or an explicit set")
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "_monoid", monoid)
        object.__setattr__(self, "_explicit", explicit)

    def __setattr__(self, name, value):
        raise AttributeError("SupportSetND is immutable")

    @classmethod
    def from_strong_monoid(cls, monoid: StrongMonoid, nvars: int,
                           degree: int) -> "SupportSetND":
        """Monomials whose norm lies in the monoid; norm-saturated by
        construction and containing every unit vector since 1 is a member."""
        if nvars < 1 or degree < 1:
            raise UsageError("need nvars >= 1 and degree >= 1")
        return cls(nvars, degree, monoid=monoid)

    @classmethod
    def from_explicit(cls, monomials: Iterable[Monomial], nvars: int,
                      degree: int) -> "SupportSetND":
        clean = set()
        for u in monomials:
            u = tuple(u)
            if len(u) != nvars or any(e < 0 for e in u) or not any(u):
                raise UsageError(f"bad monomial for {nvars} variables: {u!r}")
            if sum(u) > degree:
                raise UsageError(f"monomial {u} has norm above the bound {degree}")
            clean.add(u)
        return cls(nvars, degree, explicit=frozenset(clean))

    @property
    def monoid(self) -> StrongMonoid | None:
        return self._monoid

    def contains(self, monomial: Monomial) -> bool:
        u = tuple(monomial)
        if len(u) != self.nvars:
            raise MismatchError(f"monomial {u!r} has wrong arity for {self.nvars} variables")
        if self._monoid is not None:
            return sum(u) in self._monoid
        if sum(u) > self.degree:
            raise UsageError(
                f"membership of norm {sum(u)} undefined beyond bound {self.degree}")
        return u in self._explicit

    def __contains__(self, monomial: Monomial) -> bool:
        return self.contains(monomial)

    def members(self) -> list[Monomial]:
        """Explicit listing up to the bound, in display order."""
        if self._explicit is not None:
            return sorted(self._explicit, key=_order_key)
        return [u for u in monomials_upto(self.nvars, self.degree)
                if sum(u) in self._monoid]


def support_from_monoid(monoid: StrongMonoid, nvars: int, degree: int) -> SupportSetND:
    return SupportSetND.from_strong_monoid(monoid, nvars, degree)


def is_norm_saturated(support: SupportSetND) -> Verdict:
    """Whether the set contains every monomial of any norm it meets.

    Witness: the first pair (member, missing monomial of the same norm) in
    display order.  Necessary for closure under tuple composition.
    """
    members = support.members()
    member_set = set(members)
    by_norm: dict[int, list[Monomial]] = {}
    for u in monomials_upto(support.nvars, support.degree):
        by_norm.setdefault(sum(u), []).append(u)
    for u in members:
        for v in by_norm[sum(u)]:
            if v not in member_set:
                return Verdict(False, (u, v))
    return Verdict(True)


def is_supported_on_nd(series_tuple: SeriesTuple, support: SupportSetND) -> Verdict:
    return series_tuple.is_supported_on(support)


_VAR_RE = re.compile(r"x([0-9]+)")
_NUM_RE = re.compile(r"-?[0-9]+(?:/[0-9]+)?")
_WS_RE = re.compile(r"\s*")


def parse_multiseries(text: str, ring: Ring, nvars: int, degree: int) -> MultiSeries:
    """Parse one component: terms ``[coeff *] x<i>[^e] [* x<j>[^e] ...]``.

    A lone ``0`` denotes the zero series; any other constant term is
    rejected.  Variable indices are 1-based and must not exceed ``nvars``.
    """
    text_stripped = text.strip()
    if text_stripped == "0":
        return MultiSeries.zero(ring, nvars, degree)
    pos = 0
    n = len(text)
    terms: list[tuple[Monomial, Element]] = []
    first = True

    def skip_ws(p: int) -> int:
        return _WS_RE.match(text, p).end()

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
        term_pos = pos
        m = _NUM_RE.match(text, pos)
        coeff = None
        if m:
            coeff = ring.parse(m.group(0))
            pos = skip_ws(m.end())
            if pos < n and text[pos] == "*":
                pos = skip_ws(pos + 1)
        exps = [0] * nvars
        saw_var = False
        while pos < n:
            vm = _VAR_RE.match(text, pos)
            if not vm:
                break
            index = int(vm.group(1))
            if not 1 <= index <= nvars:
                raise ParseError(f"variable x{index} out of range 1..{nvars}",
                                 text, pos)
            pos = vm.end()
            e = 1
            if pos < n and text[pos] == "^":
                em = _EXP_RE.match(text, pos + 1)
                if not em:
                    raise ParseError("expected an exponent after '^'", text, pos + 1)
                e = int(em.group(0))
                pos = em.end()
            exps[index - 1] += e
            saw_var = True
            pos = skip_ws(pos)
            if pos < n and text[pos] == "*":
                pos = skip_ws(pos + 1)
        if not saw_var:
            if coeff is not None:
                raise ConstantTermError("constant term not allowed", text, term_pos)
            raise ParseError("expected a term", text, pos)
        if not any(exps):
            raise ConstantTermError("constant term (all exponents zero) not allowed",
                                    text, term_pos)
        value = coeff if coeff is not None else ring.one
        if sign < 0:
            value = ring.neg(value)
        terms.append((tuple(exps), value))
        pos = skip_ws(pos)
    return MultiSeries(ring, nvars, degree, terms)


_EXP_RE = re.compile(r"[0-9]+")


def parse_tuple(text: str, ring: Ring, nvars: int, degree: int) -> SeriesTuple:
    """Parse a tuple with components separated by ``|``."""
    parts = text.split("|")
    if len(parts) != nvars:
        raise ParseError(
            f"expected {nvars} components separated by '|', got {len(parts)}", text, 0)
    return SeriesTuple([parse_multiseries(part, ring, nvars, degree)
                        for part in parts])


def format_monomial(monomial: Monomial) -> str:
    factors = []
    for i, e in enumerate(monomial):
        if e == 1:
            factors.append(f"x{i + 1}")
        elif e > 1:
            factors.append(f"x{i + 1}^{e}")
    return "*".join(factors)


def format_multiseries(series: MultiSeries) -> str:
    if series.is_zero():
        return "0"
    ring = series.ring
    chunks: list[str] = []
    for u in series.support():
        c_str = ring.format(series.coeffs[u])
        base = format_monomial(u)
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


def format_tuple(series_tuple: SeriesTuple) -> str:
    return " | ".join(format_multiseries(c) for c in series_tuple.components)
