"""Exact coefficient fields, monomial orders, polynomials and free-module elements.

Monomials are plain exponent tuples.  Polynomials are immutable and keep their
terms sorted strictly descending in the ring's monomial order; arithmetic goes
through ``{exponent: coefficient}`` dictionaries.
"""
from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Callable, Dict, Iterable, Sequence, Tuple

Exp = Tuple[int, ...]

DEFAULT_PRIME = 32003


# --------------------------------------------------------------------------
# fields
# --------------------------------------------------------------------------

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """The field F_p, elements are ints in ``[0, p)``."""

    characteristic: int

    def __init__(self, p: int = DEFAULT_PRIME):
        if not (2 <= p < 2 ** 31) or not _is_prime(p):
            raise ValueError(f"field size must be a prime below 2^31, got {p}")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def __call__(self, value) -> int:
        if isinstance(value, Fraction):
            return self.div(value.numerator % self.p, value.denominator % self.p)
        return int(value) % self.p

    def norm(self, x: int) -> int:
        return int(x) % self.p

    def inv(self, x: int) -> int:
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return pow(x, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return (a * self.inv(b)) % self.p

    def to_str(self, x: int) -> str:
        # symmetric representative reads better and parses back to the same class
        return str(x - self.p if x > self.p // 2 else x)

    @property
    def spec(self) -> str:
        return f"fp:{self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("fp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class RationalField:
    """The rationals, elements are :class:`fractions.Fraction`."""

    characteristic = 0

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __call__(self, value) -> Fraction:
        return Fraction(value)

    def norm(self, x):
        return x

    def inv(self, x) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("division by zero in Q")
        return 1 / Fraction(x)

    def div(self, a, b) -> Fraction:
        if b == 0:
            raise ZeroDivisionError("division by zero in Q")
        return Fraction(a) / b

    def to_str(self, x) -> str:
        return str(x)

    spec = "q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")

    def __repr__(self):
        return "RationalField()"


QQ = RationalField()


def field_from_spec(spec: str | None):
    """Parse ``fp:<p>`` or ``q``; ``None`` gives the default F_32003."""
    if spec is None:
        return PrimeField(DEFAULT_PRIME)
    s = spec.strip().lower()
    if s in ("q", "qq", "rationals"):
        return QQ
    if s.startswith("fp:"):
        try:
            p = int(s[3:])
        except ValueError:
            raise ValueError(f"bad field spec {spec!r}") from None
        return PrimeField(p)
    raise ValueError(f"bad field spec {spec!r}; expected fp:<p> or q")


# --------------------------------------------------------------------------
# monomial orders
# --------------------------------------------------------------------------

def _lex_key(e: Exp):
    return e


def _grlex_key(e: Exp):
    return (sum(e), e)


def _grevlex_key(e: Exp):
    return (sum(e), tuple(-a for a in reversed(e)))


class MonomialOrder:
    """A global monomial order given by a sort key; larger key = larger monomial."""

    def __init__(self, name: str, key: Callable[[Exp], object], graded: bool):
        self.name = name
        self.key = key
        self.graded = graded

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"MonomialOrder({self.name!r})"


LEX = MonomialOrder("lex", _lex_key, graded=False)
GRLEX = MonomialOrder("grlex", _grlex_key, graded=True)
GREVLEX = MonomialOrder("grevlex", _grevlex_key, graded=True)

ORDERS = {"lex": LEX, "grlex": GRLEX, "grevlex": GREVLEX}


def tangent_lift_order(nvars: int) -> MonomialOrder:
    """Order on k[x_1..x_n, t] (t last) used to lift a local degree order.

    Compares total degree, then the t-exponent (larger wins), then grevlex on
    the x-part.  Restricted to forms of one degree it prefers terms of lowest
    x-degree, so leading terms of homogenized polynomials sit in initial forms.
    """
    def key(e: Exp):
        x = e[:nvars]
        return (sum(e), e[nvars], tuple(-a for a in reversed(x)))

    return MonomialOrder(f"tangent-lift-{nvars}", key, graded=True)


def local_key(e: Exp):
    """Sort key of the negative degree reverse lexicographic (local) order."""
    return (-sum(e), tuple(-a for a in reversed(e)))


# --------------------------------------------------------------------------
# dictionary-level polynomial helpers
# --------------------------------------------------------------------------

def dict_add(a: dict, b: dict, field, scale=1) -> dict:
    out = dict(a)
    norm = field.norm
    for m, c in b.items():
        v = norm(out.get(m, 0) + scale * c)
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def dict_mul(a: dict, b: dict, field) -> dict:
    out: dict = {}
    norm = field.norm
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return {m: v for m, c in out.items() if (v := norm(c))}


def mono_mul(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_div(b: Exp, a: Exp) -> Exp:
    return tuple(y - x for x, y in zip(a, b))


def mono_lcm(a: Exp, b: Exp) -> Exp:
    return tuple(max(x, y) for x, y in zip(a, b))


def monomials_of_degree(n: int, d: int):
    """All exponent tuples of length n and total degree d (lex-descending)."""
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(n - 1, d - first):
            yield (first,) + rest


# --------------------------------------------------------------------------
# rings and polynomials
# --------------------------------------------------------------------------

class PolynomialRing:
    """k[x_1, ..., x_n] with a fixed global monomial order."""

    def __init__(self, variables: Sequence[str], field=None, order: MonomialOrder | str = GREVLEX):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.field = field if field is not None else PrimeField(DEFAULT_PRIME)
        self.order = ORDERS[order] if isinstance(order, str) else order
        self.nvars = len(self.variables)

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing) and self.variables == other.variables
                and self.field == other.field and self.order == other.order)

    def __hash__(self):
        return hash((self.variables, self.field, self.order))

    def __repr__(self):
        return f"PolynomialRing({list(self.variables)}, {self.field!r}, {self.order.name})"

    def with_order(self, order) -> "PolynomialRing":
        return PolynomialRing(self.variables, self.field, order)

    def extend(self, name: str, order=None) -> "PolynomialRing":
        """Ring with one extra variable appended."""
        return PolynomialRing(self.variables + (name,), self.field, order or self.order)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    @property
    def one(self) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: self.field.one})

    def const(self, c) -> "Polynomial":
        return self.monomial((0,) * self.nvars, c)

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def var(self, which) -> "Polynomial":
        i = self.variables.index(which) if isinstance(which, str) else which
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field.one})

    def monomial(self, exp: Exp, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exp): c} if c else {})

    def from_dict(self, terms: Dict[Exp, object]) -> "Polynomial":
        f = self.field
        return Polynomial(self, {tuple(m): v for m, c in terms.items() if (v := f(c))})

    def parse(self, text: str) -> "Polynomial":
        from .parser import parse_polynomial
        return parse_polynomial(text, self)


@total_ordering
class Polynomial:
    """Immutable polynomial; ``terms`` is a tuple of ``(coeff, exponents)`` pairs
    sorted strictly descending in the ring order."""

    __slots__ = ("ring", "_d", "terms", "_hash")

    def __init__(self, ring: PolynomialRing, data: dict):
        # `data` must already be normalized: no zero coefficients
        self.ring = ring
        self._d = data
        key = ring.order.key
        self.terms = tuple((data[m], m) for m in sorted(data, key=key, reverse=True))
        self._hash = None

    # ---- basic accessors
    def as_dict(self) -> dict:
        return dict(self._d)

    def __bool__(self):
        return bool(self._d)

    def is_zero(self) -> bool:
        return not self._d

    def __len__(self):
        return len(self._d)

    def lt(self):
        """Leading ``(coeff, exponent)`` pair."""
        if not self._d:
            raise ValueError("zero polynomial has no leading term")
        return self.terms[0]

    def lm(self) -> Exp:
        return self.lt()[1]

    def lc(self):
        return self.lt()[0]

    def degree(self) -> int:
        if not self._d:
            return -1
        return max(sum(m) for m in self._d)

    def ord(self) -> int:
        """Order: degree of the lowest nonzero homogeneous component."""
        if not self._d:
            raise ValueError("order of zero polynomial is undefined")
        return min(sum(m) for m in self._d)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self._d}) <= 1

    def is_constant(self) -> bool:
        return all(sum(m) == 0 for m in self._d)

    def is_monomial(self) -> bool:
        return len(self._d) == 1

    def homogeneous_component(self, d: int) -> "Polynomial":
        return Polynomial(self.ring, {m: c for m, c in self._d.items() if sum(m) == d})

    def truncate(self, d: int) -> "Polynomial":
        """Drop every term of degree greater than d."""
        return Polynomial(self.ring, {m: c for m, c in self._d.items() if sum(m) <= d})

    def constant_term(self):
        return self._d.get((0,) * self.ring.nvars, self.ring.field.zero)

    def monic(self) -> "Polynomial":
        if not self._d:
            return self
        return self.scale(self.ring.field.inv(self.lc()))

    def scale(self, c) -> "Polynomial":
        f = self.ring.field
        return Polynomial(self.ring, {m: v for m, x in self._d.items() if (v := f.norm(x * c))})

    def evaluate_at_origin(self):
        return self.constant_term()

    # ---- arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, dict_add(self._d, other._d, self.ring.field))

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, dict_add(self._d, other._d, self.ring.field, -1))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, dict_mul(self._d, other._d, self.ring.field))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out = self.ring.one
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._d == other._d

    def __lt__(self, other):
        # compare by term sequence in the ring order (used for deterministic sorting)
        key = self.ring.order.key
        a = [key(m) for _, m in self.terms]
        b = [key(m) for _, m in other.terms]
        return a < b

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._d.items()))
        return self._hash

    # ---- local-algebra operations
    def initial_form(self) -> "Polynomial":
        """Homogeneous component of minimal degree."""
        if not self._d:
            raise ValueError("initial form of the zero polynomial is undefined")
        return self.homogeneous_component(self.ord())

    def homogenize(self, ring_t: PolynomialRing | None = None, name: str = "t") -> "Polynomial":
        """f^h in a ring with one extra trailing variable."""
        if not self._d:
            raise ValueError("cannot homogenize the zero polynomial")
        R = ring_t or self.ring.extend(name)
        d = self.degree()
        return Polynomial(R, {m + (d - sum(m),): c for m, c in self._d.items()})

    def dehomogenize(self, ring: PolynomialRing) -> "Polynomial":
        """Set the last variable to 1, landing in ``ring``."""
        out: dict = {}
        f = ring.field
        for m, c in self._d.items():
            k = m[:-1]
            out[k] = f.norm(out.get(k, 0) + c)
        return Polynomial(ring, {m: c for m, c in out.items() if c})

    def change_ring(self, ring: PolynomialRing) -> "Polynomial":
        if ring.nvars != self.ring.nvars:
            raise ValueError("variable count mismatch")
        if ring.field == self.ring.field:
            return Polynomial(ring, dict(self._d))
        return ring.from_dict(self._d)

    # ---- printing
    def __str__(self):
        if not self._d:
            return "0"
        names = self.ring.variables
        field = self.ring.field
        parts = []
        for c, m in self.terms:
            cs = field.to_str(c)
            neg = cs.startswith("-")
            if neg:
                cs = cs[1:]
            mono = "*".join(n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e)
            if not mono:
                body = cs
            elif cs == "1":
                body = mono
            else:
                body = f"{cs}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({str(self)!r})"


# --------------------------------------------------------------------------
# free modules
# --------------------------------------------------------------------------

class FreeModuleElement:
    """Element of a graded free module ``⊕ R(-shifts[i])``."""

    __slots__ = ("ring", "components", "shifts")

    def __init__(self, components: Sequence[Polynomial], shifts: Sequence[int] | None = None):
        comps = tuple(components)
        if not comps:
            raise ValueError("free module of rank 0 has no elements to build")
        ring = comps[0].ring
        if any(c.ring != ring for c in comps):
            raise ValueError("components live in different rings")
        self.ring = ring
        self.components = comps
        self.shifts = tuple(shifts) if shifts is not None else (0,) * len(comps)
        if len(self.shifts) != len(comps):
            raise ValueError("shifts and components differ in length")

    @classmethod
    def from_terms(cls, ring, rank, shifts, terms: dict) -> "FreeModuleElement":
        """Build from a ``{(component, exponent): coeff}`` dictionary."""
        buckets = [dict() for _ in range(rank)]
        for (i, m), c in terms.items():
            buckets[i][m] = c
        return cls([Polynomial(ring, b) for b in buckets], shifts)

    def terms_dict(self) -> dict:
        return {(i, m): c for i, p in enumerate(self.components) for m, c in p._d.items()}

    @property
    def rank(self) -> int:
        return len(self.components)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __bool__(self):
        return not self.is_zero()

    def degrees(self):
        return {sum(m) + self.shifts[i] for i, p in enumerate(self.components) for m in p._d}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        ds = self.degrees()
        if not ds:
            raise ValueError("zero element has no degree")
        if len(ds) > 1:
            raise ValueError("element is not homogeneous")
        return ds.pop()

    def _check(self, other):
        if self.shifts != other.shifts or self.ring != other.ring:
            raise ValueError("elements of different free modules")

    def __add__(self, other):
        self._check(other)
        return FreeModuleElement([a + b for a, b in zip(self.components, other.components)], self.shifts)

    def __sub__(self, other):
        self._check(other)
        return FreeModuleElement([a - b for a, b in zip(self.components, other.components)], self.shifts)

    def __neg__(self):
        return FreeModuleElement([-a for a in self.components], self.shifts)

    def __mul__(self, f):
        if isinstance(f, (int, Fraction)):
            f = self.ring.const(f)
        return FreeModuleElement([f * a for a in self.components], self.shifts)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FreeModuleElement):
            return NotImplemented
        return self.shifts == other.shifts and self.components == other.components

    def __hash__(self):
        return hash((self.components, self.shifts))

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    def __repr__(self):
        return f"FreeModuleElement({str(self)}, shifts={list(self.shifts)})"


def as_module_element(x, shifts=None) -> FreeModuleElement:
    if isinstance(x, FreeModuleElement):
        return x
    if isinstance(x, Polynomial):
        return FreeModuleElement([x], shifts or (0,))
    raise TypeError(f"expected Polynomial or FreeModuleElement, got {type(x).__name__}")


def polys_from_strings(ring: PolynomialRing, texts: Iterable[str]):
    return [ring.parse(t) for t in texts]
