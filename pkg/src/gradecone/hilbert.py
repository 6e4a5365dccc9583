"""Hilbert series, h-polynomials and Hilbert coefficients.

Polynomials in ``z`` are integer coefficient lists, constant term first.
The coefficient convention is ``e_i = h^{(i)}(1) / i!``; ``e_0`` and ``e_1``
agree with the plain derivative convention.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import List, Sequence

from .resolution import BettiTable
from .ring import Polynomial, mono_divides, monomials_of_degree


def _trim(c: List[int]) -> List[int]:
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def divide_one_minus_z(c: Sequence[int]) -> List[int]:
    """Exact quotient by ``1 - z``; raises if ``c(1) != 0``."""
    if sum(c) != 0:
        raise ArithmeticError("not divisible by 1 - z")
    q, acc = [], 0
    for a in c[:-1]:
        acc += a
        q.append(acc)
    return _trim(q)


def series_expansion(numerator: Sequence[int], n: int, up_to: int) -> List[int]:
    """Coefficients of ``numerator / (1 - z)^n`` in degrees ``0..up_to``."""
    if n == 0:
        return [numerator[d] if d < len(numerator) else 0 for d in range(up_to + 1)]
    return [sum(a * comb(d - j + n - 1, n - 1) for j, a in enumerate(numerator) if j <= d)
            for d in range(up_to + 1)]


@dataclass(frozen=True)
class HilbertData:
    numerator: List[int]
    h_poly: List[int]
    dim: int
    e: List[int]
    mu: int
    nvars: int

    @property
    def e0(self) -> int:
        return self.e[0]

    @property
    def e1(self) -> int:
        return self.e[1] if len(self.e) > 1 else 0

    def hilbert_function(self, up_to: int) -> List[int]:
        return series_expansion(self.numerator, self.nvars, up_to)

    def to_json(self) -> dict:
        return {"numerator": self.numerator, "h_poly": self.h_poly, "dim": self.dim,
                "e": self.e, "e0": self.e0, "e1": self.e1, "mu": self.mu}


def hilbert_coefficients(h: Sequence[int]) -> List[int]:
    return [sum(comb(k, i) * a for k, a in enumerate(h)) for i in range(max(len(h), 1))]


def min_generators(bt: BettiTable) -> int:
    return sum(v for (i, _), v in bt.beta.items() if i == 0)


def hilbert_series(bt: BettiTable, n: int) -> HilbertData:
    num = [0] * (max(j for _, j in bt.beta) + 1)
    for (i, j), v in bt.beta.items():
        num[j] += (-1) ** i * v
    num = _trim(num)
    if not num:
        raise ValueError("zero module")
    if min(j for _, j in bt.beta) < 0:
        raise ValueError("negative generator degrees are not supported")
    h, divisions = num, 0
    while sum(h) == 0:
        h = divide_one_minus_z(h)
        divisions += 1
    if divisions > n:
        raise AssertionError("more divisions by 1 - z than variables")
    return HilbertData(num, h, n - divisions, hilbert_coefficients(h), min_generators(bt), n)


def standard_monomial_hilbert(gens: Sequence[Polynomial], up_to: int, nvars: int | None = None) -> List[int]:
    """Count monomials outside a monomial ideal, degree by degree (brute force)."""
    exps = []
    for g in gens:
        if g.is_zero():
            continue
        if not g.is_monomial():
            raise ValueError(f"not a monomial: {g}")
        exps.append(g.lm())
        nvars = g.ring.nvars
    if nvars is None:
        raise ValueError("number of variables unknown")
    return [sum(1 for e in monomials_of_degree(nvars, d) if not any(mono_divides(g, e) for g in exps))
            for d in range(up_to + 1)]
