"""Integral polynomials vanishing at zero, and ordered families of them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ArithmeticOverflowError, PolynomialError

INT64_MIN = -(2 ** 63)
INT64_MAX = 2 ** 63 - 1


def check_int64(value: int, what: str = "value") -> int:
    if not INT64_MIN <= value <= INT64_MAX:
        raise ArithmeticOverflowError(f"{what} = {value} does not fit in int64")
    return value


@dataclass(frozen=True)
class IntPoly:
    """``p(n) = sum(coeffs[k-1] * n**k)``; there is no constant slot, so p(0) = 0."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        # trailing zeros carry no information and would make equal polys compare unequal
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntPoly":
        if degree < 1:
            raise PolynomialError("degree must be >= 1 (p(0) = 0 is required)")
        return cls((0,) * (degree - 1) + (coeff,))

    @classmethod
    def parse(cls, text: str) -> "IntPoly":
        return parse_poly(text)

    @property
    def degree(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, n: int) -> int:
        return poly_eval(self, n)

    def eval_many(self, ns: Iterable[int]) -> np.ndarray:
        return np.array([poly_eval(self, int(n)) for n in ns], dtype=np.int64)

    def linear_coefficient(self) -> int | None:
        """``a`` if the polynomial is ``a*n``, else None."""
        if len(self.coeffs) == 1:
            return self.coeffs[0]
        return None

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k, c in enumerate(self.coeffs, start=1):
            if c == 0:
                continue
            mono = "n" if k == 1 else f"n^{k}"
            if c == 1:
                terms.append(f"+{mono}")
            elif c == -1:
                terms.append(f"-{mono}")
            else:
                terms.append(f"{c:+d}*{mono}")
        text = "".join(reversed(terms))
        return text[1:] if text.startswith("+") else text


def poly_eval(p: IntPoly, n: int) -> int:
    """Exact ``p(n)``; raises ArithmeticOverflowError if it leaves int64."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = (acc + c) * n
    return check_int64(acc, f"p({n})")


@dataclass(frozen=True)
class PolyFamily:
    polys: tuple[IntPoly, ...]

    def __post_init__(self):
        polys = tuple(self.polys)
        if not polys:
            raise PolynomialError("a polynomial family needs d >= 1 members")
        object.__setattr__(self, "polys", polys)

    @classmethod
    def parse(cls, text: str) -> "PolyFamily":
        return cls(tuple(parse_poly(part) for part in text.split(",")))

    @classmethod
    def linear(cls, coeffs: Sequence[int]) -> "PolyFamily":
        return cls(tuple(IntPoly((a,)) for a in coeffs))

    @property
    def d(self) -> int:
        return len(self.polys)

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def values(self, n: int) -> tuple[int, ...]:
        return tuple(poly_eval(p, n) for p in self.polys)

    def table(self, nlo: int, nhi: int) -> np.ndarray:
        """int64 array of shape (d, nhi - nlo + 1) holding p_i(n)."""
        ns = range(nlo, nhi + 1)
        return np.stack([p.eval_many(ns) for p in self.polys])

    def linear_coefficients(self) -> tuple[int, ...] | None:
        coeffs = tuple(p.linear_coefficient() for p in self.polys)
        return None if any(c is None for c in coeffs) else coeffs

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.polys)


def parse_poly(text: str) -> IntPoly:
    """Parse an integer-coefficient expression in ``n`` such as ``"3n^2 - n"``.

    Nonzero constant terms are rejected because every admissible polynomial
    must satisfy p(0) = 0.
    """
    import sympy
    from sympy.parsing.sympy_parser import (
        convert_xor, implicit_multiplication_application, parse_expr,
        standard_transformations)

    n = sympy.Symbol("n")
    transformations = standard_transformations + (
        implicit_multiplication_application, convert_xor)
    try:
        expr = parse_expr(text.strip(), local_dict={"n": n}, transformations=transformations)
    except Exception as exc:  # sympy raises a zoo of types here
        raise PolynomialError(f"cannot parse polynomial {text!r}: {exc}") from exc
    expr = sympy.expand(expr)
    if expr.free_symbols - {n}:
        raise PolynomialError(f"{text!r} uses symbols other than n")
    try:
        poly = sympy.Poly(expr, n)
    except sympy.PolynomialError as exc:
        raise PolynomialError(f"{text!r} is not a polynomial in n") from exc
    coeffs = poly.all_coeffs()[::-1]  # constant first
    if any(not c.is_integer for c in coeffs):
        raise PolynomialError(f"{text!r} has non-integer coefficients")
    if coeffs[0] != 0:
        raise PolynomialError(
            f"{text!r} has constant term {coeffs[0]}; admissible polynomials need p_i(0) = 0")
    return IntPoly(tuple(int(c) for c in coeffs[1:]))
