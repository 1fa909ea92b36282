"""Exact integer Laurent polynomials in one variable.

Coefficients are arbitrary-precision integers keyed by integer
exponents; zero coefficients are never stored, so equality of values is
equality of representations.  Instances are immutable and hashable.

The Alexander module uses two exponent scales: Burau matrices live in
whole powers of t, while normalized Alexander polynomials use exponents
counted in half-steps of t (exponent 2 means t^1), which makes the
t -> 1/t symmetry exact for two-component closures.  This module is
scale-agnostic; `render` takes a `half_exponents` flag.
"""

from __future__ import annotations

from typing import Iterable, Mapping


class ExactDivisionError(ArithmeticError):
    """Division was requested to be exact but left a remainder."""


class LaurentPoly:
    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | Iterable[tuple[int, int]]
                 = ()):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        c: dict[int, int] = {}
        for e, v in items:
            if v:
                c[e] = c.get(e, 0) + v
                if not c[e]:
                    del c[e]
        object.__setattr__(self, "_c", c)

    def __setattr__(self, *a):  # pragma: no cover - immutability guard
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def term(cls, coeff: int, exp: int) -> "LaurentPoly":
        return cls({exp: coeff})

    # -- structure ------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    @property
    def is_zero(self) -> bool:
        return not self._c

    @property
    def min_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return min(self._c)

    @property
    def max_exp(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    @property
    def span(self) -> int:
        """max exponent - min exponent (the breadth in exponent units)."""
        return 0 if self.is_zero else self.max_exp - self.min_exp

    @property
    def leading(self) -> int:
        return 0 if self.is_zero else self._c[self.max_exp]

    @property
    def trailing(self) -> int:
        return 0 if self.is_zero else self._c[self.min_exp]

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
            if not c[e]:
                del c[e]
        return LaurentPoly(c)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        c: dict[int, int] = {}
        for e1, v1 in self._c.items():
            for e2, v2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + v1 * v2
        return LaurentPoly(c)

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by the n-th power of the variable."""
        return LaurentPoly({e + n: v for e, v in self._c.items()})

    def scale_exponents(self, m: int) -> "LaurentPoly":
        """Substitute t -> t^m (exponent rescaling)."""
        return LaurentPoly({e * m: v for e, v in self._c.items()})

    def reverse(self) -> "LaurentPoly":
        """The image under t -> 1/t."""
        return LaurentPoly({-e: v for e, v in self._c.items()})

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ExactDivisionError on any remainder."""
        if other.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return LaurentPoly()
        num = {e - self.min_exp: v for e, v in self._c.items()}
        den = {e - other.min_exp: v for e, v in other._c.items()}
        dmax = max(den)
        dlead = den[dmax]
        q: dict[int, int] = {}
        while num:
            nmax = max(num)
            if nmax < dmax:
                raise ExactDivisionError("inexact Laurent division")
            lead = num[nmax]
            if lead % dlead:
                raise ExactDivisionError("inexact Laurent division")
            f = lead // dlead
            shift = nmax - dmax
            q[shift] = f
            for e, v in den.items():
                e2 = e + shift
                num[e2] = num.get(e2, 0) - f * v
                if not num[e2]:
                    del num[e2]
        return LaurentPoly(q).shift(self.min_exp - other.min_exp)

    def __call__(self, value: int = 1) -> int:
        """Evaluate at an integer point (only t = +-1 keeps exactness
        for negative exponents)."""
        if value == 1:
            return sum(self._c.values())
        if value == -1:
            return sum(v if e % 2 == 0 else -v for e, v in self._c.items())
        raise ValueError("exact evaluation supported at t = 1 and t = -1")

    # -- value semantics --------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self._c == other._c

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    def __repr__(self) -> str:
        return f"LaurentPoly({self._c!r})"


ZERO = LaurentPoly.zero()
ONE = LaurentPoly.one()
T = LaurentPoly.term(1, 1)


def _exp_text(e: int, half: bool) -> str:
    if half:
        if e % 2 == 0:
            e //= 2
        else:
            return f"t^{e}/2" if e > 0 else f"t^-{-e}/2"
    if e == 1:
        return "t"
    return f"t^{e}"


def render(p: LaurentPoly, half_exponents: bool = False) -> str:
    """Human text with exponents descending: "t - 1 + t^-1"."""
    if p.is_zero:
        return "0"
    parts: list[str] = []
    for e in sorted(p.coeffs, reverse=True):
        v = p.coeff(e)
        sign = "-" if v < 0 else "+"
        mag = abs(v)
        if e == 0:
            body = str(mag)
        elif mag == 1:
            body = _exp_text(e, half_exponents)
        else:
            body = f"{mag} {_exp_text(e, half_exponents)}"
        if not parts:
            parts.append(body if v > 0 else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts)
