"""Reduced Burau representation and the Alexander polynomial of the
closure, used as an independent necessary-condition oracle.

Conventions (fixed once, validated by the t = 1 permutation check and
the unknot/trefoil anchors in the tests):

    sigma1 |-> [[-t, 1], [0, 1]],      sigma2 |-> [[1, 0], [t, -t]],

with a3 the image of its Artin expansion sigma2 sigma1 sigma2^-1.  For
a 3-braid w with closure L,

    det(I - B(w)) = Alexander(L) * (1 + t + t^2)

up to a unit +-t^j.  `alexander_poly` performs that division exactly
and normalizes the quotient so that it is symmetric under t -> 1/t up
to sign, with positive leading coefficient.  Centering a two-component
closure needs half-integer powers of t, so normalized polynomials carry
exponents in HALF-steps of t: exponent 2 means t^1.  The zero
polynomial is returned for split closures, never an error.
"""

from __future__ import annotations

from dataclasses import dataclass

from .laurent import ExactDivisionError, LaurentPoly, ONE, ZERO, render
from .words import Word, orbit_key

Matrix2 = tuple[LaurentPoly, LaurentPoly, LaurentPoly, LaurentPoly]

_P = LaurentPoly
IDENTITY2: Matrix2 = (ONE, ZERO, ZERO, ONE)

_S1: Matrix2 = (_P({1: -1}), ONE, ZERO, ONE)
_S1I: Matrix2 = (_P({-1: -1}), _P({-1: 1}), ZERO, ONE)
_S2: Matrix2 = (ONE, ZERO, _P({1: 1}), _P({1: -1}))
_S2I: Matrix2 = (ONE, ZERO, ONE, _P({-1: -1}))

_COMB = _P({0: 1, 1: 1, 2: 1})  # 1 + t + t^2


def mat_mul2(m: Matrix2, n: Matrix2) -> Matrix2:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _images() -> dict[int, Matrix2]:
    a3 = mat_mul2(mat_mul2(_S2, _S1), _S2I)
    a3i = mat_mul2(mat_mul2(_S2, _S1I), _S2I)
    return {1: _S1, -1: _S1I, 2: _S2, -2: _S2I, 3: a3, -3: a3i}


_BURAU = _images()


def burau_reduced(w: Word) -> Matrix2:
    """Product of the generator images, multiplicative over
    concatenation; identity for the empty word."""
    m = IDENTITY2
    for x in w:
        m = mat_mul2(m, _BURAU[x])
    return m


class NormalizationError(ArithmeticError):
    """The Burau determinant violated the fixed convention (inexact
    division by 1 + t + t^2 or a non-symmetric quotient); a bug, never
    rounded over."""


_ALEX_CACHE: dict[Word, LaurentPoly] = {}


def alexander_poly(w: Word) -> LaurentPoly:
    """Normalized single-variable Alexander polynomial of the closure.

    Exponents are in half-steps of t (see the module docstring); the
    result satisfies p(1/t) = +-p(t) exactly and has positive leading
    coefficient.  Split closures give the zero polynomial.
    """
    key = orbit_key(w)
    cached = _ALEX_CACHE.get(key)
    if cached is not None:
        return cached
    b = burau_reduced(key)
    a, bb, c, d = b
    det = (ONE - a) * (ONE - d) - bb * c
    try:
        q = det.divexact(_COMB)
    except ExactDivisionError as exc:
        raise NormalizationError(
            f"det(I - Burau) not divisible by 1+t+t^2 for {w!r}") from exc
    p = _normalize(q)
    _ALEX_CACHE[key] = p
    return p


def _normalize(q: LaurentPoly) -> LaurentPoly:
    if q.is_zero:
        return q
    h = q.scale_exponents(2)  # half-step exponent scale
    shift = -(h.min_exp + h.max_exp) // 2
    if (h.min_exp + h.max_exp) % 2:
        raise NormalizationError("odd exponent span in half-step scale")
    p = h.shift(shift)
    r = p.reverse()
    if r != p and r != -p:
        raise NormalizationError("quotient is not +-symmetric under t->1/t")
    if p.leading < 0:
        p = -p
    return p


def breadth(p: LaurentPoly) -> int:
    """Exponent breadth in whole powers of t (0 for the zero poly)."""
    return 0 if p.is_zero else p.span // 2


@dataclass(frozen=True)
class MonicityReport:
    kind: str  # "zero" | "monic" | "nonmonic"
    breadth: int | None = None
    leading: int | None = None


def monicity_report(p: LaurentPoly) -> MonicityReport:
    """Monic iff both extreme coefficients are +-1."""
    if p.is_zero:
        return MonicityReport("zero")
    if abs(p.leading) == 1 and abs(p.trailing) == 1:
        return MonicityReport("monic", breadth(p), p.leading)
    return MonicityReport("nonmonic", breadth(p), p.leading)


def render_alexander(p: LaurentPoly) -> str:
    """Text form of a normalized Alexander polynomial."""
    return render(p, half_exponents=True)


def clear_caches() -> None:
    _ALEX_CACHE.clear()
