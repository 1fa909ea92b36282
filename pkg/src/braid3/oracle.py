"""Exact word-problem oracle for B3.

Every band word is fingerprinted by a pair (matrix, exponent sum) where
the matrix is the image under the faithful-enough 2x2 integer
representation

    sigma1 |-> [[1, 1], [0, 1]],    sigma2 |-> [[1, 0], [-1, 1]],

and a3 goes to the image of its Artin expansion.  The matrix map
B3 -> SL(2, Z) has kernel generated by the 4th power of the half twist
(the square of the full twist), whose exponent sum is 12, so matrix
equality plus exponent-sum equality decides equality in B3.  That
standard fact is not taken on faith here: the small-length property
tests compare the fingerprint against exhaustive relation rewriting.

Trace and exponent sum are both invariant under conjugation, giving a
cheap necessary conjugacy test (`conjugacy_profile`) used to audit
every rotation step of the normal-form engine.

`geodesic_search` is the independent shortest-length oracle: a plain
breadth-first search over cyclic rotations, free/cyclic reduction and
the length-preserving relation rewrites, with no knowledge of the
normal-form pipeline.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from .words import NXT, PRV, Word, cyclic_reduce

Matrix = tuple[int, int, int, int]  # row-major 2x2

IDENTITY: Matrix = (1, 0, 0, 1)

# Images of the band letters; +-4 is the dual Garside element
# alpha = a2 a1 (and its inverse), used by the rewrite engine.
MAT: dict[int, Matrix] = {
    1: (1, 1, 0, 1),
    -1: (1, -1, 0, 1),
    2: (1, 0, -1, 1),
    -2: (1, 0, 1, 1),
    3: (2, 1, -1, 0),
    -3: (0, -1, 1, 2),
    4: (1, 1, -1, 0),
    -4: (0, -1, 1, 1),
}

_EXP = {1: 1, -1: -1, 2: 1, -2: -1, 3: 1, -3: -1, 4: 2, -4: -2}


def mat_mul(m: Matrix, n: Matrix) -> Matrix:
    a, b, c, d = m
    e, f, g, h = n
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


class GroupFingerprint(NamedTuple):
    matrix: Matrix
    exp_sum: int


def fingerprint(w: Word) -> GroupFingerprint:
    """Complete invariant of the group element represented by w.

    Multiplicative over concatenation.  Also accepts the rewrite
    engine's extended words containing the alpha marker +-4.
    """
    m = IDENTITY
    e = 0
    for x in w:
        m = mat_mul(m, MAT[x])
        e += _EXP[x]
    return GroupFingerprint(m, e)


def equal_in_group(u: Word, v: Word) -> bool:
    """True iff u and v represent the same element of B3."""
    return fingerprint(u) == fingerprint(v)


def conjugacy_profile(w: Word) -> tuple[int, int]:
    """(trace, exponent sum): invariant under conjugation and rotation."""
    m, e = fingerprint(w)
    return (m[0] + m[3], e)


_SPELLINGS = ((2, 1), (3, 2), (1, 3))
_NEG_SPELLINGS = ((-1, -2), (-2, -3), (-3, -1))
_RESPELL = {s: tuple(t for t in _SPELLINGS if t != s) for s in _SPELLINGS}
_RESPELL.update({s: tuple(t for t in _NEG_SPELLINGS if t != s)
                 for s in _NEG_SPELLINGS})


def _plain_moves(w: Word):
    """Length-preserving relation rewrites plus rotation, on plain words."""
    n = len(w)
    if n > 1:
        yield w[1:] + w[:1]
    for p in range(n - 1):
        x, y = w[p], w[p + 1]
        if x > 0 and y > 0 or x < 0 and y < 0:
            alt = _RESPELL.get((x, y))
            if alt:
                for u in alt:
                    yield w[:p] + u + w[p + 2:]
        elif x > 0 and y < 0:
            # a_i A_j = A_{i+1} a_{j+1}
            yield w[:p] + (-NXT[x], NXT[-y]) + w[p + 2:]
        elif x < 0 and y > 0:
            # A_i a_j = a_{i-1} A_{j-1}
            yield w[:p] + (PRV[-x], -PRV[y]) + w[p + 2:]


def _reduction(w: Word) -> Word | None:
    for p in range(len(w) - 1):
        if w[p] == -w[p + 1]:
            return w[:p] + w[p + 2:]
    if len(w) >= 2 and w[0] == -w[-1]:
        return w[1:-1]
    return None


@dataclass(frozen=True)
class GeodesicResult:
    min_length: int
    witness: Word
    truncated: bool = False


def geodesic_search(w: Word, budget: int,
                    max_nodes: int = 2_000_000) -> GeodesicResult:
    """Breadth-first search for the shortest conjugate of w.

    Explores the orbit of w under free/cyclic reduction, cyclic
    rotation, and the length-preserving relation rewrites, never
    visiting words longer than `budget`.  A truncated search (node cap
    hit before the orbit closed) is reported, not raised: callers must
    treat it as inconclusive.
    """
    start = cyclic_reduce(w)
    if budget < len(start):
        raise ValueError(
            f"budget {budget} below reduced length {len(start)}")
    best = start
    seen = {start}
    queue = deque([start])
    nodes = 0
    while queue:
        cur = queue.popleft()
        nodes += 1
        if nodes > max_nodes:
            return GeodesicResult(len(best), best, truncated=True)
        if len(cur) < len(best) or (len(cur) == len(best) and cur < best):
            best = cur
        if not cur:
            break
        red = _reduction(cur)
        if red is not None and red not in seen:
            seen.add(red)
            queue.append(red)
        for nb in _plain_moves(cur):
            if len(nb) <= budget and nb not in seen:
                seen.add(nb)
                queue.append(nb)
    return GeodesicResult(len(best), best, truncated=False)
