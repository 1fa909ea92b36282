"""Words in the band-generator alphabet of the 3-strand braid group B3.

B3 is generated by the three bands a1 = sigma1, a2 = sigma2,
a3 = sigma2 sigma1 sigma2^-1, subject to a2 a1 = a3 a2 = a1 a3.  Band
subscripts behave cyclically: after a3 comes a1 again.

A letter is a signed integer: +1, +2, +3 stand for a1, a2, a3 and
-1, -2, -3 for their inverses (written A1, A2, A3 in text).  A word is a
tuple of letters read left to right; the empty tuple is the identity
braid.  Words are plain immutable tuples, so every function here is pure
and values can be shared freely between threads.

Text grammar (both directions of `parse_word`/`format_word`):

    WORD   := (TOKEN SEP?)*
    TOKEN  := LETTER EXP?
    LETTER := a1|a2|a3|A1|A2|A3|s1|s2|S1|S2
    EXP    := '^' nonzero-integer
    SEP    := whitespace | '.'

Capital letters are inverses, s/S tokens are the Artin generators
(s1 = a1, s2 = a2), and a negative exponent inverts the letter.
"""

from __future__ import annotations

import re
from typing import Iterable

Word = tuple[int, ...]
Permutation3 = tuple[int, int, int]  # images (pi(1), pi(2), pi(3))

# Cyclic successor / predecessor of a band subscript.
NXT = {1: 2, 2: 3, 3: 1}
PRV = {1: 3, 2: 1, 3: 2}

IDENTITY_PERM: Permutation3 = (1, 2, 3)

# a1, A1 act as (1 2); a2, A2 as (2 3); a3 = s2 s1 S2 acts as
# (2 3)(1 2)(2 3) = (1 3).
_LETTER_PERM = {1: (2, 1, 3), 2: (1, 3, 2), 3: (3, 2, 1)}

_TOKEN_RE = re.compile(r"([aA][123]|[sS][12])(\^(-?\d+))?")
_SEP_RE = re.compile(r"[\s.]+")

_ARTIN_OF_LETTER = {
    1: (1,), -1: (-1,),
    2: (2,), -2: (-2,),
    3: (2, 1, -2), -3: (2, -1, -2),
}


class WordError(ValueError):
    """Malformed word text or an invalid letter sequence."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None
                         else f"{message} (at position {position})")
        self.position = position


def check_word(w: Iterable[int]) -> Word:
    """Validate and freeze a letter sequence into a word."""
    t = tuple(w)
    for x in t:
        if not isinstance(x, int) or x == 0 or abs(x) > 3:
            raise WordError(f"invalid band letter {x!r}")
    return t


def parse_word(text: str) -> Word:
    """Parse token text into a word.

    Letters appear in left-to-right reading order, exponents are
    expanded, and no reduction of any kind is performed.
    """
    letters: list[int] = []
    pos = 0
    n = len(text)
    seen_token = False
    while pos < n:
        sep = _SEP_RE.match(text, pos)
        if sep:
            pos = sep.end()
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            snippet = text[pos:pos + 8]
            raise WordError(f"unrecognized token {snippet!r}", pos)
        seen_token = True
        sym = m.group(1)
        idx = int(sym[1])
        letter = idx if sym[0] in "as" else -idx
        if m.group(2) is not None:
            exp = int(m.group(3))
            if exp == 0:
                raise WordError(f"zero exponent in token {m.group(0)!r}", pos)
            if exp < 0:
                letter, exp = -letter, -exp
        else:
            exp = 1
        letters.extend([letter] * exp)
        pos = m.end()
    if not seen_token and text:
        raise WordError("no tokens found in non-empty text", 0)
    return tuple(letters)


def format_word(w: Word, notation: str = "band") -> str:
    """Render a word as token text.

    Band notation round-trips exactly through `parse_word`.  Artin
    notation expands a3 as "s2 s1 S2" (and A3 as "s2 S1 S2"), so it
    round-trips only up to equality in the group.
    """
    if notation == "band":
        return " ".join(("a" if x > 0 else "A") + str(abs(x)) for x in w)
    if notation == "artin":
        toks = []
        for x in w:
            for s in _ARTIN_OF_LETTER[x]:
                toks.append(("s" if s > 0 else "S") + str(abs(s)))
        return " ".join(toks)
    raise ValueError(f"unknown notation {notation!r}")


def to_artin(w: Word) -> Word:
    """Rewrite into Artin letters (+-1 = sigma1^+-1, +-2 = sigma2^+-1)."""
    out: list[int] = []
    for x in w:
        out.extend(_ARTIN_OF_LETTER[x])
    return tuple(out)


def from_artin(artin: Iterable[int]) -> Word:
    """Interpret an Artin letter sequence as a band word (s_i = a_i)."""
    t = tuple(artin)
    for x in t:
        if x == 0 or abs(x) > 2:
            raise WordError(f"invalid Artin letter {x!r}")
    return t


def free_reduce(w: Word) -> Word:
    """Cancel adjacent mutually inverse letters until none remain."""
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w: Word) -> Word:
    """Freely reduce, then cancel mutually inverse end pairs."""
    t = free_reduce(w)
    while len(t) >= 2 and t[0] == -t[-1]:
        t = t[1:-1]
    return t


def reduce_word(w: Word, cyclic: bool = False) -> Word:
    """Free reduction; with `cyclic` also reduce the wrap-around pair.

    The output represents the same group element, or the same conjugacy
    class when `cyclic` is set.
    """
    return cyclic_reduce(w) if cyclic else free_reduce(w)


def rotate(w: Word, r: int) -> Word:
    """Cyclic rotation moving the first r letters to the end."""
    if not w:
        return w
    r %= len(w)
    return w[r:] + w[:r]


def relabel(w: Word, s: int) -> Word:
    """Shift every band subscript cyclically by s (a1->a2->a3->a1).

    Realized in the group by conjugation with the s-th power of the
    dual Garside element, so the result is conjugate to the input.
    """
    s %= 3
    if s == 0:
        return w
    shift = NXT if s == 1 else PRV
    return tuple((1 if x > 0 else -1) * shift[abs(x)] for x in w)


def inverse_word(w: Word) -> Word:
    """The inverse braid word (reverse order, invert every letter)."""
    return tuple(-x for x in reversed(w))


def compose_perm(p: Permutation3, q: Permutation3) -> Permutation3:
    """p then q: (p*q)(x) = q(p(x))."""
    return (q[p[0] - 1], q[p[1] - 1], q[p[2] - 1])


def permutation_of(w: Word) -> Permutation3:
    """Underlying strand permutation, letters composed left to right."""
    p = IDENTITY_PERM
    for x in w:
        p = compose_perm(p, _LETTER_PERM[abs(x)])
    return p


def cycle_count(p: Permutation3) -> int:
    seen = [False, False, False]
    n = 0
    for i in range(3):
        if not seen[i]:
            n += 1
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j] - 1
    return n


def component_count(w: Word) -> int:
    """Number of components of the closure (cycles of the permutation)."""
    return cycle_count(permutation_of(w))


def exponent_sum(w: Word) -> int:
    """Signed letter count; agrees with the Artin exponent sum since a3
    expands to an Artin word of exponent sum +1."""
    return sum(1 if x > 0 else -1 for x in w)


def orbit_key(w: Word) -> Word:
    """Least rotation/relabeling of the cyclically reduced word.

    Rotation, relabeling and reduction all preserve the conjugacy
    class, so this is a conjugation-respecting cache key (not a
    complete conjugacy invariant).
    """
    t = cyclic_reduce(w)
    if not t:
        return t
    best = None
    for s in range(3):
        u = relabel(t, s)
        for r in range(len(u)):
            cand = u[r:] + u[:r]
            if best is None or cand < best:
                best = cand
    return best


def mirror_word(w: Word) -> Word:
    """A word whose closure is the mirror image of the closure of w.

    The diagram mirror is realized on Artin generators by
    sigma_i -> sigma_i^-1, which respects the braid relation; a3 is not
    sent to a band letter, so the image is re-read as a band word
    through the Artin alphabet.  No reduction is performed.
    """
    return from_artin(tuple(-x for x in to_artin(w)))
