"""Shortest conjugacy normal form for 3-braids in band generators.

Every conjugacy class of B3 is represented by a shortest band word of
one of three shapes built from the dual Garside element
alpha = a2 a1 = a3 a2 = a1 a3:

    (i)   alpha^k P        (k > 0, P a nondecreasing positive word)
    (ii)  N alpha^-k       (k > 0, the inverse of N nondecreasing)
    (iii) N P              (no twist; either part may be empty)

A positive word is nondecreasing when consecutive subscripts step by 0
or +1 cyclically; the only "bad" adjacency in a positive word is a
descent a_{i+1} a_i, which literally spells alpha.  The engine
represents alpha by the marker letter +-4 so that twist extraction,
migration and absorption are single rewrite steps:

    a_{i+1} a_i <-> alpha            (extract / expand)
    a_i alpha    =  alpha a_{i+1}    (migration; pinned by the
                                      fingerprint oracle, see tests)
    alpha A_i    =  a_{i+1}          (absorption, and three mirrors)
    a_i A_j      =  A_{i+1} a_{j+1}  (sign sorting)

`to_xu_form` first drives the word to minimal weight greedily, then
closes the set of minimal-weight representatives under the
length-preserving moves above plus rotation and subscript relabeling,
and finally selects a canonical reading: maximal twist exponent |k|,
then lexicographically least (N, P).  Two conjugate inputs therefore
produce the identical XuForm.  Every step of the returned trace is an
oracle-checkable rewrite; in checked mode each applied step is verified
against the fingerprint (word equality) or the conjugacy profile
(rotation and relabeling).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from typing import Iterable, NamedTuple

from .oracle import conjugacy_profile, fingerprint
from .words import (NXT, PRV, Word, WordError, cyclic_reduce, free_reduce,
                    orbit_key)

ALPHA = 4
ALPHA_WORD: Word = (2, 1)
ALPHA_INV_WORD: Word = (-1, -2)

SPELLINGS = ((2, 1), (3, 2), (1, 3))
NEG_SPELLINGS = ((-1, -2), (-2, -3), (-3, -1))
_SPELL_SET = frozenset(SPELLINGS)
_NEG_SPELL_SET = frozenset(NEG_SPELLINGS)


class RuleApplicationError(ValueError):
    """A rewrite rule's left-hand pattern is absent at the position."""


class StepBudgetExceeded(RuntimeError):
    """The non-termination guard tripped; this flags a bug, never a
    normal outcome."""


class InternalCheckError(AssertionError):
    """A checked-mode verification failed: an applied step changed the
    group element (or conjugacy profile) it was required to preserve."""


_CHECKED = os.environ.get("BRAID3_CHECKED", "") not in ("", "0")


def set_checked(on: bool) -> bool:
    """Globally enable per-step oracle verification; returns old value."""
    global _CHECKED
    old, _CHECKED = _CHECKED, bool(on)
    return old


def is_checked() -> bool:
    return _CHECKED


def step_budget(word_length: int) -> int:
    """Applied-step allowance for one normalization run.

    BRAID3_STEP_BUDGET overrides the default 10*l^2 + 100.
    """
    env = os.environ.get("BRAID3_STEP_BUDGET")
    if env:
        return int(env)
    return 10 * word_length * word_length + 100


_EXPLORE_FACTOR = 600  # BFS node allowance per unit of step budget


def _check_extended(w: Iterable[int]) -> Word:
    t = tuple(w)
    for x in t:
        if not isinstance(x, int) or x == 0 or abs(x) > 4:
            raise WordError(f"invalid engine letter {x!r}")
    return t


def weight(w: Word) -> int:
    """Band length with the alpha marker counting 2."""
    return sum(2 if abs(x) == ALPHA else 1 for x in w)


def relabel_ext(w: Word, s: int) -> Word:
    """Cyclic subscript shift on an engine word; markers are fixed."""
    s %= 3
    if s == 0:
        return w
    shift = NXT if s == 1 else PRV
    return tuple(x if abs(x) == ALPHA
                 else (1 if x > 0 else -1) * shift[abs(x)] for x in w)


def expand_markers(w: Word) -> Word:
    """Replace every alpha marker by its default two-letter spelling."""
    out: list[int] = []
    for x in w:
        if x == ALPHA:
            out.extend(ALPHA_WORD)
        elif x == -ALPHA:
            out.extend(ALPHA_INV_WORD)
        else:
            out.append(x)
    return tuple(out)


class Step(NamedTuple):
    """One replayable rewrite: rule name, position, optional argument.

    For "rotate" and "relabel" the position field carries the rotation
    amount / subscript shift.
    """
    rule: str
    pos: int
    arg: int | None = None


def apply_step(w: Word, step: Step) -> Word:
    return rewrite_step(w, step.pos, step.rule, step.arg)


def rewrite_step(w: Word, position: int, rule: str,
                 arg: int | None = None) -> Word:
    """Apply one named rewrite rule at a position.

    Relation rules preserve length, cancellation removes two symbols,
    and an alpha marker absorbing an adjacent inverse letter shortens
    the word by one symbol.  The group element is unchanged except for
    "rotate" and "relabel", which preserve the conjugacy class.
    """
    w = _check_extended(w)
    n = len(w)
    p = position
    if rule == "rotate":
        if n == 0:
            return w
        return w[p % n:] + w[:p % n]
    if rule == "relabel":
        return relabel_ext(w, p)
    if not 0 <= p < n:
        raise RuleApplicationError(f"position {p} out of range for {rule}")

    def pair() -> tuple[int, int]:
        if p + 1 >= n:
            raise RuleApplicationError(f"{rule} needs two symbols at {p}")
        return w[p], w[p + 1]

    if rule == "cancel":
        x, y = pair()
        if x != -y:
            raise RuleApplicationError(f"no inverse pair at {p}")
        return w[:p] + w[p + 2:]
    if rule == "delta-extract":
        if pair() not in _SPELL_SET:
            raise RuleApplicationError(f"no alpha spelling at {p}")
        return w[:p] + (ALPHA,) + w[p + 2:]
    if rule == "delta-extract-neg":
        if pair() not in _NEG_SPELL_SET:
            raise RuleApplicationError(f"no alpha-inverse spelling at {p}")
        return w[:p] + (-ALPHA,) + w[p + 2:]
    if rule == "delta-expand":
        if w[p] != ALPHA:
            raise RuleApplicationError(f"no alpha marker at {p}")
        return w[:p] + SPELLINGS[arg or 0] + w[p + 1:]
    if rule == "delta-expand-neg":
        if w[p] != -ALPHA:
            raise RuleApplicationError(f"no alpha-inverse marker at {p}")
        return w[:p] + NEG_SPELLINGS[arg or 0] + w[p + 1:]
    if rule == "alpha-respell":
        x, y = pair()
        if (x, y) not in _SPELL_SET or (x, y) == SPELLINGS[arg or 0]:
            raise RuleApplicationError(f"cannot respell at {p}")
        return w[:p] + SPELLINGS[arg or 0] + w[p + 2:]
    if rule == "alpha-inv-respell":
        x, y = pair()
        if (x, y) not in _NEG_SPELL_SET or (x, y) == NEG_SPELLINGS[arg or 0]:
            raise RuleApplicationError(f"cannot respell at {p}")
        return w[:p] + NEG_SPELLINGS[arg or 0] + w[p + 2:]
    if rule == "pos-neg-swap":
        x, y = pair()
        if not (0 < x <= 3 and -3 <= y < 0):
            raise RuleApplicationError(f"no a_i A_j pattern at {p}")
        return w[:p] + (-NXT[x], NXT[-y]) + w[p + 2:]
    if rule == "neg-pos-swap":
        x, y = pair()
        if not (-3 <= x < 0 and 0 < y <= 3):
            raise RuleApplicationError(f"no A_i a_j pattern at {p}")
        return w[:p] + (PRV[-x], -PRV[y]) + w[p + 2:]
    if rule == "alpha-migrate-left":
        x, y = pair()
        if not (0 < x <= 3 and y == ALPHA):
            raise RuleApplicationError(f"no a_i alpha pattern at {p}")
        return w[:p] + (ALPHA, NXT[x]) + w[p + 2:]
    if rule == "alpha-migrate-right":
        x, y = pair()
        if not (x == ALPHA and 0 < y <= 3):
            raise RuleApplicationError(f"no alpha a_i pattern at {p}")
        return w[:p] + (PRV[y], ALPHA) + w[p + 2:]
    if rule == "alpha-inv-migrate-right":
        x, y = pair()
        if not (x == -ALPHA and -3 <= y < 0):
            raise RuleApplicationError(f"no alpha^-1 A_i pattern at {p}")
        return w[:p] + (-NXT[-y], -ALPHA) + w[p + 2:]
    if rule == "alpha-inv-migrate-left":
        x, y = pair()
        if not (-3 <= x < 0 and y == -ALPHA):
            raise RuleApplicationError(f"no A_i alpha^-1 pattern at {p}")
        return w[:p] + (-ALPHA, -PRV[-x]) + w[p + 2:]
    if rule == "alpha-absorb-right":
        x, y = pair()
        if not (x == ALPHA and -3 <= y < 0):
            raise RuleApplicationError(f"no alpha A_j pattern at {p}")
        return w[:p] + (NXT[-y],) + w[p + 2:]
    if rule == "alpha-absorb-left":
        x, y = pair()
        if not (-3 <= x < 0 and y == ALPHA):
            raise RuleApplicationError(f"no A_j alpha pattern at {p}")
        return w[:p] + (PRV[-x],) + w[p + 2:]
    if rule == "alpha-inv-absorb-right":
        x, y = pair()
        if not (x == -ALPHA and 0 < y <= 3):
            raise RuleApplicationError(f"no alpha^-1 a_j pattern at {p}")
        return w[:p] + (-PRV[y],) + w[p + 2:]
    if rule == "alpha-inv-absorb-left":
        x, y = pair()
        if not (0 < x <= 3 and y == -ALPHA):
            raise RuleApplicationError(f"no a_j alpha^-1 pattern at {p}")
        return w[:p] + (-NXT[x],) + w[p + 2:]
    raise RuleApplicationError(f"unknown rule {rule!r}")


_EQUALITY_RULES = frozenset({
    "cancel", "delta-extract", "delta-extract-neg", "delta-expand",
    "delta-expand-neg", "alpha-respell", "alpha-inv-respell",
    "pos-neg-swap", "neg-pos-swap", "alpha-migrate-left",
    "alpha-migrate-right", "alpha-inv-migrate-right",
    "alpha-inv-migrate-left", "alpha-absorb-right", "alpha-absorb-left",
    "alpha-inv-absorb-right", "alpha-inv-absorb-left",
})


def verify_step(before: Word, step: Step, after: Word) -> None:
    """Checked-mode audit: equality rules must preserve the fingerprint,
    rotation/relabeling must preserve the conjugacy profile."""
    if step.rule in _EQUALITY_RULES:
        if fingerprint(before) != fingerprint(after):
            raise InternalCheckError(
                f"step {step} changed the group element")
    elif step.rule in ("rotate", "relabel"):
        if conjugacy_profile(before) != conjugacy_profile(after):
            raise InternalCheckError(
                f"step {step} changed the conjugacy profile")
    else:
        raise InternalCheckError(f"unknown step rule {step.rule!r}")


def replay(w: Word, steps: Iterable[Step]) -> Word:
    """Re-apply a recorded trace to a word."""
    for st in steps:
        w = apply_step(w, st)
    return w


def reconstruct_conjugator(w: Word, steps: Iterable[Step]) -> Word:
    """The conjugator accumulated by a trace's rotations/relabelings.

    Returns a plain word c with  replay(w, steps) = c^-1 w c  in the
    group (relabeling by +1 is conjugation by alpha, rotation by r is
    conjugation by the rotated-out prefix).
    """
    cur = _check_extended(w)
    conj: list[int] = []
    for st in steps:
        if st.rule == "rotate":
            conj.extend(expand_markers(cur[:st.pos % len(cur)] if cur else ()))
        elif st.rule == "relabel":
            s = st.pos % 3
            if s == 1:
                conj.extend(ALPHA_WORD)
            elif s == 2:
                conj.extend(ALPHA_INV_WORD)
        cur = apply_step(cur, st)
    return free_reduce(tuple(conj))


@dataclass(frozen=True)
class XuForm:
    """Canonical shortest conjugacy representative.

    k > 0 means an alpha^k prefix (N empty), k < 0 an alpha^k suffix
    (P empty), k = 0 the twist-free shape N P where either part may be
    empty.  P is nondecreasing and the inverse of N is nondecreasing.
    canonical_rotation is the index of the lexicographically least
    rotation of the expansion (a determinate function of the form kept
    for reproducibility of reports).
    """
    k: int
    N: Word = ()
    P: Word = ()
    canonical_rotation: int = 0

    def __post_init__(self):
        if self.k > 0 and self.N:
            raise ValueError("positive twist excludes a negative part")
        if self.k < 0 and self.P:
            raise ValueError("negative twist excludes a positive part")
        if any(not (0 < x <= 3) for x in self.P):
            raise ValueError("P must consist of positive band letters")
        if any(not (-3 <= x < 0) for x in self.N):
            raise ValueError("N must consist of negative band letters")
        if self.P and monotonicity(self.P) == "neither":
            raise ValueError("P must be nondecreasing")
        if self.N and monotonicity(
                tuple(-x for x in reversed(self.N))) == "neither":
            raise ValueError("the inverse of N must be nondecreasing")

    def expansion(self) -> Word:
        """The plain band word N alpha^k P with alpha spelled a2 a1."""
        if self.k > 0:
            return ALPHA_WORD * self.k + self.P
        if self.k < 0:
            return self.N + ALPHA_INV_WORD * (-self.k)
        return self.N + self.P

    @property
    def is_empty(self) -> bool:
        return self.k == 0 and not self.N and not self.P

    @property
    def pure_positive(self) -> bool:
        return self.k == 0 and not self.N and bool(self.P)

    @property
    def pure_negative(self) -> bool:
        return self.k == 0 and not self.P and bool(self.N)

    @property
    def mixed(self) -> bool:
        return self.k == 0 and bool(self.N) and bool(self.P)

    @property
    def shape(self) -> str:
        if self.k > 0:
            return "i"
        if self.k < 0:
            return "ii"
        return "iii"


def xu_length(x: XuForm) -> int:
    """Band length of the expansion: 2|k| + l(N) + l(P); by minimality
    of the form this is the shortest word length in the class."""
    return 2 * abs(x.k) + len(x.N) + len(x.P)


def monotonicity(P: Word, cyclic: bool = False) -> str:
    """Classify a positive word: strictly_increasing, nondecreasing
    (subscripts step by 0 or +1, cyclically after a3 comes a1), or
    neither.  With `cyclic` the last-to-first adjacency counts too.
    The empty word is strictly increasing by convention.
    """
    for x in P:
        if not (isinstance(x, int) and 0 < x <= 3):
            raise WordError(f"monotonicity needs positive letters, got {x!r}")
    pairs = list(zip(P, P[1:]))
    if cyclic and len(P) >= 1:
        pairs.append((P[-1], P[0]))
    strict = True
    for x, y in pairs:
        if y == x:
            strict = False
        elif y != NXT[x]:
            return "neither"
    return "strictly_increasing" if strict else "nondecreasing"


def untwist(x: XuForm) -> XuForm:
    """Collapse every doubled letter a_i a_i in P (and mirror-wise in N)
    until both parts are strictly increasing; the twist exponent is
    unchanged.  Idempotent, never increases length.

    The output is a valid form of the same shape, but it represents a
    different link (each collapse de-plumbs a Hopf band) and is not
    re-canonicalized.
    """
    def collapse(part: Word) -> Word:
        out: list[int] = []
        for a in part:
            if not out or out[-1] != a:
                out.append(a)
        return tuple(out)

    newN, newP = collapse(x.N), collapse(x.P)
    if newN == x.N and newP == x.P:
        return x
    y = XuForm(x.k, newN, newP)
    return replace(y, canonical_rotation=_lexmin_rotation(y.expansion()))


def _lexmin_rotation(w: Word) -> int:
    if len(w) <= 1:
        return 0
    best, best_r = w, 0
    for r in range(1, len(w)):
        cand = w[r:] + w[:r]
        if cand < best:
            best, best_r = cand, r
    return best_r


# --------------------------------------------------------------------
# Normalization engine
# --------------------------------------------------------------------

def _nondecreasing(part: Word) -> bool:
    return all(y == x or y == NXT[x] for x, y in zip(part, part[1:]))


def _neg_good(part: Word) -> bool:
    # adjacency A_i A_j is allowed for j = i or j = i - 1; the bad pair
    # A_i A_{i+1} spells alpha^-1.
    return all(-y == -x or -y == PRV[-x] for x, y in zip(part, part[1:]))


def _parse_shape(word: Word) -> tuple[int, Word, Word] | None:
    """Read an engine word as (k, N-subscripts, P-letters) if it has one
    of the three canonical shapes; None otherwise."""
    n = len(word)
    i = 0
    while i < n and word[i] == ALPHA:
        i += 1
    rest = word[i:]
    if all(0 < x <= 3 for x in rest) and _nondecreasing(rest):
        return (i, (), rest)
    if i > 0:
        return None
    j = n
    while j > 0 and word[j - 1] == -ALPHA:
        j -= 1
    head = word[:j]
    if all(-3 <= x < 0 for x in head) and _neg_good(head):
        return (-(n - j), tuple(-x for x in head), ())
    if j < n:
        return None
    m = 0
    while m < n and -3 <= word[m] < 0:
        m += 1
    if m == 0 or m == n:
        return None
    npart, ppart = word[:m], word[m:]
    if all(0 < x <= 3 for x in ppart) and _nondecreasing(ppart) \
            and _neg_good(npart):
        return (0, tuple(-x for x in npart), ppart)
    return None


def _shortening(w: Word) -> tuple[str, int] | None:
    """First linear cancellation or absorption in an engine word."""
    for p in range(len(w) - 1):
        x, y = w[p], w[p + 1]
        if x == -y:
            return ("cancel", p)
        if x == ALPHA and -3 <= y < 0:
            return ("alpha-absorb-right", p)
        if -3 <= x < 0 and y == ALPHA:
            return ("alpha-absorb-left", p)
        if x == -ALPHA and 0 < y <= 3:
            return ("alpha-inv-absorb-right", p)
        if 0 < x <= 3 and y == -ALPHA:
            return ("alpha-inv-absorb-left", p)
    return None


def _level_neighbors(w: Word):
    """Weight-preserving neighbors of an engine word, as (step, word).

    Words are built inline to keep the closure search cheap; the same
    rewrites are available one at a time through `rewrite_step`.
    """
    n = len(w)
    if n > 1:
        yield Step("rotate", 1), w[1:] + w[:1]
    if n > 0:
        yield Step("relabel", 1), relabel_ext(w, 1)
        yield Step("relabel", 2), relabel_ext(w, 2)
    for p in range(n):
        x = w[p]
        if x == ALPHA:
            for t in range(3):
                yield (Step("delta-expand", p, t),
                       w[:p] + SPELLINGS[t] + w[p + 1:])
        elif x == -ALPHA:
            for t in range(3):
                yield (Step("delta-expand-neg", p, t),
                       w[:p] + NEG_SPELLINGS[t] + w[p + 1:])
        if p + 1 >= n:
            continue
        y = w[p + 1]
        if 0 < x <= 3:
            if 0 < y <= 3:
                if x == NXT[y]:
                    yield (Step("delta-extract", p),
                           w[:p] + (ALPHA,) + w[p + 2:])
            elif y == ALPHA:
                yield (Step("alpha-migrate-left", p),
                       w[:p] + (ALPHA, NXT[x]) + w[p + 2:])
            elif -3 <= y < 0:
                yield (Step("pos-neg-swap", p),
                       w[:p] + (-NXT[x], NXT[-y]) + w[p + 2:])
        elif -3 <= x < 0:
            if -3 <= y < 0:
                if -y == NXT[-x]:
                    yield (Step("delta-extract-neg", p),
                           w[:p] + (-ALPHA,) + w[p + 2:])
            elif y == -ALPHA:
                yield (Step("alpha-inv-migrate-left", p),
                       w[:p] + (-ALPHA, -PRV[-x]) + w[p + 2:])
            elif 0 < y <= 3:
                yield (Step("neg-pos-swap", p),
                       w[:p] + (PRV[-x], -PRV[y]) + w[p + 2:])
        elif x == ALPHA and 0 < y <= 3:
            yield (Step("alpha-migrate-right", p),
                   w[:p] + (PRV[y], ALPHA) + w[p + 2:])
        elif x == -ALPHA and -3 <= y < 0:
            yield (Step("alpha-inv-migrate-right", p),
                   w[:p] + (-NXT[-y], -ALPHA) + w[p + 2:])


@dataclass
class _Engine:
    word: Word
    budget: int
    record: bool = False
    steps: list[Step] = field(default_factory=list)
    applied: int = 0
    explored: int = 0

    def apply(self, rule: str, pos: int, arg: int | None = None) -> None:
        step = Step(rule, pos, arg)
        before = self.word
        after = apply_step(before, step)
        self.applied += 1
        if self.applied > self.budget:
            raise StepBudgetExceeded(
                f"step budget {self.budget} exceeded while normalizing; "
                f"this indicates a rewriting bug")
        if _CHECKED:
            verify_step(before, step, after)
        if self.record:
            self.steps.append(step)
        self.word = after

    # -- greedy weight descent ---------------------------------------

    def _reduce_pass(self) -> bool:
        changed = False
        while True:
            w = self.word
            hit = _shortening(w)
            if hit:
                self.apply(hit[0], hit[1])
                changed = True
                continue
            n = len(w)
            if n >= 2:
                x, y = w[-1], w[0]
                wrap = None
                if x == -y:
                    wrap = "cancel"
                elif x == ALPHA and -3 <= y < 0:
                    wrap = "alpha-absorb-right"
                elif -3 <= x < 0 and y == ALPHA:
                    wrap = "alpha-absorb-left"
                elif x == -ALPHA and 0 < y <= 3:
                    wrap = "alpha-inv-absorb-right"
                elif 0 < x <= 3 and y == -ALPHA:
                    wrap = "alpha-inv-absorb-left"
                if wrap:
                    self.apply("rotate", n - 1)
                    self.apply(wrap, 0)
                    changed = True
                    continue
            return changed

    def _sort_pass(self) -> bool:
        changed = False
        p = 0
        while p < len(self.word) - 1:
            x, y = self.word[p], self.word[p + 1]
            if 0 < x <= 3 and -3 <= y < 0:
                if x == -y:
                    self.apply("cancel", p)
                else:
                    self.apply("pos-neg-swap", p)
                changed = True
                p = max(0, p - 1)
            else:
                p += 1
        return changed

    def _extract_pass(self) -> bool:
        changed = False
        p = 0
        while p < len(self.word) - 1:
            x, y = self.word[p], self.word[p + 1]
            if 0 < x <= 3 and 0 < y <= 3 and x == NXT[y]:
                self.apply("delta-extract", p)
                changed = True
                p = max(0, p - 1)
            elif -3 <= x < 0 and -3 <= y < 0 and -y == NXT[-x]:
                self.apply("delta-extract-neg", p)
                changed = True
                p = max(0, p - 1)
            else:
                p += 1
        w = self.word
        n = len(w)
        if n >= 2:
            x, y = w[-1], w[0]
            if 0 < x <= 3 and 0 < y <= 3 and x == NXT[y]:
                self.apply("rotate", n - 1)
                self.apply("delta-extract", 0)
                return True
            if -3 <= x < 0 and -3 <= y < 0 and -y == NXT[-x]:
                self.apply("rotate", n - 1)
                self.apply("delta-extract-neg", 0)
                return True
        return changed

    def _migrate_pass(self) -> bool:
        changed = False
        p = 0
        while p < len(self.word) - 1:
            x, y = self.word[p], self.word[p + 1]
            if 0 < x <= 3 and y == ALPHA:
                self.apply("alpha-migrate-left", p)
                changed = True
                p = max(0, p - 1)
            elif x == -ALPHA and -3 <= y < 0:
                self.apply("alpha-inv-migrate-right", p)
                changed = True
                p += 1
            else:
                p += 1
        return changed

    def _greedy(self) -> None:
        while True:
            changed = self._reduce_pass()
            changed = self._sort_pass() or changed
            changed = self._extract_pass() or changed
            changed = self._migrate_pass() or changed
            if not changed:
                return

    # -- minimal-level closure and canonical selection -----------------

    def _explore(self):
        """BFS the weight level of self.word.

        Returns ("shortened", path) when a weight-reducing move was
        found at some node (path = steps from self.word to that node
        plus the shortening), or ("closed", best) where best is
        (parse, node, path-to-node) for the canonical reading.
        """
        start = self.word
        cap = _EXPLORE_FACTOR * self.budget
        parents: dict[Word, tuple[Word, Step] | None] = {start: None}
        queue = [start]
        head = 0
        best_rank = None
        best: tuple[tuple[int, Word, Word], Word] | None = None
        while head < len(queue):
            cur = queue[head]
            head += 1
            self.explored += 1
            if self.explored > cap:
                raise StepBudgetExceeded(
                    f"exploration cap {cap} exceeded at weight "
                    f"{weight(cur)}; this indicates a rewriting bug")
            hit = _shortening(cur)
            if hit:
                path = self._path_to(parents, cur)
                path.append(Step(hit[0], hit[1]))
                return "shortened", path
            parsed = _parse_shape(cur)
            if parsed is not None:
                k, npart, ppart = parsed
                rank = (-abs(k), npart, ppart)
                if best_rank is None or rank < best_rank:
                    best_rank = rank
                    best = (parsed, cur)
            for mv, nb in _level_neighbors(cur):
                if nb not in parents:
                    parents[nb] = (cur, mv)
                    queue.append(nb)
        if best is None:
            raise StepBudgetExceeded(
                "no canonical shape found at the minimal level; "
                "this indicates a rewriting bug")
        parsed, node = best
        return "closed", (parsed, node, self._path_to(parents, node))

    @staticmethod
    def _path_to(parents, node) -> list[Step]:
        path: list[Step] = []
        while parents[node] is not None:
            node, st = parents[node]
            path.append(st)
        path.reverse()
        return path

    def run(self) -> XuForm:
        while True:
            self._greedy()
            outcome, payload = self._explore()
            if outcome == "shortened":
                for st in payload:
                    self.apply(st.rule, st.pos, st.arg)
                continue
            (k, nsubs, ppart), node, path = payload
            for st in path:
                self.apply(st.rule, st.pos, st.arg)
            # spell out the markers, rightmost first
            if k > 0:
                for i in range(k - 1, -1, -1):
                    self.apply("delta-expand", i, 0)
            elif k < 0:
                base = len(nsubs)
                for i in range(base - k - 1, base - 1, -1):
                    self.apply("delta-expand-neg", i, 0)
            form = XuForm(k, tuple(-x for x in nsubs), ppart)
            form = replace(form,
                           canonical_rotation=_lexmin_rotation(
                               form.expansion()))
            if self.word != form.expansion():
                raise InternalCheckError(
                    "trace endpoint does not match the canonical "
                    "expansion")
            return form


def to_xu_form(w: Word, budget: int | None = None
               ) -> tuple[XuForm, list[Step]]:
    """Canonical form plus a replayable trace from w to its expansion.

    Conjugate inputs yield the identical XuForm.  Raises
    StepBudgetExceeded if the internal guard trips (a bug, never a
    normal outcome).
    """
    w = _check_extended(w)
    if any(abs(x) == ALPHA for x in w):
        raise WordError("to_xu_form expects a plain band word")
    eng = _Engine(w, budget or step_budget(max(len(w), 1)), record=True)
    form = eng.run()
    return form, eng.steps


_FORM_CACHE: dict[Word, XuForm] = {}


def xu_form(w: Word, budget: int | None = None) -> XuForm:
    """Cached canonical form (no trace)."""
    key = orbit_key(_check_extended(w))
    form = _FORM_CACHE.get(key)
    if form is None:
        eng = _Engine(key, budget or step_budget(max(len(key), 1)))
        form = eng.run()
        _FORM_CACHE[key] = form
    return form


def clear_caches() -> None:
    _FORM_CACHE.clear()
