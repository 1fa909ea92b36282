import itertools

import pytest

from braid3.words import Word

LETTERS = (1, 2, 3, -1, -2, -3)


def all_words(max_len: int, letters=LETTERS):
    """Every band word up to max_len, shortest first."""
    for n in range(max_len + 1):
        yield from map(tuple, itertools.product(letters, repeat=n))


def reduced_words(max_len: int, letters=LETTERS):
    """Freely-cyclically-reduced band words up to max_len."""
    yield ()
    word: list[int] = []

    def rec(remaining: int):
        if remaining == 0:
            if len(word) < 2 or word[0] != -word[-1]:
                yield tuple(word)
            return
        for x in letters:
            if word and x == -word[-1]:
                continue
            word.append(x)
            yield from rec(remaining - 1)
            word.pop()

    for length in range(1, max_len + 1):
        yield from rec(length)


@pytest.fixture
def rng():
    import random
    return random.Random(0xB3AD)


def random_word(rng, max_len: int) -> Word:
    return tuple(rng.choice(LETTERS) for _ in range(rng.randint(0, max_len)))


def scramble(rng, w: Word, rounds: int = 12, max_len: int = 18) -> Word:
    """A conjugacy-preserving disguise of w: random inverse-pair
    insertions, relation rewrites, rotations and relabelings.  Unlike
    plain conjugation by a word, this defeats cyclic reduction, so
    canonicalizing the result genuinely exercises the engine."""
    from braid3.words import NXT, PRV, relabel, rotate
    spell = {(NXT[i], i): [(NXT[j], j) for j in (1, 2, 3) if j != i]
             for i in (1, 2, 3)}
    spell.update({(-i, -NXT[i]): [(-j, -NXT[j]) for j in (1, 2, 3) if j != i]
                  for i in (1, 2, 3)})
    for _ in range(rounds):
        choice = rng.randrange(5)
        if choice == 0 and len(w) + 2 <= max_len:
            p = rng.randint(0, len(w))
            g = rng.choice(LETTERS)
            w = w[:p] + (g, -g) + w[p:]
        elif choice == 1 and w:
            w = rotate(w, rng.randrange(len(w)))
        elif choice == 2:
            w = relabel(w, rng.randrange(3))
        else:
            sites = []
            for p in range(len(w) - 1):
                x, y = w[p], w[p + 1]
                if (x, y) in spell:
                    for alt in spell[(x, y)]:
                        sites.append((p, alt))
                elif x > 0 > y:
                    sites.append((p, (-NXT[x], NXT[-y])))
                elif x < 0 < y:
                    sites.append((p, (PRV[-x], -PRV[y])))
            if sites:
                p, alt = rng.choice(sites)
                w = w[:p] + alt + w[p + 2:]
    return w
