"""Shared builders for the test suite: engines under test and seeded
random words/elements."""

from growthlab.engines import (
    AbelianEngine,
    BS1Engine,
    FreeEngine,
    KleinEngine,
    SemidirectEngine,
)
from growthlab.words import Word

TORUS_AUTO = ({"x": "y", "y": "x y"}, {"x": "y x^-1", "y": "x"})
ROT4_AUTO = ({"e1": "e2", "e2": "e1^-1"}, {"e1": "e2^-1", "e2": "e1"})
FIB_AUTO = ({"e1": "e1^2 e2", "e2": "e1 e2"},
            {"e1": "e1 e2^-1", "e2": "e1^-1 e2^2"})


def torus_engine():
    return SemidirectEngine(FreeEngine(2), *TORUS_AUTO)


def rot4_engine():
    return SemidirectEngine(AbelianEngine(2), *ROT4_AUTO)


def fib_engine():
    return SemidirectEngine(AbelianEngine(2), *FIB_AUTO)


def family_engines():
    """One engine per family plus split-extension variants."""
    return [
        FreeEngine(2),
        FreeEngine(3),
        AbelianEngine(1),
        AbelianEngine(3),
        KleinEngine(),
        BS1Engine(2),
        BS1Engine(-3),
        torus_engine(),
        rot4_engine(),
        fib_engine(),
    ]


def random_word(rng, names, max_len=5):
    pairs = []
    for _ in range(rng.randrange(max_len + 1)):
        name = rng.choice(names)
        exp = rng.choice([-3, -2, -1, 1, 2, 3])
        pairs.append((name, exp))
    return Word.of(pairs)


def random_element(rng, engine, max_len=5):
    return engine.evaluate_word(random_word(rng, list(engine.gen_names), max_len))


def insert_trivial_pair(rng, word, names):
    """The same group element spelled with a g g^-1 stutter inserted."""
    pairs = list(word.letters)
    name = rng.choice(names)
    exp = rng.choice([-2, -1, 1, 2])
    pos = rng.randrange(len(pairs) + 1)
    noisy = pairs[:pos] + [(name, exp), (name, -exp)] + pairs[pos:]
    return Word.of(noisy)
