import random

import pytest

from gentlekit import algebras
from gentlekit.core import enumerate_path_basis
from gentlekit.homcalc import StringWord, string_violation, word

CRITERIA: dict = {}


def record(number: int, ok: bool, detail: str) -> None:
    CRITERIA[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")


GRADED = {
    "Q-standard": lambda: algebras.kronecker_chain(),
    "Q-nonstandard": lambda: algebras.kronecker_chain({"a1": 1, "a2": 1}),
    "Q'-standard": lambda: algebras.torus_one_point(),
    "Q'-allzero": lambda: algebras.torus_one_point({"a": 0, "b": 0, "c": 0}),
}


@pytest.fixture
def Q():
    return algebras.kronecker_chain()


@pytest.fixture
def Qp():
    return algebras.torus_one_point()


@pytest.fixture
def Qp0():
    return algebras.torus_one_point({"a": 0, "b": 0, "c": 0})


def x_p(q):
    return word(q, "b1 a2")


def random_word(p, rng: random.Random, max_letters: int, max_shift: int = 2) -> StringWord:
    """A random valid homotopy string grown letter by letter."""
    letters = [q for q in enumerate_path_basis(p) if not q.is_trivial]
    v = rng.choice(p.vertices)
    w = StringWord(p, v, (), rng.randint(-max_shift, max_shift))
    for _ in range(rng.randint(0, max_letters)):
        end = w.nodes()[-1][0]
        options = []
        for q in letters:
            for d in (1, -1):
                if (q.start if d > 0 else q.end) == end:
                    nxt = StringWord(p, w.start, w.letters + ((q, d),), w.shift)
                    if string_violation(nxt) is None:
                        options.append(nxt)
        if not options:
            break
        w = rng.choice(options)
    return w


def random_pairs(n: int, seed: int, max_letters: int = 8):
    rng = random.Random(seed)
    names = sorted(GRADED)
    for _ in range(n):
        p = GRADED[rng.choice(names)]()
        yield p, random_word(p, rng, max_letters), random_word(p, rng, max_letters)
