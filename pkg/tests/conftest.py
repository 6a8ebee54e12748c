import random

from hypothesis import settings, strategies as st

from stallings import Alphabet, Word

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

F2 = Alphabet(2)
F3 = Alphabet(3)


def words(alphabet=F2, max_size=8, min_size=0):
    """Hypothesis strategy for reduced words (reduction happens in Word)."""
    letters = st.sampled_from(alphabet.letters())
    return st.lists(letters, min_size=min_size, max_size=max_size).map(lambda xs: Word(alphabet, xs))


def generator_sets(alphabet=F2, max_gens=4, max_len=8):
    return st.lists(words(alphabet, max_len, 1), min_size=1, max_size=max_gens)


def random_word(rng: random.Random, alphabet=F2, max_len=8, min_len=0) -> Word:
    n = rng.randint(min_len, max_len)
    return Word(alphabet, [rng.choice(alphabet.letters()) for _ in range(n)])


def random_gens(rng: random.Random, alphabet=F2, max_gens=4, max_len=8) -> list[Word]:
    return [random_word(rng, alphabet, max_len, 1) for _ in range(rng.randint(1, max_gens))]


def all_words(alphabet, max_len):
    """Every reduced word of length at most ``max_len``, shortest first."""
    out = [alphabet.identity()]
    layer = [()]
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for x in alphabet.letters():
                if w and w[-1] == -x:
                    continue
                nxt.append(w + (x,))
        out += [Word(alphabet, w, _checked=True) for w in nxt]
        layer = nxt
    return out


# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
