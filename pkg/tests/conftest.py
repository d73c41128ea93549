"""Shared helpers for the test suite."""

from itertools import product

from fotensor import Alphabet, build_word_model, parse_formula


def all_words(symbols: str, max_len: int) -> list[str]:
    """Every word of length <= max_len, shortest first, lexicographic in the
    given symbol order."""
    out = []
    for length in range(max_len + 1):
        out.extend("".join(c) for c in product(symbols, repeat=length))
    return out


def word_model(word: str, symbols: str, kind: str):
    return build_word_model(word, Alphabet(symbols), kind)


# Closed formulas paired with their alphabet and the model kinds they can be
# evaluated over. Used for prenex-equivalence and differential properties.
CLOSED_CORPUS = [
    ("exists x. forall y. (b(x) & (b(y) -> x = y))", "ab", ("succ", "prec")),
    (
        "forall x. forall y. ((l(x) & l(y) & prec(x, y)) -> "
        "exists z. (r(z) & prec(x, z) & prec(z, y)))",
        "lra",
        ("prec",),
    ),
    ("exists x. (a(x) | !b(x))", "ab", ("succ", "prec")),
    ("forall x. (a(x) -> exists y. succ(x, y))", "ab", ("succ",)),
    ("!(exists x. forall y. (prec(x, y) | x = y))", "ab", ("prec",)),
    ("(forall y. y = y) & (exists y. !b(y))", "ab", ("succ", "prec")),
    ("exists x. exists y. (succ(x, y) & !x = y)", "ab", ("succ",)),
    ("forall x. (b(x) -> !(forall y. prec(y, x)))", "ab", ("prec",)),
    ("exists x. exists x. a(x)", "ab", ("succ", "prec")),
    ("forall x. (a(x) | b(x))", "ab", ("succ", "prec")),
]


def corpus_formulas():
    for text, symbols, kinds in CLOSED_CORPUS:
        yield parse_formula(text), symbols, kinds
