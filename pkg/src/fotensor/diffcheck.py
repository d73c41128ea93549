"""Randomized differential testing: compiled tensor plans vs the oracle.

Each case draws an alphabet, a string model kind, a word and a random
closed formula over matching predicates, then evaluates the formula along
both paths. Any disagreement (or evaluation failure, which includes a
violated 0/1-closure assertion) is reported with the per-case seed so it
can be replayed. Generation is fully deterministic in the base seed.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass

from .formulas import (
    Equal,
    Exists,
    Forall,
    Formula,
    Implies,
    Not,
    Variable,
    and_,
    atom,
    or_,
)
from .models import Alphabet, build_word_model
from .oracle import tarski_eval
from .tensors import compile_formula, embed_model, eval_tensor

_VAR_POOL = ("x", "y", "z")

# Node choice weights: connective / atom / quantifier / equality.
_WEIGHTS = {"connective": 40, "atom": 30, "quantifier": 20, "equality": 10}


def random_word(rng: random.Random, alphabet: Alphabet, max_len: int = 5) -> str:
    return "".join(rng.choice(alphabet.symbols) for _ in range(rng.randint(0, max_len)))


def random_formula(
    rng: random.Random,
    labels: tuple[str, ...],
    order_relation: str,
    max_depth: int = 3,
    max_vars: int = 3,
    scope: tuple[str, ...] = (),
) -> Formula:
    """A random formula over the given unary labels and binary order
    relation; closed whenever the initial scope is empty. At most max_vars
    quantifiers appear in total, bounding the prenex prefix."""
    formula, _ = _gen(rng, list(scope), labels, order_relation, max_depth, max_vars)
    return formula


def _gen(rng, scope, labels, order, depth, budget) -> tuple[Formula, int]:
    """Returns (formula, remaining quantifier budget).

    A subformula over an empty scope must open with a quantifier before it
    can place an atom, so it needs depth >= 1 and budget >= 1; connectives
    reserve accordingly for their right child."""
    kinds = []
    weights = []
    if depth >= 1 and (scope or (depth >= 2 and budget >= 2)):
        kinds.append("connective")
        weights.append(_WEIGHTS["connective"])
    if depth >= 1 and budget >= 1:
        kinds.append("quantifier")
        weights.append(_WEIGHTS["quantifier"])
    if scope:
        kinds.append("atom")
        weights.append(_WEIGHTS["atom"])
        kinds.append("equality")
        weights.append(_WEIGHTS["equality"])
    if not kinds:
        raise AssertionError(f"generator stuck: depth={depth} scope={scope} budget={budget}")
    kind = rng.choices(kinds, weights)[0]

    if kind == "atom":
        if rng.random() < 0.5:
            return atom(rng.choice(labels), rng.choice(scope)), budget
        return atom(order, rng.choice(scope), rng.choice(scope)), budget
    if kind == "equality":
        return Equal(Variable(rng.choice(scope)), Variable(rng.choice(scope))), budget
    if kind == "quantifier":
        var = rng.choice(_VAR_POOL)
        ctor = Exists if rng.random() < 0.5 else Forall
        inner_scope = scope if var in scope else scope + [var]
        body, rest = _gen(rng, list(inner_scope), labels, order, depth - 1, budget - 1)
        return ctor(Variable(var), body), rest
    op = rng.choice(("not", "and", "or", "implies"))
    if op == "not":
        body, rest = _gen(rng, scope, labels, order, depth - 1, budget)
        return Not(body), rest
    reserve = 0 if scope else 1
    left, rest = _gen(rng, scope, labels, order, depth - 1, budget - reserve)
    right, rest = _gen(rng, scope, labels, order, depth - 1, rest + reserve)
    if op == "and":
        return and_([left, right]), rest
    if op == "or":
        return or_([left, right]), rest
    return Implies(left, right), rest


@dataclass(frozen=True)
class CheckCase:
    index: int
    seed: int
    kind: str
    alphabet: str
    word: str
    formula: Formula


@dataclass(frozen=True)
class CheckFailure:
    case: CheckCase
    tensor_value: int | None
    oracle_value: int | None
    error: str | None

    def describe(self) -> str:
        c = self.case
        what = (
            f"error: {self.error}"
            if self.error
            else f"tensor={self.tensor_value} oracle={self.oracle_value}"
        )
        return (
            f"case {c.index} (seed {c.seed}): MISMATCH {what}\n"
            f"  kind={c.kind} alphabet={c.alphabet} word={c.word!r}\n"
            f"  formula: {c.formula}"
        )


@dataclass(frozen=True)
class CheckReport:
    total: int
    seed: int
    failures: tuple[CheckFailure, ...]

    @property
    def agreements(self) -> int:
        return self.total - len(self.failures)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_text(self) -> str:
        lines = [f.describe() for f in self.failures]
        lines.append(f"{self.agreements}/{self.total} agree (seed {self.seed})")
        return "\n".join(lines)

    def to_json(self) -> str:
        doc = {
            "command": "check",
            "seed": self.seed,
            "total": self.total,
            "agreements": self.agreements,
            "mismatches": [
                {
                    "index": f.case.index,
                    "seed": f.case.seed,
                    "kind": f.case.kind,
                    "alphabet": f.case.alphabet,
                    "word": f.case.word,
                    "formula": str(f.case.formula),
                    "tensor": f.tensor_value,
                    "oracle": f.oracle_value,
                    "error": f.error,
                }
                for f in self.failures
            ],
        }
        return json.dumps(doc, indent=2)


def case_from_seed(index: int, case_seed: int, max_word_len: int, max_depth: int) -> CheckCase:
    rng = random.Random(case_seed)
    alphabet_text = "abc"[: rng.randint(1, 3)]
    kind = rng.choice(("succ", "prec"))
    word = random_word(rng, Alphabet(alphabet_text), max_word_len)
    formula = random_formula(rng, tuple(alphabet_text), kind, max_depth=max_depth)
    return CheckCase(index, case_seed, kind, alphabet_text, word, formula)


def compare_paths(formula: Formula, word: str, kind: str, alphabet: Alphabet) -> tuple[int, int]:
    model = build_word_model(word, alphabet, kind)
    tensor_value = eval_tensor(compile_formula(formula), embed_model(model))
    oracle_value = int(tarski_eval(formula, model))
    return tensor_value, oracle_value


def run_differential_check(
    count: int,
    seed: int = 0,
    max_word_len: int = 5,
    max_depth: int = 3,
) -> CheckReport:
    if count < 1:
        raise ValueError("count must be at least 1")
    failures = []
    for index in range(count):
        case_seed = (seed * 1_000_003 + index) & 0x7FFFFFFF
        case = case_from_seed(index, case_seed, max_word_len, max_depth)
        try:
            tensor_value, oracle_value = compare_paths(
                case.formula, case.word, case.kind, Alphabet(case.alphabet)
            )
        except Exception as exc:  # report, never hide: a crash is a failed case
            failures.append(CheckFailure(case, None, None, f"{type(exc).__name__}: {exc}"))
            continue
        if tensor_value != oracle_value:
            failures.append(CheckFailure(case, tensor_value, oracle_value, None))
    return CheckReport(count, seed, tuple(failures))
