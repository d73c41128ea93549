import random

from conftest import all_words, word_model
from fotensor import compile_formula, embed_model, eval_tensor, optimize, parse_formula
from fotensor.diffcheck import random_formula
from fotensor.tensors import (
    BasisVec,
    Complement,
    ComplementVec,
    HadamardVec,
    MatVec,
    Min1Dot,
    OnesVec,
    RelApply,
    RelMat,
    RelVec,
    Variable,
)


def _assert_equivalent(plan, optimized, words, symbols, kind, assignment=None):
    for word in words:
        em = embed_model(word_model(word, symbols, kind))
        if assignment and any(v > len(word) for v in assignment.values()):
            continue
        assert eval_tensor(optimized, em, assignment) == eval_tensor(plan, em, assignment), word


def test_exists_unary_becomes_inner_product():
    plan = compile_formula(parse_formula("exists x. b(x)"))
    optimized = optimize(plan)
    assert optimized == Min1Dot(OnesVec(), RelVec("b"))
    _assert_equivalent(plan, optimized, all_words("ab", 6), "ab", "succ")


def test_unmatched_expression_unchanged():
    plan = compile_formula(parse_formula("b(x)"))
    assert optimize(plan) == plan
    assert isinstance(optimize(plan), RelApply)


def test_exists_pair_becomes_bilinear_form():
    plan = compile_formula(parse_formula("exists x. exists y. (b(x) & succ(x, y))"))
    optimized = optimize(plan)
    assert optimized == Min1Dot(RelVec("b"), MatVec(RelMat("succ"), OnesVec()))
    rng = random.Random(11)
    words = ["".join(rng.choice("ab") for _ in range(rng.randint(0, 5))) for _ in range(100)]
    _assert_equivalent(plan, optimized, words, "ab", "succ")


def test_negated_unary_literal():
    plan = compile_formula(parse_formula("exists x. !b(x)"))
    optimized = optimize(plan)
    assert optimized == Min1Dot(OnesVec(), RelVec("b", negated=True))
    _assert_equivalent(plan, optimized, all_words("ab", 5), "ab", "succ")


def test_disjunctive_body_vectorizes():
    plan = compile_formula(parse_formula("exists x. (a(x) | b(x))"))
    optimized = optimize(plan)
    assert isinstance(optimized, Min1Dot)
    _assert_equivalent(plan, optimized, all_words("ab", 5), "ab", "succ")


def test_open_body_uses_basis_vector():
    plan = compile_formula(parse_formula("exists x. (succ(y, x) & b(x))"))
    optimized = optimize(plan)
    assert isinstance(optimized, Min1Dot)
    assert Variable("y") in _collect_basis_vars(optimized)
    for word in all_words("ab", 5):
        if not word:
            continue
        em = embed_model(word_model(word, "ab", "succ"))
        for y in range(1, len(word) + 1):
            a = {"y": y}
            assert eval_tensor(optimized, em, a) == eval_tensor(plan, em, a), (word, y)


def _collect_basis_vars(e):
    out = set()

    def walk(node):
        if isinstance(node, BasisVec):
            out.add(node.var)
        for attr in ("left", "right", "body", "vec", "mat", "scalar"):
            child = getattr(node, attr, None)
            if child is not None and not isinstance(child, (str, Variable)):
                walk(child)
        for attr in ("items", "factors", "terms"):
            children = getattr(node, attr, None)
            if isinstance(children, tuple):
                for child in children:
                    if not isinstance(child, (str, Variable)):
                        walk(child)

    walk(e)
    return out


def test_transposed_argument_order():
    plan = compile_formula(parse_formula("exists x. exists y. succ(y, x)"))
    optimized = optimize(plan)
    assert isinstance(optimized, Min1Dot)
    _assert_equivalent(plan, optimized, all_words("ab", 5), "ab", "succ")


def test_equality_cross_literal_uses_identity():
    plan = compile_formula(parse_formula("exists x. exists y. (b(x) & x = y & a(y))"))
    optimized = optimize(plan)
    assert isinstance(optimized, Min1Dot)
    _assert_equivalent(plan, optimized, all_words("ab", 5), "ab", "succ")


def test_reflexive_binary_atom_uses_diagonal():
    plan = compile_formula(parse_formula("exists x. prec(x, x)"))
    optimized = optimize(plan)
    assert isinstance(optimized, Min1Dot)
    _assert_equivalent(plan, optimized, all_words("ab", 5), "ab", "prec")


def test_forall_folds_through_dual():
    plan = compile_formula(parse_formula("forall x. b(x)"))
    optimized = optimize(plan)
    assert isinstance(optimized, Complement)
    assert isinstance(optimized.body, Min1Dot)
    assert isinstance(optimized.body.right, ComplementVec)
    _assert_equivalent(plan, optimized, all_words("ab", 5), "ab", "succ")


def test_nested_quantifier_keeps_outer_iteration():
    # The inner witness sum folds; the universal pair stays iterated.
    plan = compile_formula(
        parse_formula(
            "forall x. forall y. ((l(x) & l(y) & prec(x, y)) -> "
            "exists z. (r(z) & prec(x, z) & prec(z, y)))"
        )
    )
    optimized = optimize(plan)
    assert optimized != plan
    assert not isinstance(optimized, Min1Dot)
    _assert_equivalent(plan, optimized, all_words("lra", 4), "lra", "prec")


def test_hadamard_of_unary_factors():
    plan = compile_formula(parse_formula("exists x. (a(x) & b(x))"))
    optimized = optimize(plan)
    assert optimized == Min1Dot(OnesVec(), HadamardVec((RelVec("a"), RelVec("b"))))
    _assert_equivalent(plan, optimized, all_words("ab", 5), "ab", "succ")


def test_scalar_factor_pulled_out():
    plan = compile_formula(parse_formula("exists y. ((exists x. a(x)) & b(y))"))
    optimized = optimize(plan)
    _assert_equivalent(plan, optimized, all_words("ab", 5), "ab", "succ")


def test_random_plans_preserve_evaluation():
    # 100 random compiled plans; optimized evaluation must agree everywhere.
    rng = random.Random(2024)
    checked = 0
    for _ in range(100):
        symbols = "abc"[: rng.randint(1, 3)]
        kind = rng.choice(("succ", "prec"))
        formula = random_formula(rng, tuple(symbols), kind)
        plan = compile_formula(formula)
        optimized = optimize(plan)
        words = {"".join(rng.choice(symbols) for _ in range(rng.randint(0, 5))) for _ in range(12)}
        words.add("")
        for word in words:
            em = embed_model(word_model(word, symbols, kind))
            assert eval_tensor(optimized, em) == eval_tensor(plan, em), (str(formula), word)
        checked += 1
    assert checked == 100


def test_optimized_plan_dump_renders():
    from fotensor import dump_expr

    optimized = optimize(compile_formula(parse_formula("exists x. b(x)")))
    assert dump_expr(optimized).splitlines()[0] == "(min1dot"
