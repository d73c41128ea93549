import numpy as np
import pytest

from conftest import all_words, word_model
from fotensor import (
    UnboundVariableError,
    UnknownPredicateError,
    compile_formula,
    dump_expr,
    embed_model,
    eval_tensor,
    min1,
    negate_relation,
    parse_formula,
    tarski_eval,
    transpose_encode,
)
from fotensor.tensors import (
    DualSumOverDomain,
    Min1SumOverDomain,
    Product,
    RelApply,
    TraceEvent,
)

ONE_B = parse_formula("exists x. forall y. (b(x) & (b(y) -> x = y))")
DISS = parse_formula(
    "forall x. forall y. ((l(x) & l(y) & prec(x, y)) -> "
    "exists z. (r(z) & prec(x, z) & prec(z, y)))"
)


def _embedded(word, symbols, kind):
    return embed_model(word_model(word, symbols, kind))


def test_embed_abba_successor():
    em = _embedded("abba", "abc", "succ")
    assert em.basis_size == 4
    assert em.relation_tensors["b"].tolist() == [0, 1, 1, 0]
    expected_succ = np.zeros((4, 4), dtype=int)
    for i, j in [(1, 2), (2, 3), (3, 4)]:
        expected_succ[i - 1, j - 1] = 1
    assert np.array_equal(em.relation_tensors["succ"], expected_succ)
    assert np.array_equal(em.identity, np.eye(4, dtype=int))


def test_embed_empty_structure():
    em = _embedded("", "ab", "succ")
    assert em.basis_size == 0
    assert em.relation_tensors["a"].shape == (0,)
    assert em.relation_tensors["succ"].shape == (0, 0)


def test_embed_abba_precedence_upper_triangular():
    em = _embedded("abba", "abc", "prec")
    prec = em.relation_tensors["prec"]
    assert prec.sum() == 6
    assert np.array_equal(prec, np.triu(np.ones((4, 4), dtype=int), k=1))


def test_relation_contraction_matches_source_truth():
    # Contracting a relation tensor with one-hot vectors reproduces exactly
    # the 0/1 relation of the source structure.
    m = word_model("abba", "abc", "succ")
    em = embed_model(m)
    for i in range(1, 5):
        assert int(em.relation_tensors["b"] @ em.basis(i)) == (i in m.unary_positions("b"))
        for j in range(1, 5):
            value = int(em.basis(i) @ em.relation_tensors["succ"] @ em.basis(j))
            assert value == ((i, j) in m.binary_pairs("succ"))


def test_negate_relation_examples():
    b = np.array([0, 1, 1, 0])
    assert negate_relation(b).tolist() == [1, 0, 0, 1]
    zero = np.zeros((2, 2), dtype=int)
    assert negate_relation(zero).tolist() == [[1, 1], [1, 1]]


def test_negate_relation_involution():
    rng = np.random.default_rng(7)
    for _ in range(20):
        r = rng.integers(0, 2, size=(4, 4))
        assert np.array_equal(negate_relation(negate_relation(r)), r)


def test_transpose_encode_examples():
    em = _embedded("abba", "abc", "succ")
    t = transpose_encode(em.relation_tensors["succ"])
    pairs = {(i + 1, j + 1) for i, j in zip(*np.nonzero(t))}
    assert pairs == {(2, 1), (3, 2), (4, 3)}
    sym = np.array([[1, 1], [1, 0]])
    assert np.array_equal(transpose_encode(sym), sym)


def test_transpose_swaps_arguments_exhaustively():
    rng = np.random.default_rng(3)
    for n in range(1, 5):
        r = rng.integers(0, 2, size=(n, n))
        eye = np.eye(n, dtype=int)
        for i in range(n):
            for j in range(n):
                assert eye[j] @ r @ eye[i] == eye[i] @ transpose_encode(r) @ eye[j]


def test_min1():
    assert min1(0) == 0
    assert min1(1) == 1
    assert min1(3) == 1
    assert min1(np.array([0, 1, 5])).tolist() == [0, 1, 1]
    with pytest.raises(AssertionError):
        min1(-1)


def test_compile_one_b_plan_structure():
    plan = compile_formula(ONE_B)
    assert isinstance(plan, Min1SumOverDomain)
    assert isinstance(plan.body, DualSumOverDomain)
    assert isinstance(plan.body.body, Product)


def test_compile_dissimilation_plan_structure():
    # forall-dual x (forall-dual y (exists-sum z (min1sum of a complemented
    # product and a product))): the negated antecedent compiles as a
    # complement over the whole conjunction, not literal by literal.
    from fotensor.tensors import Complement, Min1Sum

    plan = compile_formula(DISS)
    assert isinstance(plan, DualSumOverDomain)
    assert isinstance(plan.body, DualSumOverDomain)
    assert isinstance(plan.body.body, Min1SumOverDomain)
    matrix = plan.body.body.body
    assert isinstance(matrix, Min1Sum)
    negated, witness = matrix.terms
    assert isinstance(negated, Complement) and isinstance(negated.body, Product)
    assert isinstance(witness, Product)


def test_compile_open_atom_is_a_leaf():
    plan = compile_formula(parse_formula("b(x)"))
    assert plan == RelApply("b", (parse_formula("b(x)").terms[0],))


def test_negative_literal_compiles_to_complement_tensor():
    plan = compile_formula(parse_formula("!b(x)"))
    assert plan == RelApply("b", plan.terms, negated=True)
    em = _embedded("ab", "ab", "succ")
    assert eval_tensor(plan, em, {"x": 1}) == 1
    assert eval_tensor(plan, em, {"x": 2}) == 0


def test_one_b_worked_example_values():
    plan = compile_formula(ONE_B)
    assert eval_tensor(plan, _embedded("abba", "abc", "succ")) == 0
    assert eval_tensor(plan, _embedded("aba", "ab", "succ")) == 1
    assert eval_tensor(plan, _embedded("b", "ab", "succ")) == 1
    assert eval_tensor(plan, _embedded("", "ab", "succ")) == 0


def test_exists_b_expansion():
    # min1(0 + 1 + 1 + 0) over the b-vector of abba.
    plan = compile_formula(parse_formula("exists x. b(x)"))
    trace: list[TraceEvent] = []
    value = eval_tensor(plan, _embedded("abba", "abc", "succ"), trace=trace)
    assert value == 1
    assert trace == [TraceEvent("exists-sum", "x", (), 2)]


def test_empty_domain_quantifiers():
    em = _embedded("", "ab", "succ")
    assert eval_tensor(compile_formula(parse_formula("exists x. a(x)")), em) == 0
    assert eval_tensor(compile_formula(parse_formula("forall x. a(x)")), em) == 1


def test_eval_requires_bindings():
    plan = compile_formula(parse_formula("b(x)"))
    with pytest.raises(UnboundVariableError):
        eval_tensor(plan, _embedded("ab", "ab", "succ"))


def test_eval_unknown_predicate():
    plan = compile_formula(parse_formula("exists x. q(x)"))
    with pytest.raises(UnknownPredicateError):
        eval_tensor(plan, _embedded("ab", "ab", "succ"))


def test_equality_via_identity_matrix():
    plan = compile_formula(parse_formula("x = y"))
    em = _embedded("abb", "ab", "succ")
    assert eval_tensor(plan, em, {"x": 2, "y": 2}) == 1
    assert eval_tensor(plan, em, {"x": 1, "y": 2}) == 0


def test_values_are_exactly_zero_or_one():
    # Several disjuncts true at once still clamps to 1.
    plan = compile_formula(parse_formula("exists x. (b(x) | b(x) | b(x))"))
    assert eval_tensor(plan, _embedded("bbbb", "ab", "succ")) == 1


def test_quantifier_duality_at_evaluation_level():
    for inner in ["b(x)", "b(x) | a(x)", "!a(x)"]:
        f_all = parse_formula(f"forall x. ({inner})")
        f_dual = parse_formula(f"!(exists x. !({inner}))")
        for word in all_words("ab", 4):
            em = _embedded(word, "ab", "succ")
            assert eval_tensor(compile_formula(f_all), em) == eval_tensor(
                compile_formula(f_dual), em
            ), (inner, word)


def test_de_morgan_at_evaluation_level():
    f = parse_formula("!((exists x. a(x)) & (exists x. b(x)))")
    g = parse_formula("!(exists x. a(x)) | !(exists x. b(x))")
    for word in all_words("ab", 4):
        em = _embedded(word, "ab", "succ")
        va, vb = eval_tensor(compile_formula(f), em), eval_tensor(compile_formula(g), em)
        assert va == vb and va in (0, 1), word


def test_double_complement():
    f = parse_formula("!!(exists x. b(x))")
    g = parse_formula("exists x. b(x)")
    for word in all_words("ab", 4):
        em = _embedded(word, "ab", "succ")
        assert eval_tensor(compile_formula(f), em) == eval_tensor(compile_formula(g), em)


def test_oracle_equivalence_on_corpus():
    from conftest import corpus_formulas

    for formula, symbols, kinds in corpus_formulas():
        plan = compile_formula(formula)
        for kind in kinds:
            for word in all_words(symbols[:2], 5):
                m = word_model(word, symbols, kind)
                assert eval_tensor(plan, embed_model(m)) == int(tarski_eval(formula, m)), (
                    str(formula),
                    word,
                    kind,
                )


def test_dump_format_and_determinism():
    plan = compile_formula(ONE_B)
    text = dump_expr(plan)
    assert text == dump_expr(compile_formula(ONE_B))
    assert text.splitlines()[0] == "(exists-sum x"
    assert "(forall-dual y" in text
    assert "(rel b x)" in text
    assert "(compl" in text
    assert "(eq x y)" in text


def test_trace_reports_partial_sums():
    plan = compile_formula(ONE_B)
    trace: list[TraceEvent] = []
    eval_tensor(plan, _embedded("abba", "abc", "succ"), trace=trace)
    # One forall event per candidate x, then the closing exists event.
    tags = [t.tag for t in trace]
    assert tags.count("forall-dual") == 4
    assert tags[-1] == "exists-sum"
    assert trace[-1].partial_sum == 0
