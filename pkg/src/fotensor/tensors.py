"""Tensor embedding of finite structures and compiled formula evaluation.

Domain elements become one-hot basis vectors; a k-ary relation becomes an
order-k 0/1 tensor whose contraction with basis vectors yields the atom's
truth value (for binary relations, e_i . R e_j). Compiled formulas evaluate
by exact integer arithmetic over these tensors:

    negative literal      contraction with the complement tensor 1...1 - R
    negation              1 - x
    conjunction           product of the conjuncts
    disjunction           min1(sum of the disjuncts)
    existential           min1(sum over the basis substitutions)
    universal             via the dual: 1 - min1(sum of 1 - body)

where min1(x) = min(x, 1) componentwise. Every node value of a well-formed
plan is exactly 0 or 1; this is asserted during evaluation. Evaluation on
an empty domain gives 0 for existentials and 1 for universals.

Plans are model-independent: the quantifier nodes carry the domain
iteration symbolically and bind its size only at evaluation time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    ArityMismatchError,
    AssignmentError,
    UnboundVariableError,
    UnknownPredicateError,
)
from .formulas import And, Atom, Equal, Formula, Not, Or, Variable
from .models import Assignment, StructureModel, normalize_assignment
from .prenex import EXISTS, to_prenex

_DT = np.int64


def min1(x):
    """min(x, 1), componentwise on arrays. Inputs must be nonnegative."""
    if isinstance(x, np.ndarray):
        assert (x >= 0).all(), "min1 requires nonnegative input"
        return np.minimum(x, 1)
    assert x >= 0, "min1 requires nonnegative input"
    return min(int(x), 1)


def negate_relation(t: np.ndarray) -> np.ndarray:
    """Complement tensor 1...1 - t, encoding the negated relation."""
    assert np.isin(t, (0, 1)).all() if t.size else True
    return np.ones_like(t) - t


def transpose_encode(r: np.ndarray) -> np.ndarray:
    """Encode the argument-swapped relation: r(y, x) is computed by the
    transpose, since e_j . R e_i = e_i . R^T e_j."""
    return r.T


class EmbeddedModel:
    """A structure mapped into R^N: one-hot basis plus relation tensors."""

    def __init__(self, basis_size: int, relation_tensors: dict[str, np.ndarray]):
        self.basis_size = basis_size
        self.relation_tensors = dict(relation_tensors)
        self.identity = np.eye(basis_size, dtype=_DT)
        self.identity.flags.writeable = False
        self._complements: dict[str | None, np.ndarray] = {}

    def basis(self, i: int) -> np.ndarray:
        """One-hot vector for domain element i (1-based)."""
        if not 1 <= i <= self.basis_size:
            raise AssignmentError(
                f"index {i} outside domain of size {self.basis_size}"
            )
        # Rows of the identity are exactly the one-hot basis; they are
        # read-only, so sharing them is safe.
        return self.identity[i - 1]

    def tensor(self, name: str, arity: int) -> np.ndarray:
        try:
            t = self.relation_tensors[name]
        except KeyError:
            raise UnknownPredicateError(f"no relation tensor {name!r} in the model") from None
        if t.ndim != arity:
            raise ArityMismatchError(
                f"relation {name!r} has arity {t.ndim}, atom uses {arity}"
            )
        return t

    def complement_tensor(self, name: str | None, arity: int = 2) -> np.ndarray:
        """Memoized complement 1...1 - R; None names the identity matrix."""
        if name not in self._complements:
            base = self.identity if name is None else self.tensor(name, arity)
            neg = negate_relation(base)
            neg.flags.writeable = False
            self._complements[name] = neg
        return self._complements[name]


def embed_model(m: StructureModel) -> EmbeddedModel:
    """Isomorphic image of a structure in R^N (N = domain size)."""
    return EmbeddedModel(m.domain_size, {**m.unary, **m.binary})


# --- evaluation plans ---------------------------------------------------

class TensorExpr:
    """Scalar-valued node of a compiled evaluation plan."""


class VecExpr:
    """Length-N vector-valued node (used by optimized plans)."""


class MatExpr:
    """NxN matrix-valued node (used by optimized plans)."""


@dataclass(frozen=True)
class RelApply(TensorExpr):
    predicate: str
    terms: tuple[Variable, ...]
    negated: bool = False


@dataclass(frozen=True)
class EqApply(TensorExpr):
    left: Variable
    right: Variable
    negated: bool = False


@dataclass(frozen=True)
class Complement(TensorExpr):
    body: TensorExpr


@dataclass(frozen=True)
class Product(TensorExpr):
    factors: tuple[TensorExpr, ...]


@dataclass(frozen=True)
class Min1Sum(TensorExpr):
    terms: tuple[TensorExpr, ...]


@dataclass(frozen=True)
class Min1SumOverDomain(TensorExpr):
    var: Variable
    body: TensorExpr


@dataclass(frozen=True)
class DualSumOverDomain(TensorExpr):
    var: Variable
    body: TensorExpr


@dataclass(frozen=True)
class Min1Dot(TensorExpr):
    left: VecExpr
    right: VecExpr


@dataclass(frozen=True)
class OnesVec(VecExpr):
    pass


@dataclass(frozen=True)
class BasisVec(VecExpr):
    var: Variable


@dataclass(frozen=True)
class RelVec(VecExpr):
    predicate: str
    negated: bool = False


@dataclass(frozen=True)
class DiagVec(VecExpr):
    mat: MatExpr


@dataclass(frozen=True)
class MatVec(VecExpr):
    mat: MatExpr
    vec: VecExpr


@dataclass(frozen=True)
class HadamardVec(VecExpr):
    items: tuple[VecExpr, ...]


@dataclass(frozen=True)
class VecAdd(VecExpr):
    items: tuple[VecExpr, ...]


@dataclass(frozen=True)
class Min1Vec(VecExpr):
    body: VecExpr


@dataclass(frozen=True)
class ComplementVec(VecExpr):
    body: VecExpr


@dataclass(frozen=True)
class ScaleVec(VecExpr):
    scalar: TensorExpr
    body: VecExpr


@dataclass(frozen=True)
class RelMat(MatExpr):
    predicate: str
    negated: bool = False
    transposed: bool = False


@dataclass(frozen=True)
class IdentityMat(MatExpr):
    negated: bool = False


@dataclass(frozen=True)
class OnesMat(MatExpr):
    pass


# --- compilation --------------------------------------------------------

def compile_formula(f: Formula) -> TensorExpr:
    """Compile a formula (sugared input is fine) into an evaluation plan.

    The formula is first brought into prenex normal form; the prefix becomes
    nested sum-over-domain nodes and the NNF matrix maps literal-for-literal
    onto tensor operations. Compilation never consults a model."""
    pf = to_prenex(f)
    expr = _compile_matrix(pf.matrix)
    for quant, var in reversed(pf.prefix):
        node = Min1SumOverDomain if quant == EXISTS else DualSumOverDomain
        expr = node(var, expr)
    return expr


def _compile_matrix(f: Formula) -> TensorExpr:
    if isinstance(f, Atom):
        return RelApply(f.predicate.name, f.terms)
    if isinstance(f, Equal):
        return EqApply(f.left, f.right)
    if isinstance(f, Not):
        inner = f.body
        if isinstance(inner, Atom):
            return RelApply(inner.predicate.name, inner.terms, negated=True)
        if isinstance(inner, Equal):
            return EqApply(inner.left, inner.right, negated=True)
        return Complement(_compile_matrix(inner))
    if isinstance(f, And):
        return Product(tuple(_compile_matrix(g) for g in f.items))
    if isinstance(f, Or):
        return Min1Sum(tuple(_compile_matrix(g) for g in f.items))
    raise TypeError(f"not a quantifier-free NNF matrix: {f!r}")


# --- evaluation ----------------------------------------------------------

class TraceEvent(NamedTuple):
    tag: str
    variable: str
    bindings: tuple[tuple[str, int], ...]
    partial_sum: int


def eval_tensor(
    e: TensorExpr,
    m: EmbeddedModel,
    a: Assignment | None = None,
    trace: list[TraceEvent] | None = None,
) -> int:
    """Evaluate a plan over an embedded model; returns exactly 0 or 1.

    The assignment must bind every free variable of the plan (1-based
    indices). When a trace list is supplied, every quantifier node appends
    its pre-clamp partial sum."""
    env = normalize_assignment(a)
    return _eval(e, m, env, trace)


def _eval(e, m, env, trace) -> int:
    if isinstance(e, RelApply):
        arity = len(e.terms)
        t = m.complement_tensor(e.predicate, arity) if e.negated else m.tensor(e.predicate, arity)
        vs = [m.basis(_index(env, v)) for v in e.terms]
        if len(vs) == 1:
            value = int(t @ vs[0])
        else:
            value = int(vs[0] @ t @ vs[1])
        assert value in (0, 1)
        return value
    if isinstance(e, EqApply):
        t = m.complement_tensor(None) if e.negated else m.identity
        value = int(m.basis(_index(env, e.left)) @ t @ m.basis(_index(env, e.right)))
        assert value in (0, 1)
        return value
    if isinstance(e, Complement):
        return 1 - _eval(e.body, m, env, trace)
    if isinstance(e, Product):
        value = math.prod(_eval(g, m, env, trace) for g in e.factors)
        assert value in (0, 1)
        return value
    if isinstance(e, Min1Sum):
        value = min1(sum(_eval(g, m, env, trace) for g in e.terms))
        assert value in (0, 1)
        return value
    if isinstance(e, Min1SumOverDomain):
        total = sum(
            _eval_bound(e.body, m, env, e.var.name, i, trace)
            for i in range(1, m.basis_size + 1)
        )
        _trace(trace, "exists-sum", e.var.name, env, total)
        return min1(total)
    if isinstance(e, DualSumOverDomain):
        total = sum(
            1 - _eval_bound(e.body, m, env, e.var.name, i, trace)
            for i in range(1, m.basis_size + 1)
        )
        _trace(trace, "forall-dual", e.var.name, env, total)
        return 1 - min1(total)
    if isinstance(e, Min1Dot):
        value = min1(int(_eval_vec(e.left, m, env, trace) @ _eval_vec(e.right, m, env, trace)))
        assert value in (0, 1)
        return value
    raise TypeError(f"not a scalar plan node: {e!r}")


def _eval_bound(body, m, env, name, i, trace):
    saved = env.get(name)
    env[name] = i
    try:
        return _eval(body, m, env, trace)
    finally:
        if saved is None:
            env.pop(name, None)
        else:
            env[name] = saved


def _index(env, var: Variable) -> int:
    try:
        return env[var.name]
    except KeyError:
        raise UnboundVariableError(f"variable {var.name!r} is not bound") from None


def _trace(trace, tag, variable, env, total):
    if trace is not None:
        trace.append(TraceEvent(tag, variable, tuple(sorted(env.items())), int(total)))


def _eval_vec(e, m, env, trace) -> np.ndarray:
    if isinstance(e, OnesVec):
        return np.ones(m.basis_size, dtype=_DT)
    if isinstance(e, BasisVec):
        return m.basis(_index(env, e.var))
    if isinstance(e, RelVec):
        return m.complement_tensor(e.predicate, 1) if e.negated else m.tensor(e.predicate, 1)
    if isinstance(e, DiagVec):
        return np.diagonal(_eval_mat(e.mat, m)).copy()
    if isinstance(e, MatVec):
        return _eval_mat(e.mat, m) @ _eval_vec(e.vec, m, env, trace)
    if isinstance(e, HadamardVec):
        vs = [_eval_vec(g, m, env, trace) for g in e.items]
        out = vs[0].copy()
        for v in vs[1:]:
            out *= v
        return out
    if isinstance(e, VecAdd):
        vs = [_eval_vec(g, m, env, trace) for g in e.items]
        return np.sum(vs, axis=0, dtype=_DT) if vs else np.zeros(m.basis_size, dtype=_DT)
    if isinstance(e, Min1Vec):
        return min1(_eval_vec(e.body, m, env, trace))
    if isinstance(e, ComplementVec):
        v = _eval_vec(e.body, m, env, trace)
        assert np.isin(v, (0, 1)).all() if v.size else True
        return 1 - v
    if isinstance(e, ScaleVec):
        return _eval(e.scalar, m, env, trace) * _eval_vec(e.body, m, env, trace)
    raise TypeError(f"not a vector plan node: {e!r}")


def _eval_mat(e, m) -> np.ndarray:
    if isinstance(e, RelMat):
        t = m.complement_tensor(e.predicate, 2) if e.negated else m.tensor(e.predicate, 2)
        return transpose_encode(t) if e.transposed else t
    if isinstance(e, IdentityMat):
        return m.complement_tensor(None) if e.negated else m.identity
    if isinstance(e, OnesMat):
        return np.ones((m.basis_size, m.basis_size), dtype=_DT)
    raise TypeError(f"not a matrix plan node: {e!r}")


# --- plan text format -----------------------------------------------------

def dump_expr(e) -> str:
    """Indented s-expression rendering, one node per line.

    Core tags: rel, eq, compl, prod, min1sum, exists-sum, forall-dual.
    Negative literals render as compl over the literal. Optimized plans add
    the closed-form tags (min1dot, ones, basis, relvec, diagvec, matvec,
    hadamard, vecadd, min1vec, complvec, scalevec, relmat, idmat, onesmat);
    a relation tensor prefixed with ! is complemented and a relmat suffixed
    with ^T is transposed."""
    return "\n".join(_dump(e))


def _dump(e) -> list[str]:
    if isinstance(e, RelApply):
        line = f"(rel {e.predicate} {' '.join(v.name for v in e.terms)})"
        return ["(compl", f"  {line})"] if e.negated else [line]
    if isinstance(e, EqApply):
        line = f"(eq {e.left.name} {e.right.name})"
        return ["(compl", f"  {line})"] if e.negated else [line]
    if isinstance(e, Complement):
        return _node("compl", [e.body])
    if isinstance(e, Product):
        return _node("prod", e.factors)
    if isinstance(e, Min1Sum):
        return _node("min1sum", e.terms)
    if isinstance(e, Min1SumOverDomain):
        return _node(f"exists-sum {e.var.name}", [e.body])
    if isinstance(e, DualSumOverDomain):
        return _node(f"forall-dual {e.var.name}", [e.body])
    if isinstance(e, Min1Dot):
        return _node("min1dot", [e.left, e.right])
    if isinstance(e, OnesVec):
        return ["(ones)"]
    if isinstance(e, BasisVec):
        return [f"(basis {e.var.name})"]
    if isinstance(e, RelVec):
        return [f"(relvec {'!' if e.negated else ''}{e.predicate})"]
    if isinstance(e, DiagVec):
        return _node("diagvec", [e.mat])
    if isinstance(e, MatVec):
        return _node("matvec", [e.mat, e.vec])
    if isinstance(e, HadamardVec):
        return _node("hadamard", e.items)
    if isinstance(e, VecAdd):
        return _node("vecadd", e.items)
    if isinstance(e, Min1Vec):
        return _node("min1vec", [e.body])
    if isinstance(e, ComplementVec):
        return _node("complvec", [e.body])
    if isinstance(e, ScaleVec):
        return _node("scalevec", [e.scalar, e.body])
    if isinstance(e, RelMat):
        name = f"{'!' if e.negated else ''}{e.predicate}{'^T' if e.transposed else ''}"
        return [f"(relmat {name})"]
    if isinstance(e, IdentityMat):
        return ["(idmat !)" if e.negated else "(idmat)"]
    if isinstance(e, OnesMat):
        return ["(onesmat)"]
    raise TypeError(f"not a plan node: {e!r}")


def _node(head: str, children) -> list[str]:
    lines = [f"({head}"]
    flat = []
    for child in children:
        flat.extend(f"  {line}" for line in _dump(child))
    lines.extend(flat)
    lines[-1] += ")"
    return lines


def expr_variables(e) -> set[Variable]:
    """Free variables of a plan (bound sum variables excluded)."""
    if isinstance(e, RelApply):
        return set(e.terms)
    if isinstance(e, EqApply):
        return {e.left, e.right}
    if isinstance(e, Complement):
        return expr_variables(e.body)
    if isinstance(e, (Product, Min1Sum)):
        out: set[Variable] = set()
        for g in e.factors if isinstance(e, Product) else e.terms:
            out |= expr_variables(g)
        return out
    if isinstance(e, (Min1SumOverDomain, DualSumOverDomain)):
        return expr_variables(e.body) - {e.var}
    if isinstance(e, Min1Dot):
        return expr_variables(e.left) | expr_variables(e.right)
    if isinstance(e, (OnesVec, RelVec, OnesMat, IdentityMat, RelMat)):
        return set()
    if isinstance(e, BasisVec):
        return {e.var}
    if isinstance(e, DiagVec):
        return set()
    if isinstance(e, MatVec):
        return expr_variables(e.vec)
    if isinstance(e, (HadamardVec, VecAdd)):
        out = set()
        for g in e.items:
            out |= expr_variables(g)
        return out
    if isinstance(e, (Min1Vec, ComplementVec)):
        return expr_variables(e.body)
    if isinstance(e, ScaleVec):
        return expr_variables(e.scalar) | expr_variables(e.body)
    raise TypeError(f"not a plan node: {e!r}")
