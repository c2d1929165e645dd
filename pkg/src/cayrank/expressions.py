"""Expression trees over the group algebra: leaves are exact elements,
inner nodes Add, Neg, Mul, Inv, Adjoint, ScalarMul.

Constructors perform the local simplifications the algebra forces: double
inverses cancel, and the adjoint is involutive and antimultiplicative, so
expr_adjoint pushes all the way down to the leaves."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .algebra import GroupAlgebraElement, ga_adjoint, ga_scalar
from .scalars import ExactComplex
from .words import GeneratorSet


class Expression:
    __slots__ = ()

    @property
    def gens(self) -> GeneratorSet:
        raise NotImplementedError

    def __add__(self, other):
        return expr_add(self, other)

    def __sub__(self, other):
        return expr_add(self, expr_neg(other))

    def __mul__(self, other):
        return expr_mul(self, other)

    def __neg__(self):
        return expr_neg(self)


@dataclass(frozen=True)
class Leaf(Expression):
    element: GroupAlgebraElement

    @property
    def gens(self):
        return self.element.gens


@dataclass(frozen=True)
class Add(Expression):
    left: Expression
    right: Expression

    @property
    def gens(self):
        return self.left.gens


@dataclass(frozen=True)
class Neg(Expression):
    operand: Expression

    @property
    def gens(self):
        return self.operand.gens


@dataclass(frozen=True)
class Mul(Expression):
    left: Expression
    right: Expression

    @property
    def gens(self):
        return self.left.gens


@dataclass(frozen=True)
class Inv(Expression):
    operand: Expression

    @property
    def gens(self):
        return self.operand.gens


@dataclass(frozen=True)
class Adjoint(Expression):
    operand: Expression

    @property
    def gens(self):
        return self.operand.gens


@dataclass(frozen=True)
class ScalarMul(Expression):
    scalar: ExactComplex
    operand: Expression

    @property
    def gens(self):
        return self.operand.gens


def leaf(element: GroupAlgebraElement) -> Leaf:
    return Leaf(element)


def scalar_leaf(gens: GeneratorSet, c) -> Leaf:
    return Leaf(ga_scalar(gens, c))


def expr_add(e1: Expression, e2: Expression) -> Expression:
    return Add(e1, e2)


def expr_neg(e: Expression) -> Expression:
    if isinstance(e, Neg):
        return e.operand
    return Neg(e)


def expr_mul(e1: Expression, e2: Expression) -> Expression:
    return Mul(e1, e2)


def expr_scalar_mul(c, e: Expression) -> Expression:
    return ScalarMul(ExactComplex.coerce(c), e)


def expr_inv(e: Expression) -> Expression:
    if isinstance(e, Inv):
        return e.operand
    return Inv(e)


def expr_adjoint(e: Expression) -> Expression:
    """Push the adjoint to the leaves: involutive, antimultiplicative, and
    it commutes with inversion."""
    if isinstance(e, Adjoint):
        return e.operand
    if isinstance(e, Leaf):
        return Leaf(ga_adjoint(e.element))
    if isinstance(e, Add):
        return Add(expr_adjoint(e.left), expr_adjoint(e.right))
    if isinstance(e, Neg):
        return Neg(expr_adjoint(e.operand))
    if isinstance(e, Mul):
        return Mul(expr_adjoint(e.right), expr_adjoint(e.left))
    if isinstance(e, Inv):
        return Inv(expr_adjoint(e.operand))
    if isinstance(e, ScalarMul):
        return ScalarMul(e.scalar.conjugate(), expr_adjoint(e.operand))
    return Adjoint(e)


ExpressionNode = Union[Leaf, Add, Neg, Mul, Inv, Adjoint, ScalarMul]
