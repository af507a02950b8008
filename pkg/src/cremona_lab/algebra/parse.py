"""Text syntax for polynomials and variable declarations.

Variables are declared as ``["u:1", "v:1", "x:2", "y:3"]`` (name:weight,
weight defaults to 1).  Polynomials use ``+ - * ^`` and parentheses;
coefficients are integers or ``a``, the adjoined generator of GF(p^k).
"""

from __future__ import annotations

import ast
from typing import Sequence

from .errors import ParseError
from .fields import FieldDescriptor
from .poly import Polynomial, PolyRing

GENERATOR_NAME = "a"


def parse_vars(decls: Sequence[str]) -> tuple[tuple[str, ...], tuple[int, ...]]:
    names, weights = [], []
    for d in decls:
        name, _, w = d.partition(":")
        name = name.strip()
        if not name.isidentifier():
            raise ParseError(f"bad variable name {name!r}")
        if name == GENERATOR_NAME:
            raise ParseError(f"{GENERATOR_NAME!r} is reserved for the field generator")
        names.append(name)
        weights.append(int(w) if w.strip() else 1)
    return tuple(names), tuple(weights)


def make_ring(field: FieldDescriptor, decls: Sequence[str]) -> PolyRing:
    names, weights = parse_vars(decls)
    return PolyRing(field, names, weights)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    return _eval(tree.body, ring, text)


def _eval(node: ast.AST, ring: PolyRing, text: str) -> Polynomial:
    if isinstance(node, ast.BinOp):
        left = _eval(node.left, ring, text)
        if isinstance(node.op, ast.Pow):
            exp = node.right
            if isinstance(exp, ast.Constant) and isinstance(exp.value, int) and exp.value >= 0:
                return left ** exp.value
            raise ParseError(f"exponents must be nonnegative integers in {text!r}")
        right = _eval(node.right, ring, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        raise ParseError(f"unsupported operator in {text!r}")
    if isinstance(node, ast.UnaryOp):
        operand = _eval(node.operand, ring, text)
        if isinstance(node.op, ast.USub):
            return -operand
        if isinstance(node.op, ast.UAdd):
            return operand
        raise ParseError(f"unsupported unary operator in {text!r}")
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return ring.const(node.value)
    if isinstance(node, ast.Name):
        if node.id in ring.names:
            return ring.gen(node.id)
        if node.id == GENERATOR_NAME:
            return ring.const(ring.field.gen)
        raise ParseError(f"undeclared variable {node.id!r} in {text!r}")
    raise ParseError(f"unsupported syntax in {text!r}")
