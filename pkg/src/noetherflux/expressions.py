"""A small arithmetic expression language for inline charts and fields.

Expressions are parsed with :mod:`ast` and only a whitelist of node types is
accepted: numbers, a fixed set of variable names, ``+ - * / **``, unary
minus and calls to a handful of numpy functions.  Anything else is a
:class:`ConfigError` pointing at the offending column.
"""

from __future__ import annotations

import ast
import operator
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigError

FUNCTIONS = {
    name: getattr(np, name)
    for name in ("sin", "cos", "tan", "exp", "log", "sqrt", "sinh", "cosh", "tanh",
                 "arctan", "arcsin", "arccos", "arctanh", "abs")
}
CONSTANTS = {"pi": np.pi, "e": np.e}

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_UNOPS = {ast.USub: operator.neg, ast.UAdd: operator.pos}


def _fail(msg: str, node, line=None, column=None):
    col = getattr(node, "col_offset", None)
    if column is not None and col is not None:
        column = column + col
    raise ConfigError(msg, line, column)


def compile_expression(text: str, variables: Sequence[str], line=None,
                       column=None) -> Callable[..., np.ndarray]:
    """Compile ``text`` to ``f(*arrays)`` over the named ``variables``.

    ``line`` and ``column`` locate the expression in its source file so that
    errors can point into it.
    """
    if not isinstance(text, str):
        raise ConfigError(f"expression must be a string, got {type(text).__name__}",
                          line, column)
    try:
        tree = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        col = None if column is None else column + (exc.offset or 1) - 1
        raise ConfigError(f"bad expression {text!r}: {exc.msg}", line, col) from None
    names = tuple(variables)

    def check(node):
        if isinstance(node, ast.Expression):
            check(node.body)
        elif isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
                _fail(f"only numeric literals are allowed in {text!r}", node, line, column)
        elif isinstance(node, ast.Name):
            if node.id not in names and node.id not in CONSTANTS:
                _fail(f"unknown name {node.id!r} in {text!r}; allowed: "
                      f"{', '.join(names + tuple(CONSTANTS))}", node, line, column)
        elif isinstance(node, ast.BinOp):
            if type(node.op) not in _BINOPS:
                _fail(f"operator not allowed in {text!r}", node, line, column)
            check(node.left)
            check(node.right)
        elif isinstance(node, ast.UnaryOp):
            if type(node.op) not in _UNOPS:
                _fail(f"operator not allowed in {text!r}", node, line, column)
            check(node.operand)
        elif isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in FUNCTIONS:
                _fail(f"unknown function in {text!r}; allowed: {', '.join(FUNCTIONS)}",
                      node, line, column)
            if node.keywords or len(node.args) != 1:
                _fail(f"functions take exactly one argument in {text!r}", node, line, column)
            check(node.args[0])
        else:
            _fail(f"syntax not allowed in {text!r}: {type(node).__name__}", node, line, column)

    check(tree)

    def evaluate(node, env):
        if isinstance(node, ast.Constant):
            return float(node.value)
        if isinstance(node, ast.Name):
            return env[node.id] if node.id in env else CONSTANTS[node.id]
        if isinstance(node, ast.BinOp):
            return _BINOPS[type(node.op)](evaluate(node.left, env), evaluate(node.right, env))
        if isinstance(node, ast.UnaryOp):
            return _UNOPS[type(node.op)](evaluate(node.operand, env))
        return FUNCTIONS[node.func.id](evaluate(node.args[0], env))

    body = tree.body

    def fn(*args):
        if len(args) != len(names):
            raise TypeError(f"expected {len(names)} arguments")
        arrays = np.broadcast_arrays(*[np.asarray(a, dtype=float) for a in args])
        out = evaluate(body, dict(zip(names, arrays)))
        return np.broadcast_to(np.asarray(out, dtype=float), arrays[0].shape)

    return fn


def compile_vector(texts: Sequence[str], variables: Sequence[str], line=None,
                   column=None) -> Callable[..., np.ndarray]:
    """Three component expressions stacked on a trailing axis."""
    if not isinstance(texts, (list, tuple)) or len(texts) != 3:
        raise ConfigError("expected a list of three component expressions", line, column)
    parts = [compile_expression(t, variables, line, column) for t in texts]

    def fn(*args):
        return np.stack([f(*args) for f in parts], axis=-1)

    return fn
