"""A deliberately tiny, closed expression grammar for CLI function specs.

Supported: numeric literals, `x`, `pi`, `e`, the four operators with `^`
for powers, unary minus, and the calls exp/sin/cos/abs.  Piecewise specs
combine breakpoints with one expression per piece:

    piecewise[b1,b2,...,bk]{expr0; expr1; ...; exprk}

where expr0 applies on (-inf, b1), expr_i on [b_i, b_{i+1}), and exprk on
[bk, inf).  Parsing round-trips: serialize(parse(text)) is the canonical
form of the same function.  Arbitrary code in configs is rejected by
construction; there is no name lookup beyond the fixed tables.
"""

from __future__ import annotations

import math
import re
from typing import Callable, Optional

import numpy as np

from .core import ExtendedInterval, RealFn

__all__ = ["parse_expr", "serialize_expr", "eval_ast", "expr_fn",
           "parse_piecewise", "serialize_piecewise", "piecewise_fn",
           "ExprError"]


class ExprError(ValueError):
    pass


_FUNCS = {
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "abs": np.abs,
}
_CONSTS = {"pi": math.pi, "e": math.e}

_TOKEN = re.compile(r"\s*(?:(\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?"
                    r"|\d+(?:[eE][+-]?\d+)?)|([A-Za-z_][A-Za-z_0-9]*)"
                    r"|(\*\*|[()+\-*/^]))")


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ExprError(f"bad character at {text[pos:]!r}")
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", float(num)))
        elif ident is not None:
            out.append(("ident", ident))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    out.append(("end", ""))
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None, value=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ExprError(f"expected {kind}, got {tok}")
        if value is not None and tok[1] != value:
            raise ExprError(f"expected {value!r}, got {tok}")
        self.i += 1
        return tok

    def expr(self):
        node = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            op = self.take()[1]
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            op = self.take()[1]
            rhs = self.unary()
            node = ("mul" if op == "*" else "div", node, rhs)
        return node

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return ("neg", self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            return ("pow", base, self.unary())
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.take()
            return ("num", val)
        if kind == "ident":
            self.take()
            if val == "x":
                return ("x",)
            if val in _CONSTS:
                return ("const", val)
            if val in _FUNCS:
                self.take("op", "(")
                inner = self.expr()
                self.take("op", ")")
                return ("call", val, inner)
            raise ExprError(f"unknown name {val!r}")
        if (kind, val) == ("op", "("):
            self.take()
            inner = self.expr()
            self.take("op", ")")
            return inner
        raise ExprError(f"unexpected token {(kind, val)}")


def parse_expr(text: str):
    p = _Parser(_tokenize(text))
    node = p.expr()
    p.take("end")
    return node


def eval_ast(node, x):
    kind = node[0]
    if kind == "num":
        return np.full_like(np.asarray(x, dtype=float), node[1])
    if kind == "x":
        return np.asarray(x, dtype=float)
    if kind == "const":
        return np.full_like(np.asarray(x, dtype=float), _CONSTS[node[1]])
    if kind == "neg":
        return -eval_ast(node[1], x)
    if kind == "call":
        return _FUNCS[node[1]](eval_ast(node[2], x))
    a = eval_ast(node[1], x)
    b = eval_ast(node[2], x)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    if kind == "pow":
        return np.power(a, b)
    raise ExprError(f"bad node {node!r}")


def _fmt(v: float) -> str:
    return repr(float(v)) if v != int(v) else str(int(v))


_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4,
         "num": 9, "x": 9, "const": 9, "call": 9}


def serialize_expr(node, parent_prec: int = 0) -> str:
    kind = node[0]
    prec = _PREC[kind]
    if kind == "num":
        s = _fmt(node[1])
    elif kind == "x":
        s = "x"
    elif kind == "const":
        s = node[1]
    elif kind == "neg":
        s = "-" + serialize_expr(node[1], prec)
    elif kind == "call":
        s = f"{node[1]}({serialize_expr(node[2])})"
    else:
        op = {"add": " + ", "sub": " - ", "mul": "*", "div": "/", "pow": "^"}[kind]
        # right operand needs a strictly higher context for - / ^ chains
        s = (serialize_expr(node[1], prec)
             + op + serialize_expr(node[2], prec + 1))
    if prec < parent_prec:
        return f"({s})"
    return s


def expr_fn(text: str, name: str = "") -> RealFn:
    node = parse_expr(text)
    return RealFn(lambda x, _n=node: eval_ast(_n, x),
                  tail_class="bounded-variation-tail",
                  name=name or serialize_expr(node))


_PIECEWISE = re.compile(r"^\s*piecewise\s*\[(?P<bps>[^\]]*)\]\s*\{(?P<exprs>.*)\}\s*$",
                        re.S)


def parse_piecewise(text: str):
    """Returns (breakpoints, ast_list) with len(ast_list) = len(bps) + 1."""
    m = _PIECEWISE.match(text)
    if m is None:
        raise ExprError("not a piecewise spec")
    bps = [float(b) for b in m.group("bps").split(",") if b.strip()]
    if bps != sorted(bps) or len(set(bps)) != len(bps):
        raise ExprError("breakpoints must be strictly increasing")
    pieces = [p.strip() for p in m.group("exprs").split(";")]
    if len(pieces) != len(bps) + 1:
        raise ExprError(f"need {len(bps) + 1} pieces for {len(bps)} breakpoints, "
                        f"got {len(pieces)}")
    return bps, [parse_expr(p) for p in pieces]


def serialize_piecewise(bps, asts) -> str:
    return ("piecewise[" + ",".join(_fmt(b) for b in bps) + "]{"
            + "; ".join(serialize_expr(a) for a in asts) + "}")


def _is_zero(ast) -> bool:
    return ast == ("num", 0.0)


def piecewise_fn(text: str, name: str = "") -> RealFn:
    bps, asts = parse_piecewise(text)

    def evaluate(x, _bps=tuple(bps), _asts=tuple(asts)):
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(np.asarray(_bps), x, side="right")
        out = np.empty_like(x)
        for i, ast in enumerate(_asts):
            mask = idx == i
            if mask.any():
                out[mask] = eval_ast(ast, x[mask])
        return out

    support = None
    tail = "bounded-variation-tail"
    if len(bps) >= 2 and _is_zero(asts[0]) and _is_zero(asts[-1]):
        support = ExtendedInterval(bps[0], bps[-1])
        tail = "compact-support"
    return RealFn(evaluate, support=support, tail_class=tail,
                  name=name or serialize_piecewise(bps, asts))
