"""Small arithmetic expression language for the command line.

Grammar (usual precedence, ^ binds tightest and associates right):

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary)*
    unary   := '-' unary | power
    power   := atom ('^' unary)?
    atom    := number | 'x' | name '(' expr (',' expr)* ')' | '(' expr ')'

Known functions: sin cos tan exp log atan abs sqrt sinc, plus
piecewise(b1, ..., bk, e0, e1, ..., ek) which selects e_i on the i-th
interval cut by the sorted breakpoints b1 < ... < bk.

Evaluation uses the convention that an exact zero factor absorbs a
non-finite cofactor, so x^2 * cos(x^-2) evaluates to 0 at x = 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import EvalError, ExprSyntaxError, UnknownFunction

_FUNCTIONS: dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "exp": math.exp,
    "expm1": math.expm1,
    "log": math.log,
    "atan": math.atan,
    "abs": abs,
    "sqrt": math.sqrt,
    "sinc": lambda t: math.sin(t) / t if t != 0.0 else 1.0,
}


@dataclass(frozen=True)
class Node:
    kind: str  # "num" | "var" | "neg" | "bin" | "call" | "piecewise"
    value: float = 0.0
    op: str = ""
    name: str = ""
    children: tuple["Node", ...] = ()


@dataclass(frozen=True)
class _Token:
    kind: str  # "num" | "name" | "op" | "end"
    text: str
    pos: int


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    i, n = 0, len(src)
    while i < n:
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c.isdigit() or c == ".":
            j = i
            while j < n and (src[j].isdigit() or src[j] == "."):
                j += 1
            if j < n and src[j] in "eE":
                k = j + 1
                if k < n and src[k] in "+-":
                    k += 1
                if k < n and src[k].isdigit():
                    j = k
                    while j < n and src[j].isdigit():
                        j += 1
            try:
                float(src[i:j])
            except ValueError:
                raise ExprSyntaxError(f"bad number {src[i:j]!r}", i)
            tokens.append(_Token("num", src[i:j], i))
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(_Token("name", src[i:j], i))
            i = j
            continue
        if c in "+-*/^(),":
            tokens.append(_Token("op", c, i))
            i += 1
            continue
        raise ExprSyntaxError(f"unexpected character {c!r}", i)
    tokens.append(_Token("end", "", n))
    return tokens


class _Parser:
    def __init__(self, src: str):
        self.src = src
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def take(self) -> _Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> None:
        t = self.take()
        if t.kind == "end" or t.text != text:
            raise ExprSyntaxError(f"expected {text!r}", t.pos)

    def parse(self) -> Node:
        node = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ExprSyntaxError(f"unexpected {t.text!r}", t.pos)
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.take().text
            node = Node("bin", op=op, children=(node, self.term()))
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.take().text
            node = Node("bin", op=op, children=(node, self.unary()))
        return node

    def unary(self) -> Node:
        if self.peek().kind == "op" and self.peek().text == "-":
            self.take()
            return Node("neg", children=(self.unary(),))
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            return Node("bin", op="^", children=(base, self.unary()))
        return base

    def atom(self) -> Node:
        t = self.take()
        if t.kind == "num":
            return Node("num", value=float(t.text))
        if t.kind == "name":
            if t.text == "x":
                return Node("var")
            if t.text == "pi":
                return Node("num", value=math.pi)
            if self.peek().text != "(":
                raise ExprSyntaxError(
                    f"unknown name {t.text!r} (did you mean a call?)", t.pos)
            self.take()
            args = [self.expr()]
            while self.peek().text == ",":
                self.take()
                args.append(self.expr())
            self.expect(")")
            if t.text == "piecewise":
                return _make_piecewise(args, t.pos)
            if t.text not in _FUNCTIONS:
                raise UnknownFunction(f"unknown function {t.text!r}")
            if len(args) != 1:
                raise ExprSyntaxError(
                    f"{t.text} takes one argument", t.pos)
            return Node("call", name=t.text, children=(args[0],))
        if t.kind == "op" and t.text == "(":
            node = self.expr()
            self.expect(")")
            return node
        raise ExprSyntaxError(f"unexpected {t.text or 'end of input'!r}",
                              t.pos)


def _make_piecewise(args: list[Node], pos: int) -> Node:
    # k breakpoints followed by k+1 branch expressions: 2k+1 args total
    if len(args) < 3 or len(args) % 2 == 0:
        raise ExprSyntaxError(
            "piecewise needs k breakpoints then k+1 expressions", pos)
    k = (len(args) - 1) // 2
    breaks = args[:k]
    for b in breaks:
        if b.kind != "num" and not (b.kind == "neg"
                                    and b.children[0].kind == "num"):
            raise ExprSyntaxError("piecewise breakpoints must be numeric",
                                  pos)
    cuts = [evaluate(b, 0.0) for b in breaks]
    if any(cuts[i] >= cuts[i + 1] for i in range(len(cuts) - 1)):
        raise ExprSyntaxError("piecewise breakpoints must be increasing",
                              pos)
    return Node("piecewise", children=tuple(args))


def parse(src: str) -> Node:
    """Parse an expression in the variable x into a tree."""
    return _Parser(src).parse()


def _product(a: float, b: float) -> float:
    if a == 0.0 or b == 0.0:
        return 0.0
    return a * b


def evaluate(node: Node, x: float) -> float:
    """Evaluate a parsed tree at x; arithmetic faults become EvalError."""
    try:
        return _eval(node, x)
    except (OverflowError, ValueError, ZeroDivisionError) as exc:
        raise EvalError(f"evaluation failed at x={x!r}: {exc}") from exc


def _eval(node: Node, x: float) -> float:
    if node.kind == "num":
        return node.value
    if node.kind == "var":
        return x
    if node.kind == "neg":
        return -_eval(node.children[0], x)
    if node.kind == "call":
        return float(_FUNCTIONS[node.name](_eval(node.children[0], x)))
    if node.kind == "piecewise":
        k = (len(node.children) - 1) // 2
        cuts = [_eval(b, 0.0) for b in node.children[:k]]
        branches = node.children[k:]
        idx = 0
        while idx < k and x >= cuts[idx]:
            idx += 1
        return _eval(branches[idx], x)
    # binary operator
    a = _eval(node.children[0], x)
    if node.op == "*":
        # exact zero absorbs a non-finite cofactor: x^2 * cos(x^-2) is 0
        # at x = 0
        if a == 0.0:
            return 0.0
        b = _eval(node.children[1], x)
        return _product(a, b)
    b = _eval(node.children[1], x)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "/":
        return a / b
    if node.op == "^":
        if a == 0.0 and b > 0.0:
            return 0.0
        return math.pow(a, b)
    raise EvalError(f"unknown operator {node.op!r}")


def compile_expr(src: str) -> Callable[[float], float]:
    """Parse once, return a float -> float evaluator."""
    tree = parse(src)
    return lambda x: evaluate(tree, x)


def unparse(node: Node) -> str:
    """Print a tree back to source; parse(unparse(t)) equals t."""
    return _unparse(node, 0)


_PREC = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}


def _unparse(node: Node, parent_prec: int) -> str:
    if node.kind == "num":
        return repr(node.value)
    if node.kind == "var":
        return "x"
    if node.kind == "neg":
        inner = _unparse(node.children[0], 3)
        out = f"-{inner}"
        return f"({out})" if parent_prec > 3 else out
    if node.kind == "call":
        return f"{node.name}({_unparse(node.children[0], 0)})"
    if node.kind == "piecewise":
        args = ", ".join(_unparse(c, 0) for c in node.children)
        return f"piecewise({args})"
    prec = _PREC[node.op]
    # left child at this precedence, right child one tighter for the
    # left-associative operators; ^ is right-associative so mirrored
    if node.op == "^":
        left = _unparse(node.children[0], prec + 1)
        right = _unparse(node.children[1], prec)
    else:
        left = _unparse(node.children[0], prec)
        right = _unparse(node.children[1], prec + 1)
    out = f"{left} {node.op} {right}"
    return f"({out})" if parent_prec > prec else out
