"""Closed-form runtime, work, and penalty expressions evaluated in log10 space.

Runtimes in this domain routinely exceed 10^40 and qubit-to-problem-size
maps reach 10^hundreds, far past what a double can hold on the linear
scale. Expressions are therefore parsed once into an immutable AST and
evaluated entirely on log10 magnitudes: products become sums, powers
become scalar multiplications, and additions go through log-sum-exp.

Grammar (whitespace-insensitive, no implicit multiplication):

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' unary)?          # right-associative
    atom   := NUMBER | NAME | NAME '(' expr ')' | '(' expr ')'

NUMBER accepts decimal and scientific literals. NAME is a function
(exp, ln, log2, log10, sqrt), a constant (e, pi), or a variable from the
caller-supplied allowed set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

LN10 = math.log(10.0)
LOG10_2 = math.log10(2.0)

FUNCTIONS = ("exp", "ln", "log2", "log10", "sqrt")
CONSTANTS = {"e": math.e, "pi": math.pi}


class ExpressionError(ValueError):
    """Base class for parse and evaluation failures."""


class ExpressionSyntaxError(ExpressionError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownVariableError(ExpressionSyntaxError):
    def __init__(self, name: str, position: int, allowed: frozenset[str]):
        shown = ", ".join(sorted(allowed)) if allowed else "none"
        super().__init__(f"unknown variable '{name}' (allowed: {shown})", position)
        self.name = name


class UnknownFunctionError(ExpressionSyntaxError):
    def __init__(self, name: str, position: int):
        super().__init__(f"unknown function '{name}'", position)
        self.name = name


class DomainError(ExpressionError):
    """Evaluation left the positive domain (log of <=0, division by zero,
    or a subtraction that cancelled to zero or below)."""


@dataclass(frozen=True)
class LogValue:
    """A nonnegative real held as its log10 magnitude.

    Zero is representable via the flag; negative magnitudes are not.
    Multiplication adds magnitudes exactly, so no precision is lost on
    products however large the operands.
    """

    log10_magnitude: float
    is_zero: bool = False

    @classmethod
    def from_linear(cls, value: float) -> "LogValue":
        if value < 0:
            raise ValueError("LogValue requires a nonnegative value")
        if value == 0:
            return cls(-math.inf, True)
        return cls(math.log10(value))

    @classmethod
    def from_log10(cls, magnitude: float) -> "LogValue":
        return cls(float(magnitude))

    @classmethod
    def zero(cls) -> "LogValue":
        return cls(-math.inf, True)

    def to_linear(self) -> float:
        """Linear-scale value; overflows to inf past ~1e308."""
        if self.is_zero:
            return 0.0
        return 10.0 ** self.log10_magnitude

    def __mul__(self, other: "LogValue") -> "LogValue":
        if self.is_zero or other.is_zero:
            return LogValue.zero()
        return LogValue(self.log10_magnitude + other.log10_magnitude)

    def __truediv__(self, other: "LogValue") -> "LogValue":
        if other.is_zero:
            raise DomainError("division by zero")
        if self.is_zero:
            return LogValue.zero()
        return LogValue(self.log10_magnitude - other.log10_magnitude)


@dataclass(frozen=True)
class Expression:
    """Parsed formula over a fixed variable set, immutable after parse."""

    ast: tuple
    source_text: str
    variables: frozenset[str] = field(default_factory=frozenset)

    def serialize(self) -> str:
        """Canonical source form; reparsing yields a structurally identical ast."""
        return _unparse(self.ast, 0)

    def __str__(self) -> str:
        return self.serialize()


# --- tokenizer -------------------------------------------------------------

_OPERATOR_CHARS = "+-*/^(),"


def _tokenize(source: str) -> list[tuple[str, object, int]]:
    tokens = []
    i, n = 0, len(source)
    while i < n:
        c = source[i]
        if c.isspace():
            i += 1
            continue
        if c in _OPERATOR_CHARS:
            tokens.append(("op", c, i))
            i += 1
            continue
        if c.isdigit() or c == ".":
            start = i
            while i < n and (source[i].isdigit() or source[i] == "."):
                i += 1
            if i < n and source[i] in "eE":
                j = i + 1
                if j < n and source[j] in "+-":
                    j += 1
                if j < n and source[j].isdigit():
                    i = j
                    while i < n and source[i].isdigit():
                        i += 1
            text = source[start:i]
            try:
                value = float(text)
            except ValueError:
                raise ExpressionSyntaxError(f"bad number literal '{text}'", start)
            tokens.append(("num", value, start))
            continue
        if c.isalpha() or c == "_":
            start = i
            while i < n and (source[i].isalnum() or source[i] == "_"):
                i += 1
            tokens.append(("name", source[start:i], start))
            continue
        raise ExpressionSyntaxError(f"unexpected character '{c}'", i)
    return tokens


# --- parser ----------------------------------------------------------------


class _Parser:
    def __init__(self, source: str, allowed_vars: frozenset[str]):
        self.source = source
        self.tokens = _tokenize(source)
        self.pos = 0
        self.allowed = allowed_vars

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise ExpressionSyntaxError("unexpected end of expression", len(self.source))
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        tok = self.peek()
        if tok is None or tok[0] != "op" or tok[1] != op:
            at = tok[2] if tok else len(self.source)
            raise ExpressionSyntaxError(f"expected '{op}'", at)
        self.pos += 1

    def parse(self) -> tuple:
        node = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ExpressionSyntaxError(f"unexpected trailing input '{tok[1]}'", tok[2])
        return node

    def expr(self) -> tuple:
        node = self.term()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "+-":
                self.pos += 1
                rhs = self.term()
                node = ("add" if tok[1] == "+" else "sub", node, rhs)
            else:
                return node

    def term(self) -> tuple:
        node = self.unary()
        while True:
            tok = self.peek()
            if tok and tok[0] == "op" and tok[1] in "*/":
                self.pos += 1
                rhs = self.unary()
                node = ("mul" if tok[1] == "*" else "div", node, rhs)
            else:
                return node

    def unary(self) -> tuple:
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "-":
            self.pos += 1
            return ("neg", self.unary())
        return self.power()

    def power(self) -> tuple:
        base = self.atom()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.pos += 1
            return ("pow", base, self.unary())
        return base

    def atom(self) -> tuple:
        kind, value, at = self.next()
        if kind == "num":
            return ("num", value)
        if kind == "op" and value == "(":
            node = self.expr()
            self.expect_op(")")
            return node
        if kind == "name":
            nxt = self.peek()
            if nxt and nxt[0] == "op" and nxt[1] == "(":
                if value not in FUNCTIONS:
                    raise UnknownFunctionError(str(value), at)
                self.pos += 1
                arg = self.expr()
                self.expect_op(")")
                return ("call", value, arg)
            if value in CONSTANTS:
                return ("num", CONSTANTS[value])
            if value not in self.allowed:
                raise UnknownVariableError(str(value), at, self.allowed)
            return ("var", value)
        raise ExpressionSyntaxError(f"unexpected token '{value}'", at)


def parse(source: str, allowed_vars) -> Expression:
    """Parse ``source`` admitting only the given variable names.

    Raises ExpressionSyntaxError (with position), UnknownVariableError, or
    UnknownFunctionError.
    """
    if not source or not source.strip():
        raise ExpressionSyntaxError("empty expression", 0)
    allowed = frozenset(allowed_vars)
    ast = _Parser(source, allowed).parse()
    return Expression(ast=ast, source_text=source, variables=_collect_vars(ast))


def _collect_vars(node: tuple, acc: set | None = None) -> frozenset[str]:
    if acc is None:
        acc = set()
    tag = node[0]
    if tag == "var":
        acc.add(node[1])
    elif tag in ("neg",):
        _collect_vars(node[1], acc)
    elif tag == "call":
        _collect_vars(node[2], acc)
    elif tag in ("add", "sub", "mul", "div", "pow"):
        _collect_vars(node[1], acc)
        _collect_vars(node[2], acc)
    return frozenset(acc)


# --- unparser ---------------------------------------------------------------

_PREC = {"add": 1, "sub": 1, "mul": 2, "div": 2, "neg": 3, "pow": 4}


def _format_number(v: float) -> str:
    if math.isfinite(v) and v == int(v) and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _unparse(node: tuple, parent_prec: int) -> str:
    tag = node[0]
    if tag == "num":
        return _format_number(node[1])
    if tag == "var":
        return node[1]
    if tag == "call":
        return f"{node[1]}({_unparse(node[2], 0)})"
    if tag == "neg":
        text = f"-{_unparse(node[1], _PREC['neg'])}"
        return f"({text})" if parent_prec > _PREC["neg"] else text
    op_char = {"add": " + ", "sub": " - ", "mul": " * ", "div": " / ", "pow": "^"}[tag]
    prec = _PREC[tag]
    if tag == "pow":
        # right-associative: parenthesize any non-atomic base
        left = _unparse(node[1], prec + 1)
        right = _unparse(node[2], prec)
    else:
        left = _unparse(node[1], prec)
        right = _unparse(node[2], prec + 1)
    text = f"{left}{op_char}{right}"
    return f"({text})" if parent_prec > prec else text


# --- evaluation -------------------------------------------------------------
#
# Internally values are (sign, log10 magnitude) pairs so that negative
# intermediates (exponents, subtraction results feeding an exponent) stay
# representable. Only the final result must be nonnegative.

_ZERO = (0, -math.inf)


def _norm(sign: int, mag: float):
    if mag == -math.inf:
        return _ZERO
    if math.isnan(mag):
        raise DomainError("evaluation produced an indeterminate value")
    return (sign, mag)


def _from_float(v: float):
    if v == 0:
        return _ZERO
    if v < 0:
        return (-1, math.log10(-v))
    return (1, math.log10(v))


def _to_float(sv) -> float:
    sign, mag = sv
    if sign == 0:
        return 0.0
    if mag > 308.25:
        return math.inf if sign > 0 else -math.inf
    return sign * 10.0 ** mag


def _add_mags(big: float, small: float) -> float:
    # log10(10^big + 10^small), big >= small
    if big == math.inf:
        return math.inf
    return big + math.log1p(10.0 ** (small - big)) / LN10


def _sub_mags(big: float, small: float) -> float:
    # log10(10^big - 10^small), big >= small; exact cancellation is an error
    if big == small:
        raise DomainError("subtraction cancelled to zero")
    if big == math.inf:
        return math.inf
    diff = -math.expm1((small - big) * LN10)
    if diff <= 0.0:
        raise DomainError("subtraction underflowed positivity")
    return big + math.log10(diff)


def _add_signed(a, b):
    sa, ma = a
    sb, mb = b
    if sa == 0:
        return b
    if sb == 0:
        return a
    if sa == sb:
        return _norm(sa, _add_mags(max(ma, mb), min(ma, mb)))
    if ma >= mb:
        return _norm(sa, _sub_mags(ma, mb))
    return _norm(sb, _sub_mags(mb, ma))


def _pow_signed(base, exponent):
    sb, mb = base
    ef = _to_float(exponent)
    if sb == 0:
        if ef > 0:
            return _ZERO
        if ef == 0:
            return (1, 0.0)  # 0^0 = 1, the usual computing convention
        raise DomainError("zero raised to a negative power")
    if mb == 0.0 and sb > 0:
        return (1, 0.0)  # 1^x = 1 even for infinite x
    if sb < 0:
        if ef != int(ef):
            raise DomainError("negative base with non-integer exponent")
        sign = -1 if int(ef) % 2 else 1
        return _norm(sign, mb * ef)
    return _norm(1, mb * ef)


def _eval(node: tuple, binds: dict):
    tag = node[0]
    if tag == "num":
        return _from_float(node[1])
    if tag == "var":
        return binds[node[1]]
    if tag == "add":
        return _add_signed(_eval(node[1], binds), _eval(node[2], binds))
    if tag == "sub":
        a = _eval(node[1], binds)
        s, m = _eval(node[2], binds)
        return _add_signed(a, (-s, m))
    if tag == "mul":
        sa, ma = _eval(node[1], binds)
        sb, mb = _eval(node[2], binds)
        if sa == 0 or sb == 0:
            return _ZERO
        return _norm(sa * sb, ma + mb)
    if tag == "div":
        sa, ma = _eval(node[1], binds)
        sb, mb = _eval(node[2], binds)
        if sb == 0:
            raise DomainError("division by zero")
        if sa == 0:
            return _ZERO
        return _norm(sa * sb, ma - mb)
    if tag == "neg":
        s, m = _eval(node[1], binds)
        return (-s, m)
    if tag == "pow":
        return _pow_signed(_eval(node[1], binds), _eval(node[2], binds))
    if tag == "call":
        fn = node[1]
        s, m = _eval(node[2], binds)
        if fn == "exp":
            return _norm(1, _to_float((s, m)) / LN10)
        if fn == "sqrt":
            if s < 0:
                raise DomainError("sqrt of a negative value")
            if s == 0:
                return _ZERO
            return _norm(1, m / 2.0)
        # remaining are logarithms; argument must be strictly positive
        if s <= 0:
            raise DomainError(f"{fn} of a non-positive value")
        if fn == "ln":
            return _from_float(m * LN10) if math.isfinite(m) else _norm(1, math.inf)
        if fn == "log2":
            return _from_float(m / LOG10_2) if math.isfinite(m) else _norm(1, math.inf)
        if fn == "log10":
            return _from_float(m) if math.isfinite(m) else _norm(1, math.inf)
    raise ExpressionError(f"unknown ast node {tag!r}")


def eval_log10(expr: Expression, bindings: dict) -> LogValue:
    """Evaluate ``expr`` with positive bindings, returning log10 of its value.

    Bindings map variable names to LogValue instances (or plain positive
    numbers, converted for convenience). The expression value must come
    out nonnegative; DomainError otherwise.
    """
    binds = {}
    for name, value in bindings.items():
        if isinstance(value, LogValue):
            binds[name] = _ZERO if value.is_zero else (1, value.log10_magnitude)
        else:
            if value < 0:
                raise ValueError(f"binding for '{name}' must be nonnegative")
            binds[name] = _from_float(float(value))
    missing = expr.variables - binds.keys()
    if missing:
        raise ExpressionError(f"unbound variables: {', '.join(sorted(missing))}")
    sign, mag = _eval(expr.ast, binds)
    if sign < 0:
        raise DomainError("expression evaluated to a negative value")
    if sign == 0:
        return LogValue.zero()
    return LogValue(mag)


def log10_value(expr: Expression, mags: dict) -> float:
    """Fast path: bindings and result as raw log10 floats (positive values).

    Used by the curve solvers, which evaluate expressions thousands of
    times per crossing search. A binding of -inf means the variable is
    zero. Returns -inf for a zero result.
    """
    binds = {k: (_ZERO if v == -math.inf else (1, v)) for k, v in mags.items()}
    sign, mag = _eval(expr.ast, binds)
    if sign < 0:
        raise DomainError("expression evaluated to a negative value")
    return mag if sign else -math.inf
