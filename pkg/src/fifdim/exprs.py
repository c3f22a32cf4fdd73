"""Closed-form expression language for scale and displacement functions.

Expressions are written in a tiny grammar over the domain coordinates
``x1 .. xm``::

    expr    := term (("+" | "-") term)*
    term    := factor (("*" | "/") factor)*
    factor  := "-" factor | power
    power   := atom ("^" number)?
    atom    := number | var | "sin" "(" expr ")" | "cos" "(" expr ")"
             | "(" expr ")"
    var     := "x" digits
    number  := digits ("." digits)? | "." digits

Powers use a strictly positive literal exponent and evaluate as
``|base|**a`` so every expression is continuous on the domain.  Division
is only allowed by a constant sub-expression and is folded into a
multiplication at parse time.  Shape facts (constancy, per-axis
affinity/concavity/convexity, Hoelder data) are user declarations that
get audited numerically, not proven symbolically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

__all__ = [
    "Expr",
    "Const",
    "Var",
    "Neg",
    "Add",
    "Sub",
    "Mul",
    "Pow",
    "Sin",
    "Cos",
    "ShapeFacts",
    "ExprError",
    "ExprSyntaxError",
    "parse_expr",
    "eval_expr",
    "sup_norm",
    "inf_abs",
    "audit_shape",
    "holder_seminorm_estimate",
    "affine_expr",
    "multilinear_expr",
]


class ExprError(ValueError):
    """Invalid expression (bad exponent, missing Hoelder facts, ...)."""


class ExprSyntaxError(ExprError):
    """Syntax error; carries the byte offset of the offending token."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


# --------------------------------------------------------------------------
# AST


@dataclass(frozen=True)
class Expr:
    """Base class for AST nodes.  Nodes are immutable and hashable."""

    def ev(self, x: np.ndarray) -> np.ndarray:
        """Evaluate at points ``x`` of shape (..., m); returns shape (...)."""
        raise NotImplementedError

    def _str(self) -> tuple[str, int]:
        """Return (text, precedence); precedence: 0 sum, 1 product, 2 atom."""
        raise NotImplementedError

    def max_axis(self) -> int:
        raise NotImplementedError

    def __str__(self) -> str:
        return self._str()[0]


def _paren(child: Expr, min_prec: int) -> str:
    text, prec = child._str()
    return f"({text})" if prec < min_prec else text


@dataclass(frozen=True)
class Const(Expr):
    value: float

    def ev(self, x):
        return np.full(x.shape[:-1], float(self.value))

    def _str(self):
        v = float(self.value)
        if v < 0:
            return f"-{abs(v)!r}", 1
        return repr(v), 2

    def max_axis(self):
        return 0


@dataclass(frozen=True)
class Var(Expr):
    axis: int  # 1-based

    def ev(self, x):
        return np.asarray(x)[..., self.axis - 1]

    def _str(self):
        return f"x{self.axis}", 2

    def max_axis(self):
        return self.axis


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr

    def ev(self, x):
        return -self.arg.ev(x)

    def _str(self):
        return f"-{_paren(self.arg, 2)}", 1

    def max_axis(self):
        return self.arg.max_axis()


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr

    def ev(self, x):
        return self.left.ev(x) + self.right.ev(x)

    def _str(self):
        return f"{_paren(self.left, 0)} + {_paren(self.right, 1)}", 0

    def max_axis(self):
        return max(self.left.max_axis(), self.right.max_axis())


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr

    def ev(self, x):
        return self.left.ev(x) - self.right.ev(x)

    def _str(self):
        return f"{_paren(self.left, 0)} - {_paren(self.right, 1)}", 0

    def max_axis(self):
        return max(self.left.max_axis(), self.right.max_axis())


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr

    def ev(self, x):
        return self.left.ev(x) * self.right.ev(x)

    def _str(self):
        return f"{_paren(self.left, 1)}*{_paren(self.right, 2)}", 1

    def max_axis(self):
        return max(self.left.max_axis(), self.right.max_axis())


@dataclass(frozen=True)
class Pow(Expr):
    """|base|^exponent with a strictly positive literal exponent."""

    base: Expr
    exponent: float

    def __post_init__(self):
        if not self.exponent > 0:
            raise ExprError(f"power exponent must be > 0, got {self.exponent}")

    def ev(self, x):
        return np.abs(self.base.ev(x)) ** self.exponent

    def _str(self):
        text, prec = self.base._str()
        # '^' does not chain in the grammar, so a Pow base needs parens too
        if prec < 2 or isinstance(self.base, Pow):
            text = f"({text})"
        return f"{text}^{self.exponent!r}", 2

    def max_axis(self):
        return self.base.max_axis()


@dataclass(frozen=True)
class Sin(Expr):
    arg: Expr

    def ev(self, x):
        return np.sin(self.arg.ev(x))

    def _str(self):
        return f"sin({self.arg})", 2

    def max_axis(self):
        return self.arg.max_axis()


@dataclass(frozen=True)
class Cos(Expr):
    arg: Expr

    def ev(self, x):
        return np.cos(self.arg.ev(x))

    def _str(self):
        return f"cos({self.arg})", 2

    def max_axis(self):
        return self.arg.max_axis()


# --------------------------------------------------------------------------
# Parser


_TOKEN_CHARS = set("+-*/^()")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
            continue
        if c in _TOKEN_CHARS:
            tokens.append(("op", c, i))
            i += 1
            continue
        if c.isdigit() or c == ".":
            j = i
            while j < n and (text[j].isdigit() or text[j] == "."):
                j += 1
            if j < n and text[j] in "eE":
                k = j + 1
                if k < n and text[k] in "+-":
                    k += 1
                if k < n and text[k].isdigit():
                    while k < n and text[k].isdigit():
                        k += 1
                    j = k
            num = text[i:j]
            if num.count(".") > 1:
                raise ExprSyntaxError(f"malformed number {num!r}", i)
            tokens.append(("num", num, i))
            i = j
            continue
        if c.isalpha():
            j = i
            while j < n and text[j].isalnum():
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
            continue
        raise ExprSyntaxError(f"unexpected character {c!r}", i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, val, off = self.next()
        if kind != "op" or val != op:
            raise ExprSyntaxError(f"expected {op!r}, got {val!r}", off)

    def parse(self) -> Expr:
        e = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"trailing input {val!r}", off)
        return e

    def expr(self) -> Expr:
        e = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                e = Add(e, rhs) if val == "+" else Sub(e, rhs)
            else:
                return e

    def term(self) -> Expr:
        e = self.factor()
        while True:
            kind, val, off = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.factor()
                if val == "*":
                    e = Mul(e, rhs)
                else:
                    c = _const_value(rhs)
                    if c is None:
                        raise ExprSyntaxError("division only by a constant", off)
                    if c == 0:
                        raise ExprSyntaxError("division by zero", off)
                    e = Mul(e, Const(1.0 / c))
            else:
                return e

    def factor(self) -> Expr:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return Neg(self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.next()
            k2, v2, off2 = self.next()
            if k2 != "num":
                raise ExprSyntaxError("exponent must be a number literal", off2)
            exp = float(v2)
            if exp <= 0:
                raise ExprSyntaxError("exponent must be > 0", off2)
            return Pow(base, exp)
        return base

    def atom(self) -> Expr:
        kind, val, off = self.next()
        if kind == "num":
            return Const(float(val))
        if kind == "name":
            if val in ("sin", "cos"):
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Sin(arg) if val == "sin" else Cos(arg)
            if val.startswith("x") and val[1:].isdigit():
                axis = int(val[1:])
                if axis < 1:
                    raise ExprSyntaxError("variable index starts at 1", off)
                return Var(axis)
            raise ExprSyntaxError(f"unknown name {val!r}", off)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        raise ExprSyntaxError(f"unexpected token {val!r}", off)


def _const_value(e: Expr) -> float | None:
    """Value of a variable-free expression, else None."""
    if e.max_axis() > 0:
        return None
    return float(e.ev(np.zeros((1,))))


def parse_expr(text: str) -> Expr:
    """Parse an expression string into an AST."""
    return _Parser(text).parse()


def eval_expr(e: Expr, x) -> np.ndarray | float:
    """Evaluate ``e`` at point(s) ``x`` of shape (..., m)."""
    x = np.asarray(x, dtype=float)
    scalar = x.ndim == 1
    out = e.ev(x)
    return float(out) if scalar else out


# --------------------------------------------------------------------------
# Shape facts


@dataclass(frozen=True)
class ShapeFacts:
    """User-declared structural facts about an expression.

    ``affine_in``/``concave_in``/``convex_in`` are 1-based axis index sets.
    An axis declared affine is automatically both concave and convex.
    ``holder_exponent``/``holder_constant`` supply the rigor slack for
    sup/inf brackets of non-constant expressions.
    """

    is_constant: bool = False
    constant_value: float | None = None
    affine_in: frozenset[int] = frozenset()
    concave_in: frozenset[int] = frozenset()
    convex_in: frozenset[int] = frozenset()
    holder_exponent: float | None = None
    holder_constant: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "affine_in", frozenset(self.affine_in))
        # affine_in subset of concave_in & convex_in
        object.__setattr__(
            self, "concave_in", frozenset(self.concave_in) | self.affine_in
        )
        object.__setattr__(
            self, "convex_in", frozenset(self.convex_in) | self.affine_in
        )
        if self.holder_exponent is not None and not (0 < self.holder_exponent <= 1):
            raise ExprError("holder exponent must lie in (0, 1]")

    @staticmethod
    def for_constant(value: float) -> "ShapeFacts":
        axes = frozenset()
        return ShapeFacts(
            is_constant=True,
            constant_value=float(value),
            affine_in=axes,
            holder_exponent=1.0,
            holder_constant=0.0,
        )

    def widen_axes(self, m: int) -> "ShapeFacts":
        """Constant expressions are affine in every axis of an m-dim domain."""
        if not self.is_constant:
            return self
        allax = frozenset(range(1, m + 1))
        return replace(self, affine_in=allax, concave_in=allax, convex_in=allax)


def normalize_facts(e: Expr, facts: ShapeFacts | None, m: int) -> ShapeFacts:
    """Fill in auto-detectable facts (variable-free constancy) and widen."""
    c = _const_value(e)
    if c is not None:
        base = facts or ShapeFacts()
        h = base.holder_exponent or 1.0
        return ShapeFacts(
            is_constant=True,
            constant_value=c,
            holder_exponent=h,
            holder_constant=0.0,
        ).widen_axes(m)
    if facts is None:
        facts = ShapeFacts()
    return facts.widen_axes(m)


# --------------------------------------------------------------------------
# Brackets and audits
#
# Regions are duck-typed: anything with ``sample_points(depth) -> (n, m)``
# and ``mesh_diameter(depth) -> float`` works (see fifdim.domains).


def _slack(e: Expr, facts: ShapeFacts | None, mesh_diam: float) -> float:
    if _const_value(e) is not None:
        return 0.0
    if facts is not None and facts.is_constant:
        return 0.0
    if facts is None or facts.holder_exponent is None or facts.holder_constant is None:
        raise ExprError(
            "holder facts (eta, H) required to bracket a non-constant expression"
        )
    return facts.holder_constant * mesh_diam ** facts.holder_exponent


def sup_norm(
    e: Expr, region, grid_depth: int, facts: ShapeFacts | None = None
) -> tuple[float, float]:
    """Bracket [lo, hi] of sup |e| over ``region``.

    lo is the sampled grid maximum of |e|; hi adds the declared
    modulus-of-continuity slack H * mesh_diameter**eta.
    """
    if grid_depth < 1:
        raise ExprError("grid_depth must be >= 1")
    pts = region.sample_points(grid_depth)
    vals = np.abs(e.ev(pts))
    lo = float(np.max(vals))
    return lo, lo + _slack(e, facts, region.mesh_diameter(grid_depth))


def inf_abs(
    e: Expr, region, grid_depth: int, facts: ShapeFacts | None = None
) -> tuple[float, float]:
    """Bracket [lo, hi] of inf |e| over ``region`` (hi = grid minimum)."""
    if grid_depth < 1:
        raise ExprError("grid_depth must be >= 1")
    pts = region.sample_points(grid_depth)
    vals = np.abs(e.ev(pts))
    hi = float(np.min(vals))
    lo = max(0.0, hi - _slack(e, facts, region.mesh_diameter(grid_depth)))
    return lo, hi


@dataclass(frozen=True)
class ShapeViolation:
    fact: str  # "constant" | "affine" | "concave" | "convex"
    axis: int  # 0 for the constancy fact
    point: tuple[float, ...]
    deviation: float

    def __str__(self):
        where = f"axis {self.axis}" if self.axis else "globally"
        return (
            f"declared {self.fact} {where} violated near {self.point} "
            f"by {self.deviation:.3e}"
        )


def audit_shape(
    e: Expr,
    facts: ShapeFacts,
    region,
    samples: int = 64,
    tol: float = 1e-9,
) -> list[ShapeViolation]:
    """Numerically test declared shape facts on sampled midpoint triples.

    An empty result is evidence of correctness, not proof; a non-empty
    result is a hard misdeclaration.
    """
    if samples < 3:
        raise ExprError("samples must be >= 3")
    rng = np.random.default_rng(12345)
    lo, hi = region.bounding_box()
    m = lo.shape[0]
    out: list[ShapeViolation] = []

    if facts.is_constant:
        pts = region.sample_points(6)
        vals = e.ev(pts)
        spread = float(np.max(vals) - np.min(vals))
        if spread > tol:
            worst = pts[int(np.argmax(np.abs(vals - vals[0])))]
            out.append(ShapeViolation("constant", 0, tuple(worst), spread))

    def axis_triples(r):
        # endpoints varying only in axis r, other coordinates shared
        base = rng.uniform(lo, hi, size=(samples, m))
        a = base.copy()
        b = base.copy()
        ta = rng.uniform(lo[r - 1], hi[r - 1], size=samples)
        tb = rng.uniform(lo[r - 1], hi[r - 1], size=samples)
        a[:, r - 1] = np.minimum(ta, tb)
        b[:, r - 1] = np.maximum(ta, tb)
        # deterministic extreme segment as well
        a[0], b[0] = base[0].copy(), base[0].copy()
        a[0, r - 1], b[0, r - 1] = lo[r - 1], hi[r - 1]
        mid = 0.5 * (a + b)
        return a, b, mid

    for fact, axes, sign in (
        ("affine", facts.affine_in, 0),
        ("concave", facts.concave_in, +1),
        ("convex", facts.convex_in, -1),
    ):
        for r in sorted(axes):
            a, b, mid = axis_triples(r)
            gap = e.ev(mid) - 0.5 * (e.ev(a) + e.ev(b))
            if fact == "affine":
                bad = np.abs(gap) > tol
            elif fact == "concave":
                bad = gap < -tol
            else:
                bad = gap > tol
            if np.any(bad):
                j = int(np.argmax(np.abs(gap) * bad))
                out.append(ShapeViolation(fact, r, tuple(mid[j]), float(abs(gap[j]))))
    return out


def holder_seminorm_estimate(
    e: Expr, eta: float, region, pairs: int = 4000
) -> float:
    """Lower estimate of the Hoelder-eta seminorm by pair sampling.

    Mixes random pairs, near-diagonal pairs and corner-anchored pairs so
    that suprema attained in the x' -> x or x' -> boundary limits are seen.
    """
    if not (0 < eta <= 1):
        raise ExprError("eta must lie in (0, 1]")
    rng = np.random.default_rng(98765)
    lo, hi = region.bounding_box()
    m = lo.shape[0]
    xs = [rng.uniform(lo, hi, size=(pairs, m))]
    ys = [rng.uniform(lo, hi, size=(pairs, m))]
    # near-diagonal
    base = rng.uniform(lo, hi, size=(pairs, m))
    step = (hi - lo) * rng.uniform(1e-8, 1e-3, size=(pairs, 1))
    xs.append(base)
    ys.append(np.clip(base + step, lo, hi))
    # corner anchored
    grid = region.sample_points(6)
    corners = np.concatenate([lo[None, :], hi[None, :]], axis=0)
    for c in corners:
        xs.append(np.broadcast_to(c, grid.shape).copy())
        ys.append(grid)
    x = np.concatenate(xs)
    y = np.concatenate(ys)
    d = np.linalg.norm(x - y, axis=-1)
    keep = d > 0
    x, y, d = x[keep], y[keep], d[keep]
    ratios = np.abs(e.ev(x) - e.ev(y)) / d**eta
    return float(np.max(ratios)) if ratios.size else 0.0


# --------------------------------------------------------------------------
# Constructors used by the displacement solver


def _term(coef: float, axes: tuple[int, ...]) -> Expr:
    e: Expr = Const(float(coef))
    for a in axes:
        e = Mul(e, Var(a))
    return e


def multilinear_expr(coeffs: dict[frozenset, float]) -> Expr:
    """Build sum_J e_J * prod_{j in J} x_j as an AST."""
    items = sorted(coeffs.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))
    e: Expr | None = None
    for axes, c in items:
        t = _term(c, tuple(sorted(axes)))
        e = t if e is None else Add(e, t)
    return e if e is not None else Const(0.0)


def affine_expr(intercept: float, slopes: dict[int, float]) -> Expr:
    """Build intercept + sum_r slopes[r] * x_r as an AST."""
    coeffs = {frozenset(): float(intercept)}
    for r, c in slopes.items():
        coeffs[frozenset({r})] = float(c)
    return multilinear_expr(coeffs)
