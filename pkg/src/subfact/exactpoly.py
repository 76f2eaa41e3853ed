"""Sparse multivariate polynomials over Q.

Terms are stored as ``{exponent tuple: Fraction}`` with zero coefficients
dropped.  Variables are ordered x1 > x2 > ... > xn and the canonical term
order is graded lexicographic.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = [
    "MultiPoly",
    "NotDivisible",
    "ParseError",
    "parse_poly",
    "arith",
    "divide_exact",
    "derivative",
    "gcd_multi",
    "squarefree_in_A",
    "det_fraction_free",
]


class NotDivisible(ArithmeticError):
    """Raised by exact division when the divisor does not divide."""


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


def _grlex_key(exp):
    return (sum(exp), exp)


class MultiPoly:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None, nvars: int = 1):
        if nvars < 0:
            raise ValueError("nvars must be non-negative")
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not have {nvars} entries")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c, nvars: int) -> "MultiPoly":
        return cls({(0,) * nvars: c}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        exp = [0] * nvars
        exp[i] = 1
        return cls({tuple(exp): 1}, nvars)

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "MultiPoly":
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    # -- inspection ---------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        exp = max(self._terms, key=_grlex_key)
        return exp, self._terms[exp]

    def degree_in(self, i: int) -> int:
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def involves(self, i: int) -> bool:
        return any(e[i] for e in self._terms)

    def coeffs_in(self, i: int) -> dict:
        """Split as sum_d c_d * x_i^d; returns ``{d: c_d}`` with c_d free of x_i."""
        out: dict = {}
        for exp, c in self._terms.items():
            d = exp[i]
            rest = exp[:i] + (0,) + exp[i + 1:]
            out.setdefault(d, {})[rest] = c
        return {d: MultiPoly._raw(t, self.nvars) for d, t in out.items()}

    # -- arithmetic ---------------------------------------------------
    def _check(self, other: "MultiPoly"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable-count mismatch: {self.nvars} vs {other.nvars}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other, self.nvars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return MultiPoly._raw(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly._raw(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "MultiPoly":
        c = Fraction(c)
        if not c:
            return MultiPoly({}, self.nvars)
        return MultiPoly._raw({e: v * c for e, v in self._terms.items()}, self.nvars)

    def mul_monomial(self, exp) -> "MultiPoly":
        return MultiPoly._raw(
            {tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()},
            self.nvars,
        )

    def derivative(self, i: int) -> "MultiPoly":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range for {self.nvars} variables")
        out = {}
        for exp, c in self._terms.items():
            if exp[i]:
                e = exp[:i] + (exp[i] - 1,) + exp[i + 1:]
                out[e] = c * exp[i]
        return MultiPoly._raw(out, self.nvars)

    def permute_vars(self, perm: Sequence[int]) -> "MultiPoly":
        """Substitute x_i -> x_{perm[i]}."""
        if sorted(perm) != list(range(self.nvars)):
            raise ValueError("not a permutation")
        out = {}
        for exp, c in self._terms.items():
            e = [0] * self.nvars
            for i, k in enumerate(exp):
                e[perm[i]] = k
            out[tuple(e)] = c
        return MultiPoly._raw(out, self.nvars)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for exp, c in self._terms.items():
            t = c
            for v, k in zip(point, exp):
                if k:
                    t *= Fraction(v) ** k
            total += t
        return total

    def normalized(self) -> "MultiPoly":
        """Primitive integer coefficients, positive leading coefficient."""
        if not self._terms:
            return self
        den = 1
        for c in self._terms.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        nums = [int(c * den) for c in self._terms.values()]
        g = 0
        for v in nums:
            g = math.gcd(g, v)
        scale = Fraction(den, g)
        if self.leading_term()[1] < 0:
            scale = -scale
        return self.scale(scale)

    # -- comparison / printing ---------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = MultiPoly.const(other, self.nvars)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def to_str(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"x{i + 1}" for i in range(self.nvars)]
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.items():
            mono = "*".join(
                n if k == 1 else f"{n}^{k}" for n, k in zip(names, exp) if k
            )
            a = abs(c)
            if not mono:
                body = str(a)
            elif a == 1:
                body = mono
            else:
                body = f"{a}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"MultiPoly({self.to_str()!r}, nvars={self.nvars})"


# ---------------------------------------------------------------------------
# parsing

def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("num", int(text[i:j]), i))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j], i))
            i = j
        elif ch in "+-*^/()":
            tokens.append((ch, ch, i))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", i)
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, names):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.index = {name: i for i, name in enumerate(names)}
        self.n = len(names)

    def peek(self):
        return self.tokens[self.pos]

    def take(self, kind=None):
        tok = self.tokens[self.pos]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            raise ParseError(f"expected {want}, found {tok[1]!r}", tok[2])
        self.pos += 1
        return tok

    def expr(self):
        value = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, at = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ParseError("division only by a nonzero constant", at)
                value = value.scale(1 / rhs.constant_value())
        return value

    def unary(self):
        if self.peek()[0] == "-":
            self.take()
            return -self.unary()
        if self.peek()[0] == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] == "-":
                raise ParseError("negative exponent", tok[2])
            exp = self.take("num")[1]
            base = base ** exp
        return base

    def atom(self):
        kind, value, at = self.peek()
        if kind == "num":
            self.take()
            return MultiPoly.const(value, self.n)
        if kind == "name":
            self.take()
            if value not in self.index:
                raise ParseError(f"unknown variable {value!r}", at)
            return MultiPoly.var(self.index[value], self.n)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        raise ParseError(f"unexpected token {value!r}" if value else "unexpected end of input", at)


def parse_poly(text: str, vars: Sequence[str]) -> MultiPoly:
    """Parse ``text`` over the ordered variable names ``vars``.

    >>> parse_poly("x^2*y + 3/2", ["x", "y"]).terms == {(2, 1): 1, (0, 0): Fraction(3, 2)}
    True
    """
    vars = list(vars)
    if len(set(vars)) != len(vars):
        raise ValueError("duplicate variable names")
    p = _Parser(text, vars)
    value = p.expr()
    p.take("end")
    return value


# ---------------------------------------------------------------------------
# operations

def arith(op: str, f: MultiPoly, g) -> MultiPoly:
    if op == "add":
        return f + _same(f, g)
    if op == "sub":
        return f - _same(f, g)
    if op == "mul":
        return f * _same(f, g)
    if op == "pow":
        return f ** g
    raise ValueError(f"unknown operation {op!r}")


def _same(f, g):
    if not isinstance(g, MultiPoly):
        raise TypeError("expected a MultiPoly operand")
    f._check(g)
    return g


def divide_exact(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Return q with f = q*g; raise NotDivisible otherwise.

    Reduction by the graded-lex leading term of g: with a single divisor the
    remainder is zero exactly when g divides f.
    """
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    gexp, gc = g.leading_term()
    rest = {e: c for e, c in g._terms.items() if e != gexp}
    r = dict(f._terms)
    q = {}
    while r:
        rexp = max(r, key=_grlex_key)
        if any(a < b for a, b in zip(rexp, gexp)):
            raise NotDivisible(f"{f} is not divisible by {g}")
        shift = tuple(a - b for a, b in zip(rexp, gexp))
        c = r.pop(rexp) / gc
        q[shift] = c
        for e, v in rest.items():
            key = tuple(a + b for a, b in zip(e, shift))
            s = r.get(key, 0) - c * v
            if s:
                r[key] = s
            else:
                r.pop(key, None)
    return MultiPoly._raw(q, f.nvars)


def divides(g: MultiPoly, f: MultiPoly) -> bool:
    try:
        divide_exact(f, g)
    except NotDivisible:
        return False
    return True


def derivative(f: MultiPoly, var: int) -> MultiPoly:
    return f.derivative(var)


def _content(f: MultiPoly, v: int) -> MultiPoly:
    """gcd of the coefficients of f viewed as a polynomial in x_v."""
    g = MultiPoly({}, f.nvars)
    for c in f.coeffs_in(v).values():
        g = _gcd(g, c)
        if g.is_constant() and not g.is_zero():
            return MultiPoly.const(1, f.nvars)
    return g


def _prem(a: MultiPoly, b: MultiPoly, v: int) -> MultiPoly:
    db = b.degree_in(v)
    lb = b.coeffs_in(v)[db]
    r = a
    while not r.is_zero() and r.degree_in(v) >= db:
        dr = r.degree_in(v)
        lr = r.coeffs_in(v)[dr]
        shift = [0] * a.nvars
        shift[v] = dr - db
        r = r * lb - (lr * b).mul_monomial(shift)
    return r


def _gcd(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    if f.is_zero():
        return g.normalized()
    if g.is_zero():
        return f.normalized()
    if f.is_constant() or g.is_constant():
        return MultiPoly.const(1, f.nvars)
    v = next(i for i in range(f.nvars) if f.involves(i) or g.involves(i))
    if not f.involves(v):
        return _gcd(f, _content(g, v))
    if not g.involves(v):
        return _gcd(_content(f, v), g)
    cf, cg = _content(f, v), _content(g, v)
    c = _gcd(cf, cg)
    a = divide_exact(f, cf).normalized()
    b = divide_exact(g, cg).normalized()
    if a.degree_in(v) < b.degree_in(v):
        a, b = b, a
    # primitive PRS in x_v
    while not b.is_zero() and b.degree_in(v) > 0:
        r = _prem(a, b, v)
        a = b
        b = r if r.is_zero() else divide_exact(r, _content(r, v)).normalized()
    if b.is_zero():
        h = divide_exact(a, _content(a, v))
    else:
        h = MultiPoly.const(1, f.nvars)
    return (c * h).normalized()


def gcd_multi(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """Greatest common divisor, normalized to primitive integer content with a
    positive graded-lex leading coefficient."""
    f._check(g)
    if f.is_zero() and g.is_zero():
        raise ValueError("gcd(0, 0) is undefined")
    return _gcd(f, g)


def squarefree_in_A(f: MultiPoly) -> bool:
    """True iff f is square-free in Q[x1..xn]; nonzero constants are units."""
    if f.is_zero():
        raise ValueError("the zero polynomial is not classified")
    if f.is_constant():
        return True
    g = f
    for i in range(f.nvars):
        g = gcd_multi(g, f.derivative(i))
        if g.is_constant():
            return True
    return g.is_constant()


def det_fraction_free(m: Sequence[Sequence[MultiPoly]]) -> MultiPoly:
    """Determinant by Bareiss elimination; every division is exact."""
    n = len(m)
    if n == 0 or any(len(row) != n for row in m):
        raise ValueError("determinant needs a non-empty square matrix")
    a = [list(row) for row in m]
    nv = a[0][0].nvars
    sign = 1
    prev = MultiPoly.const(1, nv)
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return MultiPoly({}, nv)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[k][k] * a[i][j] - a[i][k] * a[k][j]
                a[i][j] = divide_exact(num, prev)
        prev = a[k][k]
    return a[n - 1][n - 1] if sign > 0 else -a[n - 1][n - 1]


def from_terms(terms: Iterable, nvars: int) -> MultiPoly:
    return MultiPoly(dict(terms), nvars)
