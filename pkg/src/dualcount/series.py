"""Generating functions in q with fourth-root-of-unity phases.

The expression language covers exactly what the counting identities need:
rational scalars, powers of q, phases i^(linear form), binomial factors
(1 - i^L q^k)^e, products, signed sums, quotients, and averaging operators
avg(v in 0..n) that substitute v = 0..n and divide by n + 1.

Expressions parse from text and print back canonically (parse(print(e)) == e).
Expansion is exact over Gaussian rationals.  Identities are proven either by
clearing all denominators and comparing polynomials exactly ("cleared") or by
comparing truncated series to a stated order ("series").
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .errors import NotCoveredError
from .grouprep import CYCLIC, DIHEDRAL, ICOSAHEDRAL, OCTAHEDRAL, TETRAHEDRAL, GroupSpec

DEFAULT_ORDER = 64
IDENTITIES = ("KF1", "KF2", "KF3", "KF4", "PropX", "PropY", "PropA")


def max_order() -> int:
    """Series truncation cap; override with DUALCOUNT_MAX_ORDER."""
    return int(os.environ.get("DUALCOUNT_MAX_ORDER", str(DEFAULT_ORDER)))


# -- Gaussian rationals -------------------------------------------------------


class GaussRat:
    """a + b*i with exact rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, *a):
        raise AttributeError("GaussRat is immutable")

    @staticmethod
    def i_power(c: int) -> "GaussRat":
        return ((GaussRat(1), GaussRat(0, 1), GaussRat(-1), GaussRat(0, -1))[c % 4])

    def __add__(self, other):
        other = _as_gauss(other)
        return GaussRat(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gauss(other)
        return GaussRat(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _as_gauss(other) - self

    def __mul__(self, other):
        other = _as_gauss(other)
        return GaussRat(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def inverse(self) -> "GaussRat":
        n = self.re * self.re + self.im * self.im
        if not n:
            raise ZeroDivisionError("inverse of zero")
        return GaussRat(self.re / n, -self.im / n)

    def __truediv__(self, other):
        return self * _as_gauss(other).inverse()

    def __bool__(self):
        return bool(self.re or self.im)

    def __eq__(self, other):
        other = _as_gauss(other)
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def rational(self) -> Fraction:
        if self.im:
            raise ValueError(f"{self!r} is not real")
        return self.re

    def __repr__(self):
        if not self.im:
            return str(self.re)
        return f"({self.re}{'+' if self.im >= 0 else ''}{self.im}i)"


def _as_gauss(x) -> GaussRat:
    if isinstance(x, GaussRat):
        return x
    if isinstance(x, (int, Fraction)):
        return GaussRat(x)
    raise TypeError(f"cannot coerce {x!r} to GaussRat")


# -- truncated series ---------------------------------------------------------


class GaussSeries:
    """Power series in q truncated at a fixed order, with GaussRat coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=None):
        if order < 0:
            raise ValueError("order must be nonnegative")
        self.order = order
        if coeffs is None:
            coeffs = [GaussRat() for _ in range(order + 1)]
        else:
            coeffs = [_as_gauss(c) for c in coeffs]
            coeffs += [GaussRat() for _ in range(order + 1 - len(coeffs))]
            del coeffs[order + 1:]
        self.coeffs = coeffs

    @staticmethod
    def one(order: int) -> "GaussSeries":
        s = GaussSeries(order)
        s.coeffs[0] = GaussRat(1)
        return s

    @staticmethod
    def term(order: int, scalar, shift: int) -> "GaussSeries":
        s = GaussSeries(order)
        if 0 <= shift <= order:
            s.coeffs[shift] = _as_gauss(scalar)
        return s

    def coeff(self, k: int) -> GaussRat:
        if not 0 <= k <= self.order:
            raise IndexError(f"coefficient {k} beyond truncation order {self.order}")
        return self.coeffs[k]

    def _check(self, other: "GaussSeries"):
        if self.order != other.order:
            raise ValueError("series orders differ")

    def __add__(self, other):
        self._check(other)
        return GaussSeries(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return GaussSeries(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __mul__(self, other):
        self._check(other)
        out = [GaussRat() for _ in range(self.order + 1)]
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return GaussSeries(self.order, out)

    def scale(self, c) -> "GaussSeries":
        c = _as_gauss(c)
        return GaussSeries(self.order, [a * c for a in self.coeffs])

    def shift(self, k: int) -> "GaussSeries":
        return GaussSeries(self.order, [GaussRat()] * k + self.coeffs)

    def apply_binom(self, u: GaussRat, k: int, e: int) -> "GaussSeries":
        """Multiply by (1 - u q^k)^e, exponent by exponent."""
        if k < 1:
            raise ValueError("binomial factor needs a positive q power")
        cur = list(self.coeffs)
        for _ in range(abs(e)):
            if e > 0:
                nxt = list(cur)
                for j in range(k, self.order + 1):
                    nxt[j] = nxt[j] - u * cur[j - k]
            else:
                nxt = list(cur)
                for j in range(k, self.order + 1):
                    nxt[j] = nxt[j] + u * nxt[j - k]
            cur = nxt
        return GaussSeries(self.order, cur)

    def inverse(self) -> "GaussSeries":
        c0 = self.coeffs[0]
        if not c0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        inv0 = c0.inverse()
        out = [inv0] + [GaussRat() for _ in range(self.order)]
        for j in range(1, self.order + 1):
            acc = GaussRat()
            for t in range(1, j + 1):
                if self.coeffs[t]:
                    acc = acc + self.coeffs[t] * out[j - t]
            out[j] = -inv0 * acc
        return GaussSeries(self.order, out)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def integer_coeffs(self) -> list[int]:
        out = []
        for c in self.coeffs:
            r = c.rational()
            if r.denominator != 1:
                raise ValueError(f"non-integer coefficient {r}")
            out.append(r.numerator)
        return out

    def __eq__(self, other):
        return (isinstance(other, GaussSeries) and self.order == other.order
                and self.coeffs == other.coeffs)

    def __repr__(self):
        return f"GaussSeries({self.order}, {self.coeffs[:8]}...)"


# -- linear forms modulo 4 ----------------------------------------------------


@dataclass(frozen=True)
class LinForm:
    """const + sum(coeff * var) with everything taken mod 4."""

    const: int
    terms: tuple[tuple[str, int], ...]

    def evaluate(self, env: dict) -> int:
        total = self.const
        for var, c in self.terms:
            if var not in env:
                raise ValueError(f"unbound variable {var!r}")
            total += c * env[var]
        return total % 4

    def substitute(self, env: dict) -> "LinForm":
        const = self.const
        keep = []
        for var, c in self.terms:
            if var in env:
                const += c * env[var]
            else:
                keep.append((var, c))
        return make_lin(const, keep)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.terms)


def make_lin(const: int = 0, terms=()) -> LinForm:
    acc: dict[str, int] = {}
    for var, c in terms:
        acc[var] = (acc.get(var, 0) + c) % 4
    clean = tuple(sorted((v, c) for v, c in acc.items() if c))
    return LinForm(const % 4, clean)


# -- expression nodes ---------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction

    def __post_init__(self):
        if self.value < 0:
            raise ValueError("negative scalars are expressed through sums")


@dataclass(frozen=True)
class QPow:
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("q exponent must be positive")


@dataclass(frozen=True)
class Root:
    """i raised to a linear form: a constant or a single-variable phase."""

    lin: LinForm

    def __post_init__(self):
        if len(self.lin.terms) > 1:
            raise ValueError("phase factors carry at most one variable")
        if not self.lin.terms and self.lin.const not in (1, 3):
            raise ValueError("constant phase must be i or i^3")


@dataclass(frozen=True)
class Binom:
    """(1 - i^phase q^k)^e."""

    phase: LinForm
    k: int
    e: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("q exponent must be positive")
        if self.e == 0:
            raise ValueError("binomial exponent must be nonzero")


@dataclass(frozen=True)
class Prod:
    factors: tuple

    def __post_init__(self):
        if len(self.factors) < 2:
            raise ValueError("products need at least two factors")


@dataclass(frozen=True)
class Sum:
    terms: tuple  # of (sign, node) with sign +-1

    def __post_init__(self):
        if not self.terms:
            raise ValueError("sums need at least one term")
        if len(self.terms) == 1 and self.terms[0][0] == 1:
            raise ValueError("a one-term positive sum must be unwrapped")


@dataclass(frozen=True)
class Div:
    num: object
    den: object


@dataclass(frozen=True)
class Avg:
    """(1/(hi+1)) * sum over var = 0..hi of the body."""

    var: str
    hi: int
    body: object

    def __post_init__(self):
        if self.hi < 0:
            raise ValueError("avg upper bound must be nonnegative")


GenExpr = (Num, QPow, Root, Binom, Prod, Sum, Div, Avg)


def mknum(value) -> Num:
    return Num(Fraction(value))


def mkprod(*factors):
    flat = []
    for f in factors:
        if isinstance(f, Prod):
            flat.extend(f.factors)
        elif isinstance(f, Num) and f.value == 1:
            continue
        else:
            flat.append(f)
    if not flat:
        return mknum(1)
    if len(flat) == 1:
        return flat[0]
    return Prod(tuple(flat))


def mksum(*signed_terms):
    flat = []
    for sign, node in signed_terms:
        if isinstance(node, Sum):
            flat.extend((sign * s, t) for s, t in node.terms)
        else:
            flat.append((sign, node))
    if len(flat) == 1 and flat[0][0] == 1:
        return flat[0][1]
    return Sum(tuple(flat))


def mkroot(const: int = 0, var: str | None = None, coeff: int = 1):
    lin = make_lin(const, [(var, coeff)] if var else [])
    if not lin.terms:
        if lin.const == 0:
            return mknum(1)
        if lin.const == 2:
            raise ValueError("a bare -1 phase must be expressed through sums")
    return Root(lin)


# -- parsing ------------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_PUNCT = {"(": "LP", ")": "RP", "^": "CARET", "+": "PLUS", "-": "MINUS", "/": "SLASH"}


def _tokenize(text: str):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("INT", int(text[i:j]), i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("NAME", text[i:j], i))
            i = j
            continue
        if text.startswith("..", i):
            toks.append(("DOTDOT", "..", i))
            i += 2
            continue
        if ch in _PUNCT:
            toks.append((_PUNCT[ch], ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i)
    toks.append(("EOF", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, ahead=0):
        return self.toks[min(self.i + ahead, len(self.toks) - 1)]

    def next(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect(self, kind, what=None):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {what or kind}, found {tok[1]!r}", tok[2])
        return tok

    # expr := ['-'] term { ('+'|'-') term }
    def parse_expr(self):
        terms = []
        sign = 1
        if self.peek()[0] == "MINUS":
            self.next()
            sign = -1
        terms.append((sign, self.parse_term()))
        while self.peek()[0] in ("PLUS", "MINUS"):
            sign = 1 if self.next()[0] == "PLUS" else -1
            terms.append((sign, self.parse_term()))
        return mksum(*terms)

    # term := avg-header term | fprod { '/' fprod }
    def parse_term(self):
        if self.peek() == ("NAME", "avg", self.peek()[2]):
            return self.parse_avg()
        node = self.parse_fprod()
        while self.peek()[0] == "SLASH":
            self.next()
            rhs = self.parse_fprod()
            if isinstance(node, Num) and isinstance(rhs, Num):
                if rhs.value == 0:
                    raise ParseError("division by zero", self.peek()[2])
                node = mknum(node.value / rhs.value)
            else:
                node = Div(node, rhs)
        return node

    def parse_avg(self):
        self.next()  # 'avg'
        self.expect("LP", "'('")
        var = self.expect("NAME", "variable name")[1]
        if var in ("q", "i", "avg", "in"):
            raise ParseError(f"{var!r} cannot be an avg variable", self.peek()[2])
        tok = self.expect("NAME", "'in'")
        if tok[1] != "in":
            raise ParseError("expected 'in'", tok[2])
        lo = self.expect("INT", "range start")
        if lo[1] != 0:
            raise ParseError("avg ranges start at 0", lo[2])
        self.expect("DOTDOT", "'..'")
        hi = self.expect("INT", "range end")[1]
        self.expect("RP", "')'")
        body = self.parse_term()
        return Avg(var, hi, body)

    def parse_fprod(self):
        factors = [self.parse_factor()]
        while self.peek()[0] in ("INT", "LP") or (
                self.peek()[0] == "NAME" and self.peek()[1] in ("q", "i")):
            factors.append(self.parse_factor())
        return mkprod(*factors)

    def parse_factor(self):
        kind, value, pos = self.peek()
        if kind == "INT":
            self.next()
            return mknum(value)
        if kind == "NAME" and value == "q":
            self.next()
            k = 1
            if self.peek()[0] == "CARET":
                self.next()
                ktok = self.expect("INT", "integer exponent")
                k = ktok[1]
                if k < 1:
                    raise ParseError("q exponent must be positive", ktok[2])
            return QPow(k)
        if kind == "NAME" and value == "i":
            return self._root_from_lin(self.parse_phase_atom())
        if kind == "LP":
            saved = self.i
            try:
                return self.parse_binom()
            except ParseError:
                self.i = saved
            try:
                return self._root_from_lin(self.parse_phase_atom())
            except ParseError:
                self.i = saved
            self.next()
            inner = self.parse_expr()
            self.expect("RP", "')'")
            return inner
        raise ParseError(f"unexpected token {value!r}", pos)

    def _root_from_lin(self, lin: LinForm):
        if lin.terms:
            return Root(lin)
        if lin.const == 0:
            return mknum(1)
        if lin.const == 2:
            # (-1) constant phase: fold into a signed sum
            return mksum((-1, mknum(1)))
        return Root(lin)

    # phase atoms: i, i^X, (-1)^X with X = [-] [INT] [NAME] | INT
    def parse_phase_atom(self) -> LinForm:
        kind, value, pos = self.peek()
        if kind == "NAME" and value == "i":
            self.next()
            scale = 1
        elif kind == "LP":
            if not (self.peek(1)[0] == "MINUS" and self.peek(2)[0] == "INT"
                    and self.peek(2)[1] == 1 and self.peek(3)[0] == "RP"):
                raise ParseError("not a phase atom", pos)
            for _ in range(4):
                self.next()
            self.expect("CARET", "'^' after (-1)")
            return self._parse_phase_exponent(2, required=True)
        else:
            raise ParseError("not a phase atom", pos)
        if self.peek()[0] != "CARET":
            return make_lin(scale)
        self.next()
        return self._parse_phase_exponent(scale, required=True)

    def _parse_phase_exponent(self, scale: int, required: bool) -> LinForm:
        sign = 1
        if self.peek()[0] == "MINUS":
            self.next()
            sign = -1
        coeff = None
        if self.peek()[0] == "INT":
            coeff = self.next()[1]
        var = None
        if self.peek()[0] == "NAME" and self.peek()[1] not in ("q", "i", "avg", "in"):
            var = self.next()[1]
        if var is None and coeff is None:
            raise ParseError("expected an exponent", self.peek()[2])
        if var is None:
            return make_lin(scale * sign * coeff)
        return make_lin(0, [(var, scale * sign * (1 if coeff is None else coeff))])

    # binom := '(' 1 ('-'|'+') atoms q ')' ['^' ['-'] INT]
    def parse_binom(self) -> Binom:
        start = self.peek()[2]
        self.expect("LP", "'('")
        one = self.expect("INT", "literal 1")
        if one[1] != 1:
            raise ParseError("binomial factors start with 1", one[2])
        sgn = self.next()
        if sgn[0] == "MINUS":
            const = 0
        elif sgn[0] == "PLUS":
            const = 2
        else:
            raise ParseError("expected '+' or '-'", sgn[2])
        terms = []
        while not (self.peek()[0] == "NAME" and self.peek()[1] == "q"):
            lin = self.parse_phase_atom()
            const += lin.const
            terms.extend(lin.terms)
        self.next()  # 'q'
        k = 1
        if self.peek()[0] == "CARET":
            self.next()
            ktok = self.expect("INT", "integer exponent")
            k = ktok[1]
            if k < 1:
                raise ParseError("q exponent must be positive", ktok[2])
        self.expect("RP", "')'")
        e = 1
        if self.peek()[0] == "CARET":
            self.next()
            esign = 1
            if self.peek()[0] == "MINUS":
                self.next()
                esign = -1
            etok = self.expect("INT", "integer exponent")
            e = esign * etok[1]
            if e == 0:
                raise ParseError("binomial exponent must be nonzero", etok[2])
        del start
        return Binom(make_lin(const, terms), k, e)


def parse_genexpr(text: str):
    p = _Parser(text)
    node = p.parse_expr()
    tok = p.peek()
    if tok[0] != "EOF":
        raise ParseError(f"trailing input {tok[1]!r}", tok[2])
    return node


# -- canonical printing -------------------------------------------------------


def _phase_atoms(lin: LinForm) -> list[str]:
    out = []
    if lin.const == 1:
        out.append("i")
    elif lin.const == 3:
        out.append("i^3")
    for var, c in lin.terms:
        if c == 1:
            out.append(f"i^{var}")
        elif c == 2:
            out.append(f"(-1)^{var}")
        else:
            out.append(f"i^-{var}")
    return out


def to_text(node) -> str:
    if isinstance(node, Num):
        v = node.value
        if v.denominator == 1:
            return str(v.numerator)
        return f"({v.numerator}/{v.denominator})"
    if isinstance(node, QPow):
        return "q" if node.k == 1 else f"q^{node.k}"
    if isinstance(node, Root):
        atoms = _phase_atoms(node.lin)
        if len(atoms) != 1:
            raise AssertionError("phase factors print as single atoms")
        return atoms[0]
    if isinstance(node, Binom):
        const = node.phase.const
        sign = "-"
        shown = node.phase
        if const == 2:
            sign = "+"
            shown = make_lin(0, node.phase.terms)
        atoms = _phase_atoms(shown)
        qtxt = "q" if node.k == 1 else f"q^{node.k}"
        body = f"(1 {sign} {' '.join(atoms + [qtxt]) if atoms else qtxt})"
        return body if node.e == 1 else f"{body}^{node.e}"
    if isinstance(node, Prod):
        parts = []
        for f in node.factors:
            txt = to_text(f)
            if isinstance(f, (Sum, Div, Avg)):
                txt = f"({txt})"
            parts.append(txt)
        return " ".join(parts)
    if isinstance(node, Sum):
        parts = []
        for idx, (sign, term) in enumerate(node.terms):
            txt = to_text(term)
            if isinstance(term, Sum):
                txt = f"({txt})"
            if idx == 0:
                parts.append(txt if sign > 0 else f"-{txt}")
            else:
                parts.append(f"{'+' if sign > 0 else '-'} {txt}")
        return " ".join(parts)
    if isinstance(node, Div):
        num = to_text(node.num)
        if isinstance(node.num, (Sum, Avg)):
            num = f"({num})"
        den = to_text(node.den)
        if isinstance(node.den, (Sum, Div, Avg)):
            den = f"({den})"
        return f"{num} / {den}"
    if isinstance(node, Avg):
        body = to_text(node.body)
        if isinstance(node.body, Sum):
            body = f"({body})"
        return f"avg({node.var} in 0..{node.hi}) {body}"
    raise TypeError(f"not an expression node: {node!r}")


# -- expansion ----------------------------------------------------------------


def expand(node, order: int | None = None, env: dict | None = None) -> GaussSeries:
    """Exact series expansion of node through q^order."""
    if order is None:
        order = max_order()
    return _expand(node, order, env or {})


def _expand(node, order: int, env: dict) -> GaussSeries:
    if isinstance(node, Num):
        return GaussSeries.term(order, GaussRat(node.value), 0)
    if isinstance(node, QPow):
        return GaussSeries.term(order, GaussRat(1), node.k)
    if isinstance(node, Root):
        return GaussSeries.term(order, GaussRat.i_power(node.lin.evaluate(env)), 0)
    if isinstance(node, Binom):
        u = GaussRat.i_power(node.phase.evaluate(env))
        return GaussSeries.one(order).apply_binom(u, node.k, node.e)
    if isinstance(node, Prod):
        acc = GaussSeries.one(order)
        for f in node.factors:
            # binomial factors apply by recurrence instead of full products
            if isinstance(f, Binom):
                u = GaussRat.i_power(f.phase.evaluate(env))
                acc = acc.apply_binom(u, f.k, f.e)
            else:
                acc = acc * _expand(f, order, env)
        return acc
    if isinstance(node, Sum):
        acc = GaussSeries(order)
        for sign, term in node.terms:
            s = _expand(term, order, env)
            acc = acc + s if sign > 0 else acc - s
        return acc
    if isinstance(node, Div):
        return _expand(node.num, order, env) * _expand(node.den, order, env).inverse()
    if isinstance(node, Avg):
        acc = GaussSeries(order)
        for v in range(node.hi + 1):
            acc = acc + _expand(node.body, order, {**env, node.var: v})
        return acc.scale(Fraction(1, node.hi + 1))
    raise TypeError(f"not an expression node: {node!r}")


def coeff(node, k: int, env: dict | None = None) -> Fraction:
    """Coefficient of q^k, guarded by the truncation cap."""
    cap = max_order()
    if k > cap:
        raise ValueError(
            f"order {k} exceeds the cap {cap}; raise DUALCOUNT_MAX_ORDER to allow it")
    return expand(node, k, env).coeff(k).rational()


# -- flattening and exact identity proofs --------------------------------------


class FlattenError(ValueError):
    pass


@dataclass
class _FlatTerm:
    scalar: GaussRat
    qshift: int
    factors: dict  # (phase const mod 4, k) -> exponent


def _flatten(node, env: dict) -> list[_FlatTerm]:
    if isinstance(node, Num):
        if node.value == 0:
            return []
        return [_FlatTerm(GaussRat(node.value), 0, {})]
    if isinstance(node, QPow):
        return [_FlatTerm(GaussRat(1), node.k, {})]
    if isinstance(node, Root):
        return [_FlatTerm(GaussRat.i_power(node.lin.evaluate(env)), 0, {})]
    if isinstance(node, Binom):
        c = node.phase.evaluate(env)
        return [_FlatTerm(GaussRat(1), 0, {(c, node.k): node.e})]
    if isinstance(node, Prod):
        terms = [_FlatTerm(GaussRat(1), 0, {})]
        for f in node.factors:
            sub = _flatten(f, env)
            terms = [_merge_terms(a, b) for a in terms for b in sub]
        return terms
    if isinstance(node, Sum):
        out = []
        for sign, term in node.terms:
            for t in _flatten(term, env):
                out.append(_FlatTerm(t.scalar if sign > 0 else -t.scalar,
                                     t.qshift, t.factors))
        return out
    if isinstance(node, Div):
        den = _flatten(node.den, env)
        if len(den) != 1:
            raise FlattenError("denominator does not flatten to a single term")
        d = den[0]
        inv = _FlatTerm(d.scalar.inverse(), -d.qshift,
                        {key: -e for key, e in d.factors.items()})
        return [_merge_terms(t, inv) for t in _flatten(node.num, env)]
    if isinstance(node, Avg):
        out = []
        w = GaussRat(Fraction(1, node.hi + 1))
        for v in range(node.hi + 1):
            for t in _flatten(node.body, {**env, node.var: v}):
                out.append(_FlatTerm(t.scalar * w, t.qshift, t.factors))
        return out
    raise TypeError(f"not an expression node: {node!r}")


def _merge_terms(a: _FlatTerm, b: _FlatTerm) -> _FlatTerm:
    factors = dict(a.factors)
    for key, e in b.factors.items():
        factors[key] = factors.get(key, 0) + e
        if factors[key] == 0:
            del factors[key]
    return _FlatTerm(a.scalar * b.scalar, a.qshift + b.qshift, factors)


def cleared_difference_degree(lhs, rhs) -> tuple[bool, int]:
    """Prove lhs == rhs by clearing denominators; returns (holds, degree)."""
    terms = _flatten(lhs, {}) + [
        _FlatTerm(-t.scalar, t.qshift, t.factors) for t in _flatten(rhs, {})]
    if not terms:
        return True, 0
    need: dict = {}
    for t in terms:
        for key, e in t.factors.items():
            need[key] = max(need.get(key, 0), -e)
    base_shift = -min(min((t.qshift for t in terms), default=0), 0)
    degree = 0
    for t in terms:
        d = t.qshift + base_shift
        for key, e in t.factors.items():
            d += (e + need.get(key, 0)) * key[1]
        for key, extra in need.items():
            if key not in t.factors:
                d += extra * key[1]
        degree = max(degree, d)
    total = GaussSeries(degree)
    for t in terms:
        poly = GaussSeries.term(degree, t.scalar, t.qshift + base_shift)
        for key, extra in need.items():
            e = t.factors.get(key, 0) + extra
            if e:
                poly = poly.apply_binom(GaussRat.i_power(key[0]), key[1], e)
        total = total + poly
    return total.is_zero(), degree


# -- built-in generating functions ---------------------------------------------


def _b(k: int, e: int = -1, terms=(), const: int = 0):
    """(1 - i^(const + terms) q^k)^e, or None when e == 0 (factor absent)."""
    if e == 0:
        return None
    return Binom(make_lin(const, terms), k, e)


def _prod(*factors):
    return mkprod(*[f for f in factors if f is not None])


def _genx_sp(g: GroupSpec):
    """Sum over n of q^(2n) N(gamma, Sp(n)) in closed form."""
    if g.family == CYCLIC:
        return _prod(_b(2, -(g.param // 2 + 1)))
    if g.family == DIHEDRAL:
        m = g.param
        if m % 2 == 0:
            k = m // 2
            return _prod(_b(2, -(k + 4)), _b(4, -(k - 1)))
        k = (m - 1) // 2
        return _prod(_b(2, -(k + 3)), _b(4, -k))
    if g.family == TETRAHEDRAL:
        return _prod(_b(2, -3), _b(4, -1), _b(6, -1))
    if g.family == OCTAHEDRAL:
        return _prod(_b(2, -4), _b(4, -2), _b(6, -2))
    return _prod(_b(2, -3), _b(4, -1), _b(6, -3), _b(8, -1), _b(10, -1))


def _genx_so(g: GroupSpec):
    """Sum over n of q^(2n+1) N(gamma, SO(2n+1)) in closed form."""
    sgn = Root(make_lin(0, [("a", 2)]))
    a = [("a", 2)]
    if g.family == CYCLIC:
        return Avg("a", 1, _prod(sgn, _b(1, -1, a), _b(2, -(g.param // 2))))
    if g.family == DIHEDRAL:
        m = g.param
        if m % 2 == 0:
            k = m // 2
            body = _prod(
                sgn,
                _b(1, -1, a),
                _b(1, -1, a + [("b0", 2)]),
                _b(1, -1, a + [("b1", 2)]),
                _b(1, -1, a + [("b0", 2), ("b1", 2)]),
                _b(2, -(k - 1), [("b0", 2)]),
                _b(4, -k),
            )
            return Avg("a", 1, Avg("b0", 1, Avg("b1", 1, body)))
        k = (m - 1) // 2
        body = _prod(
            sgn,
            _b(1, -1, a),
            _b(1, -1, a + [("b", 2)]),
            _b(2, -1),
            _b(2, -k, [("b", 2)]),
            _b(4, -k),
        )
        return Avg("a", 1, Avg("b", 1, body))
    if g.family == TETRAHEDRAL:
        body = _prod(sgn, _b(1, -1, a), _b(2, -1), _b(3, -1, a), _b(4, -2))
        return Avg("a", 1, body)
    if g.family == OCTAHEDRAL:
        body = _prod(
            sgn,
            _b(1, -1, a),
            _b(1, -1, a + [("b", 2)]),
            _b(2, -1, [("b", 2)]),
            _b(3, -1, a),
            _b(3, -1, a + [("b", 2)]),
            _b(4, -2),
            _b(8, -1),
        )
        return Avg("a", 1, Avg("b", 1, body))
    body = _prod(sgn, _b(1, -1, a), _b(3, -2, a), _b(4, -3), _b(5, -1, a),
                 _b(8, -1), _b(12, -1))
    return Avg("a", 1, body)


def _geny_tree(e: int, m: int, side: str):
    """Refined octahedral sector series for the (e, m) label pair.

    Labels follow the symplectic side: e is the character of the relabeling
    involution, m the sector.  The orthogonal series for the same (e, m) is
    the dual partner, whose own involution/sector labels are the swap (m, e).
    """
    a = [("a", 2)]
    if (e, m) == (0, 0) and side == "Sp":
        return _prod(
            mknum(Fraction(1, 2)),
            mksum((1, _genx_sp(GroupSpec.binary_octahedral())),
                  (1, _prod(_b(4, -4), _b(12, -1)))),
        )
    if (e, m) == (0, 0) and side == "Spin":
        body = _prod(
            Root(make_lin(0, a)),
            _b(1, -1, a),
            _b(1, -1, a + [("b", 1)]),
            _b(2, -1, [("b", 1)]),
            _b(3, -1, a),
            _b(3, -1, a + [("b", 3)]),
            _b(4, -2),
            _b(8, -1),
        )
        return Avg("a", 1, Avg("b", 3, body))
    if (e, m) == (0, 1) and side == "Sp":
        return _prod(_b(2, -2), _b(4, -1), _b(6, -1), _b(8, -1))
    if (e, m) in ((0, 1), (1, 1)) and side == "Spin":
        bracket = mksum(
            (1, _prod(_b(1, -1, a + [("b", 1)]), _b(3, -1, a + [("b", 3)]))),
            (1, _prod(_b(1, -1, a), _b(3, -1, a))),
            (-1, mknum(1)),
        )
        factors = [Root(make_lin(0, a))]
        if e == 1:
            factors.append(Root(make_lin(0, [("b", 2)])))
        factors += [bracket, _b(4, -2), _b(8, -1)]
        return Avg("a", 1, Avg("b", 3, _prod(*factors)))
    raise NotCoveredError(
        f"not covered: no built-in refined series for sector ({e},{m}) on the "
        f"{side} side")


def builtin_genfun(g: GroupSpec, target: str):
    """Closed-form series for a group and target token.

    Tokens: "Sp" (coefficient of q^(2n) is the Sp(n) count), "SO_odd"
    (coefficient of q^(2n+1) is the SO(2n+1) count), and for Ohat the refined
    sector series "refined:e,m:Sp" / "refined:e,m:Spin".  A refined token is
    labeled by the symplectic-side pair (e, m); the Spin series under the same
    token is its dual partner, i.e. the orthogonal sector with labels swapped
    to (m, e).  Covered: (0,0) and (0,1) on both sides, (1,1) on Spin.
    """
    if target == "Sp":
        return _genx_sp(g)
    if target == "SO_odd":
        return _genx_so(g)
    if target.startswith("refined:"):
        if g.family != OCTAHEDRAL:
            raise NotCoveredError(
                "not covered: refined series are only available for Ohat")
        parts = target.split(":")
        if len(parts) == 3 and "," in parts[1]:
            es, ms = parts[1].split(",", 1)
            if es in ("0", "1") and ms in ("0", "1") and parts[2] in ("Sp", "Spin"):
                return _geny_tree(int(es), int(ms), parts[2])
        raise NotCoveredError(f"not covered: unknown refined token {target!r}")
    raise NotCoveredError(f"not covered: no built-in series for target {target!r}")


# -- counting identities --------------------------------------------------------


def _twisted(powers_and_phases):
    """Factors of Ftilde((-1)^a q, ...): each q^p picks up an extra phase 2pa."""
    out = []
    for p, terms in powers_and_phases:
        out.append(_b(p, -1, [("a", 2 * p)] + list(terms)))
    return out


def _check_positive(values, what):
    for x in values:
        if x < 1:
            raise ValueError(f"{what} must be positive integers")


def _kf1_trees(k: tuple, v: tuple):
    s = len(k)
    _check_positive(k, "k parameters")
    _check_positive(v, "v parameters")
    if s == 1:
        f_pows = [4 * k[0] - 2]
        ft_pows = [2 * k[0] - 1]
    elif s == 2:
        if not k[0] < k[1]:
            raise ValueError("KF1 with two k parameters needs k1 < k2")
        f_pows = [2 * k[1] - 2 * k[0], 4 * k[0] - 2, 4 * k[1] - 2]
        ft_pows = [4 * k[1] - 4 * k[0], 2 * k[0] - 1, 2 * k[1] - 1]
    elif s == 4:
        k1, k2, k3, k4 = k
        if not (k1 < k3 <= k4 and k1 + k2 == k3 + k4):
            raise ValueError(
                "KF1 with four k parameters needs k1 < k3 <= k4 and k1+k2 = k3+k4")
        f_pows = [2 * k1 + 2 * k2 - 2, 2 * k3 - 2 * k1, 2 * k4 - 2 * k1,
                  4 * k1 - 2, 4 * k2 - 2, 4 * k3 - 2, 4 * k4 - 2]
        ft_pows = [4 * k1 + 4 * k2 - 4, 4 * k3 - 4 * k1, 4 * k4 - 4 * k1,
                   2 * k1 - 1, 2 * k2 - 1, 2 * k3 - 1, 2 * k4 - 1]
    else:
        raise ValueError("KF1 takes 1, 2 or 4 k parameters")
    vf = [2 * x for x in v]
    lhs = _prod(QPow(2 * k[0] - 1), *[_b(p) for p in f_pows + vf])
    rhs = Avg("a", 1, _prod(Root(make_lin(0, [("a", 2)])),
                            *_twisted([(p, []) for p in ft_pows + vf])))
    return lhs, rhs


def _kf2_trees(k: tuple, v0: tuple, v1: tuple):
    s = 2 * len(k)
    _check_positive(k, "k parameters")
    _check_positive(v0 + v1, "v parameters")
    t = [("b", 2)]
    if s == 2:
        f = [_b(4 * k[0] - 2, -2)]
        ft = [(2 * k[0] - 1, []), (2 * k[0] - 1, t)]
    elif s == 4:
        if not k[0] < k[1]:
            raise ValueError("KF2 with two k parameters needs k1 < k2")
        f = [_b(2 * k[0] + 2 * k[1] - 2), _b(2 * k[1] - 2 * k[0]),
             _b(4 * k[0] - 2, -2), _b(4 * k[1] - 2, -2)]
        ft = [(4 * k[0] + 4 * k[1] - 4, []), (4 * k[1] - 4 * k[0], []),
              (2 * k[0] - 1, []), (2 * k[0] - 1, t),
              (2 * k[1] - 1, []), (2 * k[1] - 1, t)]
    else:
        raise ValueError("KF2 takes 1 or 2 k parameters")
    f += [_b(2 * x) for x in v0] + [_b(2 * x) for x in v1]
    ft += [(2 * x, []) for x in v0] + [(2 * x, t) for x in v1]
    lhs = _prod(QPow(2 * k[0] - 1), *f)
    rhs = Avg("a", 1, Avg("b", 1, _prod(Root(make_lin(0, [("a", 2)])),
                                        *_twisted(ft))))
    return lhs, rhs


def _kf3_trees(k: int, vmat: tuple):
    # vmat = (v00, v01, v10, v11) indexed by (p1, p0)
    _check_positive((k,), "k parameter")
    corners = [(0, 0), (0, 1), (1, 0), (1, 1)]
    for vs in vmat:
        _check_positive(vs, "v parameters")
    f = [_b(4 * k - 2, -5)]
    ft = [(8 * k - 4, [])]
    for (p1, p0), vs in zip(corners, vmat):
        phase = [("b0", 2 * p0), ("b1", 2 * p1)]
        ft.append((2 * k - 1, phase))
        for x in vs:
            f.append(_b(2 * x))
            ft.append((2 * x, phase))
    lhs = _prod(QPow(2 * k - 1), *f)
    rhs = Avg("a", 1, Avg("b0", 1, Avg("b1", 1, _prod(
        Root(make_lin(0, [("a", 2)])), *_twisted(ft)))))
    return lhs, rhs


def _kf4_trees(k1: int, k2: int, v: tuple):
    _check_positive((k1, k2), "k parameters")
    _check_positive(v, "v parameters")
    if not k1 < k2:
        raise ValueError("KF4 needs k1 < k2")
    vf = [_b(2 * x) for x in v]
    f = _prod(_b(2 * k1 + 2 * k2 - 2), _b(2 * k2 - 2 * k1, -2),
              _b(4 * k1 - 2, -2), _b(4 * k2 - 2, -2), *vf)
    f0 = _prod(_b(2 * k1 + 2 * k2 - 2), _b(4 * k2 - 4 * k1),
               _b(8 * k1 - 4), _b(8 * k2 - 4), *vf)
    ft = [(4 * k1 + 4 * k2 - 4, []), (4 * k2 - 4 * k1, []),
          (2 * k2 - 2 * k1, [("b", 1)]),
          (2 * k1 - 1, []), (2 * k1 - 1, [("b", 1)]),
          (2 * k2 - 1, []), (2 * k2 - 1, [("b", 3)])]
    ft += [(2 * x, []) for x in v]
    lhs = _prod(mknum(Fraction(1, 2)), QPow(2 * k1 - 1), mksum((1, f), (1, f0)))
    rhs = Avg("a", 1, Avg("b", 3, _prod(Root(make_lin(0, [("a", 2)])),
                                        *_twisted(ft))))
    return lhs, rhs


def identity_trees(identity: str, params):
    """The two sides of a named identity at given parameters."""
    p = parse_identity_params(identity, params)
    if identity == "KF1":
        return _kf1_trees(p["k"], p["v"])
    if identity == "KF2":
        return _kf2_trees(p["k"], p["v0"], p["v1"])
    if identity == "KF3":
        return _kf3_trees(p["k"], p["v"])
    if identity == "KF4":
        return _kf4_trees(p["k1"], p["k2"], p["v"])
    if identity == "PropA":
        return _kf4_trees(1, 2, (2,))
    if identity == "PropX":
        return (_prod(QPow(1), _geny_tree(0, 1, "Sp")), _geny_tree(0, 1, "Spin"))
    if identity == "PropY":
        return (_geny_tree(1, 1, "Spin"), mknum(0))
    raise ValueError(f"unknown identity {identity!r}; choose from {IDENTITIES}")


def _ints(text: str, what: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"could not parse {what} from {text!r}") from None


def parse_identity_params(identity: str, params) -> dict:
    """Normalize string or dict parameters for a named identity."""
    if identity in ("PropX", "PropY", "PropA"):
        if params not in (None, "", {}):
            raise ValueError(f"{identity} takes no parameters")
        return {}
    if params is None:
        raise ValueError(f"{identity} requires parameters")
    if isinstance(params, dict):
        return params
    groups = [p.strip() for p in str(params).split(";")]
    if identity == "KF1":
        if len(groups) != 4:
            raise ValueError("KF1 parameters look like 's;k1,..;l;v1,..'")
        s = int(groups[0])
        k = _ints(groups[1], "k values")
        l = int(groups[2])
        v = _ints(groups[3], "v values")
        if len(k) != s:
            raise ValueError("KF1 s must equal the number of k values")
        if len(v) != l:
            raise ValueError("KF1 l must equal the number of v values")
        return {"k": k, "v": v}
    if identity == "KF2":
        if len(groups) != 5:
            raise ValueError("KF2 parameters look like 's;k..;l0,l1;v0..;v1..'")
        s = int(groups[0])
        k = _ints(groups[1], "k values")
        ls = _ints(groups[2], "l values")
        v0 = _ints(groups[3], "v0 values")
        v1 = _ints(groups[4], "v1 values")
        if len(k) * 2 != s:
            raise ValueError("KF2 s must equal twice the number of k values")
        if len(ls) != 2 or (len(v0), len(v1)) != (ls[0], ls[1]):
            raise ValueError("KF2 l0,l1 must match the v list lengths")
        return {"k": k, "v0": v0, "v1": v1}
    if identity == "KF3":
        if len(groups) != 6:
            raise ValueError(
                "KF3 parameters look like 'k;l00,l01,l10,l11;v00..;v01..;v10..;v11..'")
        k = int(groups[0])
        ls = _ints(groups[1], "l values")
        vmat = tuple(_ints(gtext, "v values") for gtext in groups[2:6])
        if len(ls) != 4 or tuple(len(vs) for vs in vmat) != ls:
            raise ValueError("KF3 l values must match the v list lengths")
        return {"k": k, "v": vmat}
    if identity == "KF4":
        if len(groups) != 3:
            raise ValueError("KF4 parameters look like 'k1,k2;l;v1,..'")
        ks = _ints(groups[0], "k values")
        l = int(groups[1])
        v = _ints(groups[2], "v values")
        if len(ks) != 2:
            raise ValueError("KF4 takes exactly two k values")
        if len(v) != l:
            raise ValueError("KF4 l must equal the number of v values")
        return {"k1": ks[0], "k2": ks[1], "v": v}
    raise ValueError(f"unknown identity {identity!r}; choose from {IDENTITIES}")


def canonical_params(identity: str, params) -> str:
    p = parse_identity_params(identity, params)
    j = lambda xs: ",".join(str(x) for x in xs)
    if identity == "KF1":
        return f"{len(p['k'])};{j(p['k'])};{len(p['v'])};{j(p['v'])}"
    if identity == "KF2":
        return (f"{2 * len(p['k'])};{j(p['k'])};{len(p['v0'])},{len(p['v1'])};"
                f"{j(p['v0'])};{j(p['v1'])}")
    if identity == "KF3":
        ls = j(len(vs) for vs in p["v"])
        return f"{p['k']};{ls};" + ";".join(j(vs) for vs in p["v"])
    if identity == "KF4":
        return f"{p['k1']},{p['k2']};{len(p['v'])};{j(p['v'])}"
    return ""


def random_identity_params(identity: str, rng, max_k: int = 6, max_v: int = 6,
                           max_len: int = 3) -> str:
    """Draw a uniformly messy but valid parameter string for a KF identity.

    rng is a random.Random instance; the draw is deterministic given its
    state.  All k values land in 1..max_k, all v values in 1..max_v, and each
    v list has length 0..max_len.  The string is in canonical form.
    """
    if max_k < 3 or max_v < 1 or max_len < 0:
        raise ValueError("need max_k >= 3, max_v >= 1, max_len >= 0")

    def vlist():
        return tuple(rng.randint(1, max_v) for _ in range(rng.randint(0, max_len)))

    def ascending_pair():
        k1 = rng.randint(1, max_k - 1)
        return k1, rng.randint(k1 + 1, max_k)

    if identity == "KF1":
        shape = rng.choice((1, 2, 4))
        if shape == 1:
            k = (rng.randint(1, max_k),)
        elif shape == 2:
            k = ascending_pair()
        else:
            # k1 < k3 <= k4 with k3 + k4 = k1 + k2 forces k2 >= k1 + 2
            k1 = rng.randint(1, max_k - 2)
            k2 = rng.randint(k1 + 2, max_k)
            k3 = rng.randint(k1 + 1, (k1 + k2) // 2)
            k = (k1, k2, k3, k1 + k2 - k3)
        return canonical_params(identity, {"k": k, "v": vlist()})
    if identity == "KF2":
        k = (rng.randint(1, max_k),) if rng.random() < 0.5 else ascending_pair()
        return canonical_params(identity, {"k": k, "v0": vlist(), "v1": vlist()})
    if identity == "KF3":
        k = rng.randint(1, max_k)
        vmat = (vlist(), vlist(), vlist(), vlist())
        return canonical_params(identity, {"k": k, "v": vmat})
    if identity == "KF4":
        k1, k2 = ascending_pair()
        return canonical_params(identity, {"k1": k1, "k2": k2, "v": vlist()})
    raise ValueError(f"identity {identity!r} is not parametrized")


def prove_identity(identity: str, params=None, method: str | None = None,
                   order: int | None = None) -> dict:
    """Prove a counting identity exactly, or compare series to a given order.

    method "cleared" multiplies out all denominators and compares polynomials
    exactly; "series" compares truncated expansions.  The default tries
    "cleared" and falls back to "series" when clearing is not possible.
    """
    lhs, rhs = identity_trees(identity, params)
    report = {
        "identity": identity,
        "params": canonical_params(identity, params),
    }
    if method not in (None, "cleared", "series"):
        raise ValueError("method must be 'cleared' or 'series'")
    if method in (None, "cleared"):
        try:
            holds, degree = cleared_difference_degree(lhs, rhs)
            report["method"] = "cleared"
            report["degree_or_order"] = degree
            report["verdict"] = "proven" if holds else "failed"
            return report
        except FlattenError:
            if method == "cleared":
                raise
    n = order if order is not None else 200
    holds = expand(lhs, n) == expand(rhs, n)
    report["method"] = "series"
    report["degree_or_order"] = n
    report["verdict"] = "proven" if holds else "failed"
    return report


def mainA_instantiation(g: GroupSpec) -> tuple[str, str]:
    """The identity and parameters whose two sides are the closed forms of
    q * Sp-series and SO-series for the given group."""
    if g.family == CYCLIC:
        l = g.param // 2
        return "KF1", f"1;1;{l};{','.join(['1'] * l)}"
    if g.family == DIHEDRAL:
        m = g.param
        if m % 2:
            t = (m - 1) // 2
            v0 = ",".join(["1"] + ["2"] * t)
            v1 = ",".join(["1"] * t)
            return "KF2", f"2;1;{t + 1},{t};{v0};{v1}"
        t = m // 2
        v00 = ",".join(["2"] * (t - 1))
        v01 = ",".join(["1"] * (t - 1))
        return "KF3", f"1;{t - 1},{t - 1},0,0;{v00};{v01};;"
    if g.family == TETRAHEDRAL:
        return "KF1", "2;1,2;2;1,2"
    if g.family == OCTAHEDRAL:
        return "KF2", "4;1,2;1,1;2;1"
    return "KF1", "4;1,3,2,2;2;2,4"
