"""Sparse multivariate polynomials over Q(i).

A polynomial of arity n is a dict mapping exponent tuples of length n to
nonzero GaussianRational coefficients.  The empty dict is the zero
polynomial; zero coefficients are never stored, so equality is structural.
Display order is graded lexicographic, highest total degree first.

Two variable naming styles are understood by the text grammar:

    z-style   z1, z2, ..., zN        index k-1 for zK
    uv-style  u1..un, v1..vn        uK -> index K-1, vK -> index n+K-1

uv-style is the doubled-variable convention used when a polynomial in n
complex variables is rewritten over pairs (u, v) with z = u + i*v.
"""

from __future__ import annotations

import math
import re as _re
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .gaussrat import GaussianRational, ScalarLike

Monomial = tuple  # exponent vector, one nonnegative int per variable

ORDER_INF = math.inf  # order of the zero polynomial


def mono_degree(mono: Monomial) -> int:
    return sum(mono)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def grlex_key(mono: Monomial):
    return (mono_degree(mono), mono)


class Poly:
    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Optional[Mapping[Monomial, ScalarLike]] = None):
        if arity < 0:
            raise ValueError("arity must be nonnegative")
        self.arity = arity
        clean: dict = {}
        if terms:
            for mono, coeff in terms.items():
                mono = tuple(mono)
                if len(mono) != arity or any(e < 0 or not isinstance(e, int) for e in mono):
                    raise ValueError(f"bad exponent tuple {mono} for arity {arity}")
                c = GaussianRational.coerce(coeff)
                if mono in clean:
                    c = clean[mono] + c
                if c:
                    clean[mono] = c
                elif mono in clean:
                    del clean[mono]
        self.terms = clean

    @classmethod
    def _raw(cls, arity: int, terms: dict) -> "Poly":
        # trusted constructor: terms already canonical
        p = cls.__new__(cls)
        p.arity = arity
        p.terms = terms
        return p

    @classmethod
    def zero(cls, arity: int) -> "Poly":
        return cls._raw(arity, {})

    @classmethod
    def constant(cls, arity: int, value: ScalarLike) -> "Poly":
        c = GaussianRational.coerce(value)
        if not c:
            return cls.zero(arity)
        return cls._raw(arity, {(0,) * arity: c})

    @classmethod
    def one(cls, arity: int) -> "Poly":
        return cls.constant(arity, 1)

    @classmethod
    def variable(cls, index: int, arity: int) -> "Poly":
        if not 0 <= index < arity:
            raise ValueError(f"variable index {index} out of range for arity {arity}")
        mono = tuple(1 if j == index else 0 for j in range(arity))
        return cls._raw(arity, {mono: GaussianRational(1)})

    # -- predicates and measures ----------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> Union[int, float]:
        """Lowest total degree among terms; ORDER_INF for the zero polynomial."""
        if not self.terms:
            return ORDER_INF
        return min(mono_degree(m) for m in self.terms)

    def degree(self) -> int:
        """Highest total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(mono_degree(m) for m in self.terms)

    def is_homogeneous(self) -> Optional[int]:
        """Common total degree of all terms, or None.

        None means either not homogeneous or the zero polynomial (which is
        homogeneous of every degree, so reports no particular one).
        """
        if not self.terms:
            return None
        degs = {mono_degree(m) for m in self.terms}
        if len(degs) == 1:
            return degs.pop()
        return None

    def constant_term(self) -> GaussianRational:
        return self.terms.get((0,) * self.arity, GaussianRational(0))

    # -- ring operations -------------------------------------------------

    def _check_arity(self, other: "Poly") -> None:
        if self.arity != other.arity:
            raise ValueError(f"arity mismatch: {self.arity} vs {other.arity}")

    def __add__(self, other: Union["Poly", ScalarLike]) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(self.arity, other)
        self._check_arity(other)
        if len(self.terms) < len(other.terms):
            self, other = other, self
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            c = out.get(mono)
            c = coeff if c is None else c + coeff
            if c:
                out[mono] = c
            elif mono in out:
                del out[mono]
        return Poly._raw(self.arity, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw(self.arity, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: Union["Poly", ScalarLike]) -> "Poly":
        if not isinstance(other, Poly):
            other = Poly.constant(self.arity, other)
        return self + (-other)

    def __rsub__(self, other: ScalarLike) -> "Poly":
        return Poly.constant(self.arity, other) - self

    def scale(self, value: ScalarLike) -> "Poly":
        c = GaussianRational.coerce(value)
        if not c:
            return Poly.zero(self.arity)
        return Poly._raw(self.arity, {m: k * c for m, k in self.terms.items()})

    def __mul__(self, other: Union["Poly", ScalarLike]) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        self._check_arity(other)
        a, b = self.terms, other.terms
        if len(a) > len(b):
            a, b = b, a
        out: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                c = out.get(mono)
                c = ca * cb if c is None else c + ca * cb
                if c:
                    out[mono] = c
                elif mono in out:
                    del out[mono]
        return Poly._raw(self.arity, out)

    def __rmul__(self, other: ScalarLike) -> "Poly":
        return self.scale(other)

    def __pow__(self, exponent: int) -> "Poly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("polynomial exponent must be a nonnegative integer")
        result = Poly.one(self.arity)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            if k > 1:
                base = base * base
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.arity == other.arity and self.terms == other.terms
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self == Poly.constant(self.arity, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.arity, frozenset(self.terms.items())))

    # -- evaluation and substitution --------------------------------------

    def evaluate(self, point: Sequence[ScalarLike]) -> GaussianRational:
        if len(point) != self.arity:
            raise ValueError(f"point has {len(point)} coordinates, need {self.arity}")
        vals = [GaussianRational.coerce(v) for v in point]
        powers: list = [{0: GaussianRational(1)} for _ in range(self.arity)]
        total = GaussianRational(0)
        for mono, coeff in self.terms.items():
            prod = coeff
            for j, e in enumerate(mono):
                if not e:
                    continue
                cache = powers[j]
                if e not in cache:
                    cache[e] = vals[j] ** e
                prod = prod * cache[e]
            total = total + prod
        return total

    def truncate(self, max_degree: int) -> "Poly":
        """Drop every term of total degree greater than max_degree."""
        out = {m: c for m, c in self.terms.items() if mono_degree(m) <= max_degree}
        if len(out) == len(self.terms):
            return self
        return Poly._raw(self.arity, out)

    def graded_piece(self, degree: int) -> "Poly":
        out = {m: c for m, c in self.terms.items() if mono_degree(m) == degree}
        return Poly._raw(self.arity, out)

    def substitute_linear(
        self,
        matrix: Sequence[Sequence[ScalarLike]],
        shift: Optional[Sequence[ScalarLike]] = None,
    ) -> "Poly":
        """Substitute an affine image for every variable.

        matrix has one row per variable of self (arity rows); row j lists
        the coefficients of the image of variable j over the new variables,
        so all rows share one length, the arity of the result.  shift, if
        given, adds a constant to each image (length = self.arity).
        """
        if len(matrix) != self.arity:
            raise ValueError(f"matrix needs {self.arity} rows, got {len(matrix)}")
        widths = {len(row) for row in matrix}
        if self.arity and len(widths) != 1:
            raise ValueError("matrix rows must share one length")
        new_arity = widths.pop() if widths else 0
        if shift is not None and len(shift) != self.arity:
            raise ValueError(f"shift needs {self.arity} entries, got {len(shift)}")
        images = []
        for j in range(self.arity):
            img = Poly(new_arity, {
                tuple(1 if k == t else 0 for k in range(new_arity)): matrix[j][t]
                for t in range(new_arity)
            })
            if shift is not None:
                img = img + Poly.constant(new_arity, shift[j])
            images.append(img)
        powers: list = [{0: Poly.one(new_arity)} for _ in range(self.arity)]
        total = Poly.zero(new_arity)
        for mono, coeff in self.terms.items():
            prod = Poly.constant(new_arity, coeff)
            for j, e in enumerate(mono):
                if not e:
                    continue
                cache = powers[j]
                if e not in cache:
                    cache[e] = images[j] ** e
                prod = prod * cache[e]
            total = total + prod
        return total

    # -- display -----------------------------------------------------------

    def sorted_monomials(self) -> list:
        return sorted(self.terms, key=grlex_key, reverse=True)

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self.arity}, {format_poly(self)!r})"


# -- exponential truncation ------------------------------------------------


def exp_truncated(p: Poly, s: ScalarLike, max_degree: int) -> Poly:
    """Truncation to total degree max_degree of exp(s*p) = sum s^k p^k / k!.

    Requires order(p) >= 1 so the sum is finite per degree; a nonzero
    constant term is rejected.  exp of the zero polynomial is 1.
    """
    if max_degree < 0:
        raise ValueError("max_degree must be nonnegative")
    if p.is_zero():
        return Poly.one(p.arity)
    ord_p = p.order()
    if ord_p < 1:
        raise ValueError("exp_truncated needs order >= 1 (no constant term)")
    s = GaussianRational.coerce(s)
    result = Poly.one(p.arity)
    pk = Poly.one(p.arity)
    k = 1
    while k * ord_p <= max_degree:
        pk = (pk * p).truncate(max_degree)
        result = result + pk.scale(s ** k * Fraction(1, math.factorial(k)))
        k += 1
    return result


# -- text grammar ------------------------------------------------------------

_TOKEN = _re.compile(r"\s*(?:(\d+)|([zuv])(\d+)|(i)|([-+*^()/]))")


def _tokenize(text: str) -> list:
    text = text.replace("−", "-")
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"bad character at position {pos}: {text[pos:pos + 10]!r}")
            break
        if m.group(1):
            tokens.append(("int", int(m.group(1))))
        elif m.group(2):
            tokens.append(("var", (m.group(2), int(m.group(3)))))
        elif m.group(4):
            tokens.append(("i", None))
        else:
            tokens.append((m.group(5), None))
        pos = m.end()
    tokens.append(("end", None))
    return tokens


class _Parser:
    def __init__(self, tokens: list, var_index, arity: int):
        self.tokens = tokens
        self.pos = 0
        self.var_index = var_index
        self.arity = arity

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.take()
        if tok[0] != kind:
            raise ValueError(f"expected {kind!r}, got {tok[0]!r}")
        return tok

    def parse_expr(self) -> Poly:
        acc = self.parse_term()
        while self.peek() in "+-":
            op = self.take()[0]
            rhs = self.parse_term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def parse_term(self) -> Poly:
        acc = self.parse_factor()
        while self.peek() == "*":
            self.take()
            acc = acc * self.parse_factor()
        return acc

    def parse_factor(self) -> Poly:
        if self.peek() == "-":
            self.take()
            return -self.parse_factor()
        base = self.parse_base()
        if self.peek() == "^":
            self.take()
            kind, value = self.take()
            if kind != "int":
                raise ValueError("exponent must be a nonnegative integer")
            return base ** value
        return base

    def parse_base(self) -> Poly:
        kind, value = self.take()
        if kind == "int":
            num = value
            if self.peek() == "/":
                self.take()
                dkind, den = self.take()
                if dkind != "int" or den == 0:
                    raise ValueError("bad rational literal")
                return Poly.constant(self.arity, Fraction(num, den))
            return Poly.constant(self.arity, num)
        if kind == "i":
            return Poly.constant(self.arity, GaussianRational(0, 1))
        if kind == "var":
            return Poly.variable(self.var_index(value), self.arity)
        if kind == "(":
            inner = self.parse_expr()
            self.expect(")")
            return inner
        raise ValueError(f"unexpected token {kind!r}")


def parse(text: str, arity: Optional[int] = None) -> Poly:
    """Parse polynomial text in either variable style.

    Arity is inferred from the largest variable index unless given
    explicitly (z-style: arity >= max K of zK; uv-style: arity = 2n with
    n >= max K of uK/vK, and an explicit arity must be even).  Mixing z
    with u/v names is an error.
    """
    tokens = _tokenize(text)
    letters = set()
    max_index = 0
    for kind, value in tokens:
        if kind == "var":
            letter, k = value
            if k < 1:
                raise ValueError(f"variable index must start at 1, got {letter}{k}")
            letters.add(letter)
            max_index = max(max_index, k)
    if "z" in letters and (letters & {"u", "v"}):
        raise ValueError("cannot mix z-style and uv-style variable names")
    if letters & {"u", "v"}:
        if arity is None:
            n = max_index
            arity = 2 * n
        else:
            if arity % 2 or arity < 2 * max_index:
                raise ValueError(f"uv-style needs even arity >= {2 * max_index}")
            n = arity // 2
        def var_index(value):
            letter, k = value
            return k - 1 if letter == "u" else n + k - 1
    else:
        if arity is None:
            arity = max_index
        elif arity < max_index:
            raise ValueError(f"explicit arity {arity} below max variable index {max_index}")
        def var_index(value):
            return value[1] - 1
    parser = _Parser(tokens, var_index, arity)
    result = parser.parse_expr()
    parser.expect("end")
    return result


def _var_name(index: int, arity: int, style: str) -> str:
    if style == "uv":
        n = arity // 2
        if index < n:
            return f"u{index + 1}"
        return f"v{index - n + 1}"
    return f"z{index + 1}"


def _frac_text(x: Fraction) -> str:
    return str(x)


def _coeff_body(c: GaussianRational) -> tuple:
    """Split a coefficient into (sign, text, is_unit) for term rendering.

    sign is +1 or -1 and is pulled outside the term; text is the
    grammar-compliant magnitude ('' when the magnitude is 1 and may be
    omitted before a monomial).  Mixed re/im coefficients keep their sign
    inside a parenthesized block and report sign +1.
    """
    if not c.im:
        sign = 1 if c.re > 0 else -1
        mag = abs(c.re)
        return sign, ("" if mag == 1 else _frac_text(mag)), mag == 1
    if not c.re:
        sign = 1 if c.im > 0 else -1
        mag = abs(c.im)
        text = "i" if mag == 1 else f"{_frac_text(mag)}*i"
        return sign, text, False
    im = c.im
    mid = "+" if im > 0 else "-"
    mag = abs(im)
    tail = "i" if mag == 1 else f"{_frac_text(mag)}*i"
    return 1, f"({_frac_text(c.re)}{mid}{tail})", False


def format_poly(p: Poly, style: str = "z") -> str:
    """Render in the text grammar; parse(format_poly(p)) reproduces p."""
    if style not in ("z", "uv"):
        raise ValueError(f"unknown style {style!r}")
    if style == "uv" and p.arity % 2:
        raise ValueError("uv-style needs even arity")
    if not p.terms:
        return "0"
    parts = []
    for mono in p.sorted_monomials():
        factors = []
        for j, e in enumerate(mono):
            if not e:
                continue
            name = _var_name(j, p.arity, style)
            factors.append(name if e == 1 else f"{name}^{e}")
        mono_text = "*".join(factors)
        sign, coeff_text, unit = _coeff_body(p.terms[mono])
        if mono_text:
            body = mono_text if unit else f"{coeff_text}*{mono_text}"
        else:
            body = coeff_text if coeff_text else "1"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign < 0 else "") + first_body
    for sign, body in parts[1:]:
        out += (" - " if sign < 0 else " + ") + body
    return out
