"""Differential operators on polynomials over Q(i).

Everything is exact and termwise.  The pairing <., .> used throughout is
the bilinear sum of coordinatewise products, with no conjugation; the
same convention backs f(D), the constant-coefficient operator obtained by
substituting d/dz_i for z_i in f.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple

from .gaussrat import GaussianRational, ScalarLike
from .poly import Monomial, Poly, mono_degree


def partial(p: Poly, index: int) -> Poly:
    if not 0 <= index < p.arity:
        raise ValueError(f"variable index {index} out of range for arity {p.arity}")
    out: dict = {}
    for mono, coeff in p.terms.items():
        e = mono[index]
        if not e:
            continue
        key = mono[:index] + (e - 1,) + mono[index + 1:]
        out[key] = coeff * e if key not in out else out[key] + coeff * e
    return Poly._raw(p.arity, {m: c for m, c in out.items() if c})


def partial_multi(p: Poly, orders: Sequence[int]) -> Poly:
    """d^|orders| p / dz^orders, computed termwise via falling factorials."""
    if len(orders) != p.arity:
        raise ValueError(f"need {p.arity} derivative orders, got {len(orders)}")
    out: dict = {}
    for mono, coeff in p.terms.items():
        factor = 1
        for e, s in zip(mono, orders):
            if e < s:
                factor = 0
                break
            if s:
                factor *= math.perm(e, s)
        if not factor:
            continue
        key = tuple(e - s for e, s in zip(mono, orders))
        c = coeff * factor
        out[key] = c if key not in out else out[key] + c
    return Poly._raw(p.arity, {m: c for m, c in out.items() if c})


def laplacian(p: Poly) -> Poly:
    out: dict = {}
    for mono, coeff in p.terms.items():
        for i, e in enumerate(mono):
            if e < 2:
                continue
            key = mono[:i] + (e - 2,) + mono[i + 1:]
            c = coeff * (e * (e - 1))
            out[key] = c if key not in out else out[key] + c
    return Poly._raw(p.arity, {m: c for m, c in out.items() if c})


def laplacian_iter(p: Poly, k: int) -> Poly:
    if k < 0:
        raise ValueError("iteration count must be nonnegative")
    for _ in range(k):
        if p.is_zero():
            break
        p = laplacian(p)
    return p


def grad_pair(p: Poly, q: Poly) -> Poly:
    """<grad p, grad q> = sum_i (dp/dz_i)(dq/dz_i), bilinear."""
    if p.arity != q.arity:
        raise ValueError("arity mismatch")
    total = Poly.zero(p.arity)
    for i in range(p.arity):
        total = total + partial(p, i) * partial(q, i)
    return total


def lambda_op(p: Poly, f: Poly) -> Poly:
    """The first-order operator Lambda_p applied to f: sum_i (dp/dz_i) d f/dz_i."""
    return grad_pair(p, f)


def sigma_squared(arity: int) -> Poly:
    """sum_i z_i^2, whose operator image under f(D) is the Laplacian."""
    terms = {}
    for i in range(arity):
        terms[tuple(2 if j == i else 0 for j in range(arity))] = GaussianRational(1)
    return Poly(arity, terms)


def apply_D(f: Poly, g: Poly) -> Poly:
    """f(D) g: substitute d/dz_i for z_i in f, apply the operator to g."""
    if f.arity != g.arity:
        raise ValueError("arity mismatch")
    out: dict = {}
    for s, cf in f.terms.items():
        for e, cg in g.terms.items():
            factor = 1
            for ei, si in zip(e, s):
                if ei < si:
                    factor = 0
                    break
                if si:
                    factor *= math.perm(ei, si)
            if not factor:
                continue
            key = tuple(ei - si for ei, si in zip(e, s))
            c = cf * cg * factor
            out[key] = c if key not in out else out[key] + c
    return Poly._raw(f.arity, {m: c for m, c in out.items() if c})


def compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """All tuples of `parts` nonnegative ints summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in compositions(total - head, parts - 1):
            yield (head,) + rest


def multinomial(total: int, parts: Sequence[int]) -> int:
    c = math.factorial(total)
    for s in parts:
        c //= math.factorial(s)
    return c


def mixed_partial_pair(a: Poly, b: Poly, k: int) -> Poly:
    """sum over |s| = k of (k choose s) (d^s a)(d^s b)."""
    if a.arity != b.arity:
        raise ValueError("arity mismatch")
    total = Poly.zero(a.arity)
    if k == 0:
        return a * b
    for s in compositions(k, a.arity):
        da = partial_multi(a, s)
        if da.is_zero():
            continue
        db = partial_multi(b, s)
        if db.is_zero():
            continue
        total = total + (da * db).scale(multinomial(k, s))
    return total


# -- vectors and matrices of polynomials -------------------------------------


class PolyVector:
    __slots__ = ("arity", "entries")

    def __init__(self, entries: Sequence[Poly]):
        entries = list(entries)
        if not entries:
            raise ValueError("empty vector")
        arity = entries[0].arity
        if any(p.arity != arity for p in entries):
            raise ValueError("mixed arities in vector")
        self.arity = arity
        self.entries = entries

    @classmethod
    def coordinates(cls, arity: int) -> "PolyVector":
        return cls([Poly.variable(i, arity) for i in range(arity)])

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Poly:
        return self.entries[i]

    def __iter__(self) -> Iterator[Poly]:
        return iter(self.entries)

    def __add__(self, other: "PolyVector") -> "PolyVector":
        return PolyVector([a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "PolyVector") -> "PolyVector":
        return PolyVector([a - b for a, b in zip(self.entries, other.entries)])

    def scale(self, value: ScalarLike) -> "PolyVector":
        return PolyVector([p.scale(value) for p in self.entries])

    def dot(self, other: "PolyVector") -> Poly:
        if len(self) != len(other):
            raise ValueError("length mismatch")
        total = Poly.zero(self.arity)
        for a, b in zip(self.entries, other.entries):
            total = total + a * b
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyVector):
            return NotImplemented
        return self.entries == other.entries

    __hash__ = None

    def __repr__(self) -> str:
        return "PolyVector([" + ", ".join(str(p) for p in self.entries) + "])"


class PolyMatrix:
    __slots__ = ("arity", "rows")

    def __init__(self, rows: Sequence[Sequence[Poly]]):
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        arity = rows[0][0].arity
        if any(p.arity != arity for r in rows for p in r):
            raise ValueError("mixed arities in matrix")
        self.arity = arity
        self.rows = rows

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.rows), len(self.rows[0])

    def __getitem__(self, i: int) -> List[Poly]:
        return self.rows[i]

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        n, k = self.shape
        k2, m = other.shape
        if k != k2:
            raise ValueError(f"shape mismatch: {self.shape} * {other.shape}")
        rows = []
        for i in range(n):
            row = []
            for j in range(m):
                acc = Poly.zero(self.arity)
                for t in range(k):
                    a = self.rows[i][t]
                    if a.is_zero():
                        continue
                    b = other.rows[t][j]
                    if b.is_zero():
                        continue
                    acc = acc + a * b
                row.append(acc)
            rows.append(row)
        return PolyMatrix(rows)

    def __pow__(self, exponent: int) -> "PolyMatrix":
        n, m = self.shape
        if n != m:
            raise ValueError("power of a non-square matrix")
        if not isinstance(exponent, int) or exponent < 1:
            raise ValueError("matrix exponent must be a positive integer")
        result = self
        for _ in range(exponent - 1):
            result = result * self
        return result

    def trace(self) -> Poly:
        n, m = self.shape
        if n != m:
            raise ValueError("trace of a non-square matrix")
        total = Poly.zero(self.arity)
        for i in range(n):
            total = total + self.rows[i][i]
        return total

    def is_zero(self) -> bool:
        return all(p.is_zero() for r in self.rows for p in r)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.rows == other.rows

    __hash__ = None

    def __repr__(self) -> str:
        body = "; ".join("[" + ", ".join(str(p) for p in r) + "]" for r in self.rows)
        return f"PolyMatrix({body})"


def poly_det(matrix: PolyMatrix) -> Poly:
    """Determinant by cofactor expansion; fine at the ranks used here."""
    n, m = matrix.shape
    if n != m:
        raise ValueError("determinant of a non-square matrix")

    def minor_det(rows: List[List[Poly]]) -> Poly:
        size = len(rows)
        if size == 1:
            return rows[0][0]
        total = Poly.zero(matrix.arity)
        for j in range(size):
            top = rows[0][j]
            if top.is_zero():
                continue
            sub = [r[:j] + r[j + 1:] for r in rows[1:]]
            piece = top * minor_det(sub)
            total = total + piece if j % 2 == 0 else total - piece
        return total

    return minor_det(matrix.rows)


# -- composite operators -----------------------------------------------------


def grad(p: Poly) -> PolyVector:
    if p.arity == 0:
        raise ValueError("gradient needs at least one variable")
    return PolyVector([partial(p, i) for i in range(p.arity)])


def hessian(p: Poly) -> PolyMatrix:
    if p.arity == 0:
        raise ValueError("hessian needs at least one variable")
    n = p.arity
    firsts = [partial(p, i) for i in range(n)]
    rows = [[Poly.zero(n) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            entry = partial(firsts[i], j)
            rows[i][j] = entry
            rows[j][i] = entry
    return PolyMatrix(rows)


def jacobian(vec: PolyVector) -> PolyMatrix:
    return PolyMatrix([[partial(p, j) for j in range(vec.arity)] for p in vec])


def jacobian_det(vec: PolyVector) -> Poly:
    if len(vec) != vec.arity:
        raise ValueError("jacobian determinant needs as many components as variables")
    return poly_det(jacobian(vec))


# -- identity checkers --------------------------------------------------------


def leibniz_identity_check(p: Poly, m: int) -> Tuple[Poly, Poly]:
    """Both sides of Delta p^{m+1} = (m+1) p^m Delta p + m(m+1) p^{m-1} <grad p, grad p>."""
    if m < 1:
        raise ValueError("m must be at least 1")
    lhs = laplacian(p ** (m + 1))
    rhs = (p ** m * laplacian(p)).scale(m + 1) + (p ** (m - 1) * grad_pair(p, p)).scale(m * (m + 1))
    return lhs, rhs


def laplacian_product_expansion(g: Poly, f: Poly, l: int) -> Tuple[Poly, Poly]:
    """Both sides of the iterated-Laplacian product rule of order l.

    Delta^l (g f) = sum over k1+k2+k3 = l of 2^k2 (l choose k1,k2,k3)
    times the k2-fold mixed-derivative pairing of Delta^k1 g with Delta^k3 f.
    """
    if g.arity != f.arity:
        raise ValueError("arity mismatch")
    if l < 0:
        raise ValueError("order must be nonnegative")
    lhs = laplacian_iter(g * f, l)
    g_lap = [g]
    f_lap = [f]
    for _ in range(l):
        g_lap.append(laplacian(g_lap[-1]))
        f_lap.append(laplacian(f_lap[-1]))
    rhs = Poly.zero(g.arity)
    for k1 in range(l + 1):
        for k2 in range(l - k1 + 1):
            k3 = l - k1 - k2
            weight = (2 ** k2) * multinomial(l, (k1, k2, k3))
            piece = mixed_partial_pair(g_lap[k1], f_lap[k3], k2)
            if not piece.is_zero():
                rhs = rhs + piece.scale(weight)
    return lhs, rhs


def kfactorial_fD_identity(f: Poly, g: Poly) -> Tuple[Poly, Poly]:
    """Both sides of sum_{|s|=k} (k choose s) (d^s f)(d^s g) = k! f(D) g.

    Requires f homogeneous (of degree k); the left side then has constant
    first factors and collapses to the operator form on the right.
    """
    k = f.is_homogeneous()
    if k is None:
        raise ValueError("f must be homogeneous and nonzero")
    lhs = mixed_partial_pair(f, g, k)
    rhs = apply_D(f, g).scale(math.factorial(k))
    return lhs, rhs
