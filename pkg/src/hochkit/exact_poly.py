"""Exact multivariate polynomials over Q and multi-index combinatorics.

Scalars are :class:`fractions.Fraction`.  A multi-index is a plain tuple of
non-negative ints of length ``m`` (the number of variables); it encodes both a
monomial ``x^g`` and a partial derivative ``d^a``.

Variable indices in the public API are 1-based, matching the names
``x1 .. xm``.
"""

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial

from .errors import ContextMismatchError, IndexRangeError

__all__ = [
    "Polynomial",
    "mi_zero",
    "mi_unit",
    "mi_add",
    "mi_abs",
    "mi_key",
    "compositions",
    "multi_index_split_coeff",
    "multi_index_splits",
    "monomials_up_to",
    "poly_add",
    "poly_mul",
    "poly_partial",
    "poly_partial_multi",
]


# -- multi-indices ----------------------------------------------------------


def mi_zero(m):
    return (0,) * m


def mi_unit(m, i):
    """Multi-index ``e_i`` (``i`` is 1-based)."""
    if not 1 <= i <= m:
        raise IndexRangeError(f"variable index {i} out of range 1..{m}")
    return tuple(1 if k == i - 1 else 0 for k in range(m))


def mi_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mi_abs(a):
    return sum(a)


def mi_key(a):
    """Sort key realising graded-lexicographic order, largest first.

    ``x1^2 < x1*x2 < x2^2 < x1 < x2 < 1`` under ascending sort of the key, so
    sorted output reads highest degree first.
    """
    return (-sum(a), tuple(-e for e in a))


@lru_cache(maxsize=None)
def compositions(total, parts):
    """All ordered tuples of ``parts`` non-negative ints summing to ``total``."""
    if parts == 1:
        return ((total,),)
    out = []
    for first in range(total, -1, -1):
        for rest in compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


def multi_index_split_coeff(alpha, parts):
    """Multiplicity of ``d^b1 (x) ... (x) d^bk`` in ``d^alpha`` of a k-fold product.

    This is the product over variables of multinomial coefficients
    ``alpha_v! / (b1_v! ... bk_v!)``.  ``parts`` must sum to ``alpha``
    componentwise.
    """
    alpha = tuple(alpha)
    parts = [tuple(p) for p in parts]
    if not parts:
        raise ValueError("need at least one part")
    for p in parts:
        if len(p) != len(alpha):
            raise ContextMismatchError("multi-index length mismatch")
        if any(e < 0 for e in p):
            raise ValueError("negative exponent in part")
    total = tuple(sum(col) for col in zip(*parts))
    if total != alpha:
        raise ValueError(f"parts sum to {total}, not {alpha}")
    return Fraction(_split_weight(alpha, tuple(parts)))


def _split_weight(alpha, parts):
    w = 1
    for v, a in enumerate(alpha):
        w *= factorial(a)
        for p in parts:
            w //= factorial(p[v])
    return w


@lru_cache(maxsize=None)
def multi_index_splits(alpha, k):
    """All ways to write ``alpha`` as an ordered sum of ``k`` multi-indices.

    Returns a tuple of ``(parts, weight)`` with integer weights given by
    :func:`multi_index_split_coeff`; this is the generalized Leibniz rule
    ``d^alpha(f1...fk) = sum weight * d^b1 f1 ... d^bk fk``.
    """
    per_var = [compositions(a, k) for a in alpha]
    out = []
    for choice in product(*per_var):
        parts = tuple(tuple(c[j] for c in choice) for j in range(k))
        w = 1
        for a, c in zip(alpha, choice):
            w *= factorial(a)
            for e in c:
                w //= factorial(e)
        out.append((parts, w))
    return tuple(out)


@lru_cache(maxsize=None)
def _multi_indices_of_degree(m, deg):
    if m == 0:
        return ((),) if deg == 0 else ()
    return tuple(sorted(compositions(deg, m), key=mi_key))


def multi_indices(m, lo, hi):
    """Multi-indices of length ``m`` with ``lo <= |a| <= hi`` in canonical order."""
    out = []
    for deg in range(hi, lo - 1, -1):
        out.extend(_multi_indices_of_degree(m, deg))
    return out


def monomials_up_to(m, d):
    return multi_indices(m, 0, d)


# -- polynomials ------------------------------------------------------------


class Polynomial:
    """Immutable sparse polynomial in ``x1..xm`` with rational coefficients.

    Zero coefficients are never stored.  Arithmetic with ``int``/``Fraction``
    operands treats them as constants.
    """

    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in dict(terms).items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars:
                    raise ContextMismatchError(
                        f"monomial {exps} has {len(exps)} exponents, expected {nvars}"
                    )
                if any(e < 0 for e in exps):
                    raise ValueError(f"negative exponent in {exps}")
                c = Fraction(c)
                if c:
                    clean[exps] = clean.get(exps, 0) + c
                    if not clean[exps]:
                        del clean[exps]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms):
        # trusted constructor: terms already canonical (no zeros, Fraction values)
        p = cls.__new__(cls)
        p.nvars = nvars
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, m):
        return cls._raw(m, {})

    @classmethod
    def constant(cls, m, c):
        c = Fraction(c)
        return cls._raw(m, {mi_zero(m): c} if c else {})

    @classmethod
    def variable(cls, m, i):
        return cls._raw(m, {mi_unit(m, i): Fraction(1)})

    @classmethod
    def monomial(cls, exps, c=1):
        exps = tuple(exps)
        return cls(len(exps), {exps: c})

    # -- inspection
    def terms(self):
        """``(exps, coeff)`` pairs in graded-lex order, highest first."""
        return sorted(self._terms.items(), key=lambda t: mi_key(t[0]))

    def coeff(self, exps):
        return self._terms.get(tuple(exps), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.terms())

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self):
        return all(not any(e) for e in self._terms)

    @property
    def degree(self):
        """Total degree; ``-1`` for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    # -- arithmetic
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise ContextMismatchError(
                    f"polynomials in {self.nvars} and {other.nvars} variables"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return Polynomial._raw(self.nvars, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return Polynomial.zero(self.nvars)
        return Polynomial._raw(self.nvars, {e: c * v for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Polynomial._raw(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative int")
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def partial(self, i):
        """Partial derivative in ``x_i`` (1-based)."""
        if not 1 <= i <= self.nvars:
            raise IndexRangeError(f"variable index {i} out of range 1..{self.nvars}")
        v = i - 1
        out = {}
        for e, c in self._terms.items():
            if e[v]:
                ne = e[:v] + (e[v] - 1,) + e[v + 1 :]
                out[ne] = c * e[v]
        return Polynomial._raw(self.nvars, out)

    def partial_multi(self, alpha):
        """``d^alpha``; partials commute so this is a single falling-factorial pass."""
        alpha = tuple(alpha)
        if len(alpha) != self.nvars:
            raise ContextMismatchError(
                f"multi-index of length {len(alpha)} in {self.nvars} variables"
            )
        if not any(alpha):
            return self
        out = {}
        for e, c in self._terms.items():
            if any(a > x for a, x in zip(alpha, e)):
                continue
            w = 1
            for a, x in zip(alpha, e):
                for t in range(a):
                    w *= x - t
            out[tuple(x - a for a, x in zip(alpha, e))] = c * w
        return Polynomial._raw(self.nvars, out)

    def __call__(self, *point):
        if len(point) != self.nvars:
            raise ContextMismatchError("wrong number of coordinates")
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                v *= Fraction(x) ** k
            total += v
        return total

    # -- equality / hashing
    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- text / json
    def __str__(self):
        if not self._terms:
            return "0"
        pieces = [format_term(c, e) for e, c in self.terms()]
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"Polynomial({self.nvars}, {str(self)!r})"

    def to_json(self):
        return [
            {"exps": list(e), "num": str(c.numerator), "den": str(c.denominator)}
            for e, c in self.terms()
        ]

    @classmethod
    def from_json(cls, data, m=None):
        terms = {}
        for t in data:
            e = tuple(t["exps"])
            if m is None:
                m = len(e)
            c = Fraction(int(t["num"]), int(t["den"]))
            terms[e] = terms.get(e, 0) + c
        if m is None:
            raise ValueError("cannot infer variable count of an empty polynomial")
        return cls(m, terms)

    @classmethod
    def parse(cls, src, m=None):
        from .dsl import parse_polynomial

        return parse_polynomial(src, m)


def format_rational(c):
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(exps):
    parts = []
    for i, e in enumerate(exps, start=1):
        if e == 1:
            parts.append(f"x{i}")
        elif e:
            parts.append(f"x{i}^{e}")
    return "*".join(parts)


def format_term(c, exps):
    """Text of ``c * x^exps`` with unit coefficients suppressed."""
    mono = format_monomial(exps)
    if not mono:
        return format_rational(c)
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    return f"{format_rational(c)}*{mono}"


# -- operation-level wrappers ------------------------------------------------


def poly_add(p, q):
    return p + q


def poly_mul(p, q):
    return p * q


def poly_partial(p, i):
    return p.partial(i)


def poly_partial_multi(p, alpha):
    return p.partial_multi(alpha)


def binomial_count(m, d):
    """Number of monomials of degree ``<= d`` in ``m`` variables."""
    return comb(m + d, d)
