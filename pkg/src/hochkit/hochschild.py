"""Gerstenhaber operations and the Hochschild differential on multidifferential cochains.

Degrees in sign exponents are *reduced* degrees, ``arity - 1``.
"""

import enum
from fractions import Fraction

from .errors import ArityError, ContextMismatchError, IndexRangeError
from .exact_poly import Polynomial, mi_add, mi_zero, multi_index_splits
from .multiop import MultiDiffOp, ZeroCochain, mu

__all__ = [
    "SignConvention",
    "partial_compose",
    "total_compose",
    "cup",
    "cup_many",
    "gerstenhaber",
    "hochschild_delta",
    "hochschild_delta_via_bracket",
    "associativity_defect",
]


class SignConvention(enum.Enum):
    """Cup product sign.

    ``UNSIGNED`` is ``f . g = mu o (f (x) g)``.  ``SIGNED`` multiplies this by
    ``(-1)^(arity(f) * arity(g))``.
    """

    UNSIGNED = "unsigned"
    SIGNED = "signed"

    @classmethod
    def from_name(cls, name):
        name = name.lower()
        if name in ("paper", "signed"):
            return cls.SIGNED
        if name == "unsigned":
            return cls.UNSIGNED
        raise ValueError(f"unknown cup sign convention {name!r}")


class _Accumulator:
    """Sparse ``slots -> monomial -> Fraction`` sum."""

    __slots__ = ("data",)

    def __init__(self):
        self.data = {}

    def add(self, slots, poly, scale):
        row = self.data.get(slots)
        if row is None:
            row = self.data[slots] = {}
        for mono, c in poly._terms.items():
            v = row.get(mono, 0) + scale * c
            if v:
                row[mono] = v
            else:
                del row[mono]

    def to_op(self, m, arity):
        terms = {s: Polynomial._raw(m, row) for s, row in self.data.items() if row}
        return MultiDiffOp._raw(m, arity, terms)


def _same_ring(f, g):
    if f.nvars != g.nvars:
        raise ContextMismatchError(f"cochains over m={f.nvars} and m={g.nvars}")


def partial_compose(f, i, g):
    """``f o_i g = f(id^(i-1) (x) g (x) id^...)`` in canonical form (``i`` is 1-based).

    The slot-``i`` derivative of ``f`` hits the product of ``g``'s coefficient
    and its slot outputs; it is distributed by the generalized Leibniz rule.
    """
    _same_ring(f, g)
    if not 1 <= i <= f.arity:
        raise IndexRangeError(f"slot {i} out of range 1..{f.arity}")
    k = g.arity
    m = f.nvars
    acc = _Accumulator()
    dcache = {}
    for sf, cf in f._terms.items():
        alpha = sf[i - 1]
        head, tail = sf[: i - 1], sf[i:]
        for parts, w in multi_index_splits(alpha, k + 1):
            g0 = parts[0]
            for sg, cg in g._terms.items():
                key = (sg, g0)
                dc = dcache.get(key)
                if dc is None:
                    dc = dcache[key] = cg.partial_multi(g0)
                if not dc:
                    continue
                mid = tuple(mi_add(parts[l + 1], sg[l]) for l in range(k))
                acc.add(head + mid + tail, cf * dc, w)
    return acc.to_op(m, f.arity + k - 1)


def total_compose(f, g):
    """``f o g = sum_i (-1)^(q(i+1)) f o_i g`` with ``q = arity(g) - 1``."""
    _same_ring(f, g)
    q = g.arity - 1
    out = MultiDiffOp.zero(f.nvars, f.arity + g.arity - 1)
    for i in range(1, f.arity + 1):
        piece = partial_compose(f, i, g)
        out = out - piece if (q * (i + 1)) % 2 else out + piece
    return out


def cup(f, g, conv=SignConvention.UNSIGNED):
    """Cup product: slot tuples concatenate and coefficients multiply."""
    _same_ring(f, g)
    if isinstance(conv, str):
        conv = SignConvention.from_name(conv)
    sign = -1 if conv is SignConvention.SIGNED and (f.arity * g.arity) % 2 else 1
    acc = _Accumulator()
    for sf, cf in f._terms.items():
        for sg, cg in g._terms.items():
            acc.add(sf + sg, cf * cg, sign)
    return acc.to_op(f.nvars, f.arity + g.arity)


def cup_many(ops, conv=SignConvention.UNSIGNED):
    ops = list(ops)
    out = ops[0]
    for op in ops[1:]:
        out = cup(out, op, conv)
    return out


def gerstenhaber(f, g):
    """``[f, g] = f o g - (-1)^(pq) g o f`` with reduced degrees ``p``, ``q``."""
    p, q = f.arity - 1, g.arity - 1
    fg = total_compose(f, g)
    gf = total_compose(g, f)
    return fg + gf if (p * q) % 2 else fg - gf


def hochschild_delta(f):
    """Hochschild coboundary, expanded directly from the alternating-sum formula.

    Degree-0 cochains (a :class:`ZeroCochain` or bare :class:`Polynomial`) map to
    the zero arity-1 operator since the algebra is commutative.
    """
    if isinstance(f, ZeroCochain):
        return MultiDiffOp.zero(f.nvars, 1)
    if isinstance(f, Polynomial):
        return MultiDiffOp.zero(f.nvars, 1)
    n, m = f.arity, f.nvars
    z = (mi_zero(m),)
    acc = _Accumulator()
    last_sign = -1 if (n + 1) % 2 else 1
    for slots, c in f._terms.items():
        # a0 * f(a1, ..., an)
        acc.add(z + slots, c, 1)
        # f(..., a_i a_{i+1}, ...): slot i's derivative splits over the product
        for i in range(n):
            sign = -1 if (i + 1) % 2 else 1
            head, tail = slots[:i], slots[i + 1 :]
            for (b, g), w in multi_index_splits(slots[i], 2):
                acc.add(head + (b, g) + tail, c, sign * w)
        # f(a0, ..., a_{n-1}) * a_n
        acc.add(slots + z, c, last_sign)
    return acc.to_op(m, n + 1)


def hochschild_delta_via_bracket(f):
    """``(-1)^(arity-1) [mu, f]``; agrees with :func:`hochschild_delta`."""
    if not isinstance(f, MultiDiffOp):
        raise ArityError("the bracket route needs a cochain of arity >= 1")
    br = gerstenhaber(mu(f.nvars), f)
    return -br if (f.arity - 1) % 2 else br


def associativity_defect(nu):
    """Return ``(1/2 [nu, nu], nu o_1 nu - nu o_2 nu)``; both vanish iff ``nu`` is associative."""
    if nu.arity != 2:
        raise ArityError("associativity defect is defined for arity-2 operators")
    half_bracket = gerstenhaber(nu, nu).scale(Fraction(1, 2))
    direct = partial_compose(nu, 1, nu) - partial_compose(nu, 2, nu)
    return half_bracket, direct
