"""Sparse multidifferential operators with polynomial coefficients.

An arity-``n`` operator is a finite sum of terms ``c(x) d^a1 (x) ... (x) d^an``
acting by ``(f1, ..., fn) -> c * d^a1 f1 * ... * d^an fn``.  Terms are stored
as a map from the slot tuple ``(a1, ..., an)`` to the coefficient polynomial.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ArityError, ContextMismatchError, OrderUndefinedError
from .exact_poly import Polynomial, format_rational, format_term, mi_key, mi_unit, mi_zero

__all__ = [
    "MultiDiffOp",
    "ZeroCochain",
    "apply",
    "op_add",
    "op_scale",
    "syntactic_order",
    "is_diff_op_of_order_at_most",
    "vanishes_on_constants",
    "identity",
    "mu",
    "partial",
    "multiplication",
]


def slots_key(slots):
    return tuple(mi_key(a) for a in slots)


class MultiDiffOp:
    __slots__ = ("nvars", "arity", "_terms", "_hash")

    def __init__(self, nvars, arity, terms=None):
        if arity < 1:
            raise ArityError("operator arity must be at least 1")
        self.nvars = nvars
        self.arity = arity
        clean = {}
        for slots, c in dict(terms or {}).items():
            slots = tuple(tuple(int(e) for e in a) for a in slots)
            if len(slots) != arity:
                raise ArityError(f"term with {len(slots)} slots in arity-{arity} operator")
            for a in slots:
                if len(a) != nvars or any(e < 0 for e in a):
                    raise ContextMismatchError(f"bad slot multi-index {a} for m={nvars}")
            if not isinstance(c, Polynomial):
                c = Polynomial.constant(nvars, c)
            elif c.nvars != nvars:
                raise ContextMismatchError("coefficient lives in a different ring")
            c = clean.get(slots, 0) + c if slots in clean else c
            if c:
                clean[slots] = c
            else:
                clean.pop(slots, None)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, nvars, arity, terms):
        op = cls.__new__(cls)
        op.nvars = nvars
        op.arity = arity
        op._terms = terms
        op._hash = None
        return op

    @classmethod
    def zero(cls, m, arity):
        return cls._raw(m, arity, {})

    @classmethod
    def from_flat(cls, m, arity, flat):
        """Build from ``{(slots, monomial): Fraction}``, dropping zeros."""
        grouped = {}
        for (slots, mono), c in flat.items():
            if c:
                grouped.setdefault(slots, {})[mono] = Fraction(c)
        return cls._raw(
            m, arity, {s: Polynomial._raw(m, t) for s, t in grouped.items()}
        )

    @classmethod
    def term(cls, slots, coeff=1, m=None):
        """Single term ``coeff * d^slots[0] (x) ...``."""
        slots = tuple(tuple(a) for a in slots)
        if m is None:
            m = len(slots[0])
        return cls(m, len(slots), {slots: coeff})

    # -- inspection
    def terms(self):
        """``(slots, coefficient)`` pairs in canonical order."""
        return sorted(self._terms.items(), key=lambda t: slots_key(t[0]))

    def flat(self):
        """Iterate ``(slots, monomial, Fraction)`` over every scalar entry."""
        for slots, c in self._terms.items():
            for mono, v in c._terms.items():
                yield slots, mono, v

    def to_flat(self):
        return {(s, e): v for s, e, v in self.flat()}

    def coeff(self, slots):
        slots = tuple(tuple(a) for a in slots)
        return self._terms.get(slots, Polynomial.zero(self.nvars))

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    @property
    def coeff_degree(self):
        """Largest total degree among coefficients; ``-1`` for zero."""
        return max((c.degree for c in self._terms.values()), default=-1)

    def order(self):
        return syntactic_order(self)

    def min_slot_order(self):
        return min((sum(a) for s in self._terms for a in s), default=None)

    # -- linear structure
    def _check(self, other):
        if not isinstance(other, MultiDiffOp):
            raise TypeError(f"expected MultiDiffOp, got {type(other).__name__}")
        if other.nvars != self.nvars:
            raise ContextMismatchError(f"operators over m={self.nvars} and m={other.nvars}")
        if other.arity != self.arity:
            raise ArityError(f"cannot add arity {self.arity} and arity {other.arity}")

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for s, c in other._terms.items():
            v = out[s] + c if s in out else c
            if v:
                out[s] = v
            else:
                out.pop(s, None)
        return MultiDiffOp._raw(self.nvars, self.arity, out)

    def __neg__(self):
        return MultiDiffOp._raw(self.nvars, self.arity, {s: -c for s, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return MultiDiffOp.zero(self.nvars, self.arity)
        return MultiDiffOp._raw(
            self.nvars, self.arity, {s: p.scale(c) for s, p in self._terms.items()}
        )

    def times_poly(self, p):
        """``p * D``: multiply the output (every coefficient) by ``p``."""
        if p.nvars != self.nvars:
            raise ContextMismatchError("coefficient lives in a different ring")
        out = {}
        for s, c in self._terms.items():
            v = c * p
            if v:
                out[s] = v
        return MultiDiffOp._raw(self.nvars, self.arity, out)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, Polynomial):
            return self.times_poly(other)
        return NotImplemented

    __rmul__ = __mul__

    def permute_slots(self, perm):
        """Operator whose slot ``j`` carries this operator's slot ``perm[j]`` (0-based)."""
        out = {}
        for s, c in self._terms.items():
            ns = tuple(s[p] for p in perm)
            out[ns] = out[ns] + c if ns in out else c
            if not out[ns]:
                del out[ns]
        return MultiDiffOp._raw(self.nvars, self.arity, out)

    # -- equality
    def __eq__(self, other):
        if not isinstance(other, MultiDiffOp):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.arity == other.arity
            and self._terms == other._terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.arity, frozenset(self._terms.items())))
        return self._hash

    # -- text / json
    def __str__(self):
        return format_operator(self)

    def __repr__(self):
        return f"MultiDiffOp(m={self.nvars}, arity={self.arity}, {str(self)!r})"

    def to_json(self):
        return {
            "vars": self.nvars,
            "arity": self.arity,
            "terms": [
                {"coeff": c.to_json(), "slots": [list(a) for a in s]}
                for s, c in self.terms()
            ],
        }

    @classmethod
    def from_json(cls, data):
        m = data["vars"]
        return cls(
            m,
            data["arity"],
            {
                tuple(tuple(a) for a in t["slots"]): Polynomial.from_json(t["coeff"], m)
                for t in data["terms"]
            },
        )

    @classmethod
    def parse(cls, src, m=None, arity=None):
        from .dsl import parse_operator

        return parse_operator(src, m, arity=arity)


@dataclass(frozen=True)
class ZeroCochain:
    """A degree-0 Hochschild cochain, i.e. an element of the algebra itself."""

    value: Polynomial

    @property
    def nvars(self):
        return self.value.nvars


# -- text form -----------------------------------------------------------------


def format_slots(slots):
    return "D[" + "|".join(",".join(str(e) for e in a) for a in slots) + "]"


def format_operator(op):
    if op.is_zero():
        return "0"
    pieces = []
    for slots, c in op.terms():
        d = format_slots(slots)
        if len(c) == 1:
            (mono, v), = c.terms()
            if not any(mono):
                if v == 1:
                    pieces.append(d)
                elif v == -1:
                    pieces.append("-" + d)
                else:
                    pieces.append(f"{format_rational(v)}*{d}")
            else:
                pieces.append(f"{format_term(v, mono)}*{d}")
        else:
            pieces.append(f"({c})*{d}")
    out = pieces[0]
    for p in pieces[1:]:
        out += " - " + p[1:] if p.startswith("-") else " + " + p
    return out


# -- constructors --------------------------------------------------------------


def identity(m):
    """``id_A``: a single order-0 slot with coefficient 1."""
    return MultiDiffOp._raw(m, 1, {(mi_zero(m),): Polynomial.constant(m, 1)})


def mu(m):
    """The algebra product as an arity-2 operator."""
    return MultiDiffOp._raw(m, 2, {(mi_zero(m), mi_zero(m)): Polynomial.constant(m, 1)})


def partial(m, i, coeff=1):
    """``coeff * d/dx_i`` as an arity-1 operator."""
    return MultiDiffOp(m, 1, {(mi_unit(m, i),): coeff})


def multiplication(p):
    """Multiplication by the polynomial ``p`` (an order-0 arity-1 operator)."""
    return MultiDiffOp(p.nvars, 1, {(mi_zero(p.nvars),): p})


# -- operations -----------------------------------------------------------------


def apply(D, args):
    """Evaluate ``D(args[0], ..., args[n-1])`` exactly."""
    args = list(args)
    if len(args) != D.arity:
        raise ArityError(f"arity-{D.arity} operator applied to {len(args)} arguments")
    for a in args:
        if a.nvars != D.nvars:
            raise ContextMismatchError("argument lives in a different ring")
    cache = {}
    total = Polynomial.zero(D.nvars)
    for slots, c in D._terms.items():
        term = c
        for j, a in enumerate(slots):
            key = (j, a)
            if key not in cache:
                cache[key] = args[j].partial_multi(a)
            term = term * cache[key]
            if not term:
                break
        total = total + term
    return total


def op_add(D, E):
    return D + E


def op_scale(c, D):
    return D.scale(c)


def syntactic_order(D):
    """Largest per-slot order ``|a_j|`` over all terms."""
    if D.is_zero():
        raise OrderUndefinedError("the zero operator has no order")
    return max(sum(a) for s in D._terms for a in s)


def vanishes_on_constants(D):
    """True iff every slot of every term differentiates at least once."""
    return all(sum(a) >= 1 for s in D._terms for a in s)


def _commutator_with_variable(D, i):
    # b -> D(x_i b) - x_i D(b), built by composing with the multiplication operator
    from .hochschild import partial_compose

    xi = Polynomial.variable(D.nvars, i)
    return partial_compose(D, 1, multiplication(xi)) - D.times_poly(xi)


def is_diff_op_of_order_at_most(D, r):
    """Recursive commutator test for ``order(D) <= r`` on an arity-1 operator.

    Order 0 means ``D`` is multiplication by a polynomial.  For ``r > 0`` the
    operator has order ``<= r`` iff each commutator ``[D, x_i]`` with a
    coordinate generator has order ``<= r - 1``; the generators suffice because
    ``[D, ab] = a[D, b] + [D, a]b``.
    """
    if D.arity != 1:
        raise ArityError("the order test applies to arity-1 operators only")
    if r < 0:
        raise ValueError("order bound must be non-negative")
    return _order_le(D, r, {})


def _order_le(D, r, memo):
    if D.is_zero():
        return True
    key = (D, r)
    if key in memo:
        return memo[key]
    if r == 0:
        ok = all(not any(s[0]) for s in D._terms)
    else:
        ok = all(
            _order_le(_commutator_with_variable(D, i), r - 1, memo)
            for i in range(1, D.nvars + 1)
        )
    memo[key] = ok
    return ok
