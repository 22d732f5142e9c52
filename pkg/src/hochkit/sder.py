"""Iterated derivations: composition words of vector fields and the order filtration."""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ArityError, ContextMismatchError, DecompositionError
from .exact_poly import Polynomial, format_rational, mi_unit
from .hochschild import partial_compose
from .multiop import (
    MultiDiffOp,
    is_diff_op_of_order_at_most,
    syntactic_order,
    vanishes_on_constants,
)

__all__ = [
    "VectorField",
    "CompositionWord",
    "SDerDecomposition",
    "expand_word",
    "word_order_check",
    "sder_decompose",
]


@dataclass(frozen=True)
class VectorField:
    """``sum_i components[i] * d/dx_{i+1}``."""

    components: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        if not comps:
            raise ValueError("a vector field needs at least one component")
        m = comps[0].nvars
        if len(comps) != m or any(c.nvars != m for c in comps):
            raise ContextMismatchError("vector field needs exactly m components in m variables")
        object.__setattr__(self, "components", comps)

    @property
    def nvars(self):
        return len(self.components)

    @classmethod
    def coordinate(cls, m, i, coeff=None):
        """``coeff * d/dx_i``; ``coeff`` defaults to 1."""
        comps = [Polynomial.zero(m)] * m
        comps[i - 1] = Polynomial.constant(m, 1) if coeff is None else coeff
        return cls(tuple(comps))

    @classmethod
    def from_op(cls, op):
        if op.arity != 1:
            raise ArityError("vector fields have arity 1")
        m = op.nvars
        comps = [Polynomial.zero(m)] * m
        for (a,), c in op._terms.items():
            if sum(a) != 1:
                raise ValueError(f"term with slot {a} is not first order")
            comps[a.index(1)] = c
        return cls(tuple(comps))

    def to_op(self):
        m = self.nvars
        return MultiDiffOp(m, 1, {(mi_unit(m, i + 1),): c for i, c in enumerate(self.components) if c})

    def __str__(self):
        return str(self.to_op())

    def to_json(self):
        return [c.to_json() for c in self.components]


@dataclass(frozen=True)
class CompositionWord:
    """``factors[0] o factors[1] o ...``; the last factor acts first."""

    factors: tuple

    def __post_init__(self):
        f = tuple(self.factors)
        if not f:
            raise ValueError("a composition word has at least one factor")
        object.__setattr__(self, "factors", f)

    def __len__(self):
        return len(self.factors)

    def __str__(self):
        return " o ".join(f"[{x}]" for x in self.factors)


@dataclass(frozen=True)
class SDerDecomposition:
    order: int
    words: tuple  # of (Fraction, CompositionWord)

    def expand(self, m):
        out = MultiDiffOp.zero(m, 1)
        for scalar, w in self.words:
            out = out + expand_word(w).scale(scalar)
        return out

    def to_json(self):
        return {
            "order": self.order,
            "words": [
                {"scalar": format_rational(s), "factors": [x.to_json() for x in w.factors]}
                for s, w in self.words
            ],
        }

    def __str__(self):
        lines = [f"order <= {self.order}"]
        for s, w in self.words:
            lines.append(f"{format_rational(s)} * {w}")
        return "\n".join(lines)


def expand_word(word):
    """The composite of the word's vector fields as a canonical arity-1 operator."""
    ops = [x.to_op() for x in word.factors]
    out = ops[-1]
    for op in reversed(ops[:-1]):
        out = partial_compose(op, 1, out)
    return out


def word_order_check(word):
    """A length-``n`` word must be a derivation of order ``<= n``."""
    D = expand_word(word)
    return vanishes_on_constants(D) and is_diff_op_of_order_at_most(D, len(word))


def sder_decompose(D, r):
    """Write a constant-free order-``<= r`` operator as a sum of composition words.

    Each canonical term ``c * d^a`` becomes the word
    ``[c d_{i1}, d_{i2}, ..., d_{ik}]`` with ``i1 <= ... <= ik``: the
    coefficient sits on the outermost factor so the inner constant-coefficient
    factors compose without Leibniz cross terms.
    """
    if D.arity != 1:
        raise ArityError("only arity-1 operators decompose into composition words")
    if not vanishes_on_constants(D):
        raise DecompositionError("operator does not vanish on constants")
    if D.is_zero():
        return SDerDecomposition(r, ())
    if syntactic_order(D) > r:
        raise DecompositionError(f"operator has order {syntactic_order(D)} > {r}")
    m = D.nvars
    words = []
    for (alpha,), c in D.terms():
        idx = [i + 1 for i, e in enumerate(alpha) for _ in range(e)]
        factors = [VectorField.coordinate(m, idx[0], c)]
        factors += [VectorField.coordinate(m, i) for i in idx[1:]]
        words.append((Fraction(1), CompositionWord(tuple(factors))))
    return SDerDecomposition(r, tuple(words))
