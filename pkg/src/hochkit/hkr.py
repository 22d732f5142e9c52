"""Alternation, multivector fields, the HKR map, and truncated cohomology.

A :class:`Truncation` is a finite window ``(m, n, r, d)`` of the polydifferential
complex: arity-``n`` operators whose slots all have order in ``1..r`` and whose
coefficients have degree ``<= d``.  The differential preserves both the slot
order bound and the coefficient degree, so it maps window ``(n, r, d)`` into
window ``(n + 1, r, d)`` and cohomology can be computed with exact linear
algebra.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import comb, factorial

from .errors import (
    ContextMismatchError,
    NoSolutionInWindowError,
    NotACocycleError,
    WindowMembershipError,
    WindowOverflowError,
)
from .exact_poly import Polynomial, format_term, mi_unit, monomials_up_to, multi_indices
from .hochschild import hochschild_delta
from .linalg import EchelonBasis, ExactMatrix
from .multiop import MultiDiffOp, ZeroCochain, vanishes_on_constants

__all__ = [
    "MultiVectorField",
    "Truncation",
    "alt",
    "mvf_to_op",
    "op_to_mvf",
    "wedge",
    "enumerate_basis",
    "delta_matrix",
    "cohomology_dims",
    "cohomology_report",
    "slack_scan",
    "hkr_prediction",
    "split_cocycle",
]


def permutation_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _sort_with_sign(idx):
    """Sort an index tuple; returns ``(sign, sorted)`` or ``(0, None)`` on a repeat."""
    if len(set(idx)) != len(idx):
        return 0, None
    order = sorted(range(len(idx)), key=lambda k: idx[k])
    return permutation_sign(order), tuple(idx[k] for k in order)


# -- multivector fields ------------------------------------------------------


class MultiVectorField:
    """Antisymmetric contravariant tensor of degree ``n``.

    Components are keyed by strictly increasing 1-based index tuples; other
    tuples passed to the constructor are sorted with the permutation sign, and
    tuples with a repeated index are dropped.  Degree 0 is a bare polynomial
    stored under the key ``()``.
    """

    __slots__ = ("nvars", "degree", "_comps")

    def __init__(self, nvars, degree, components=None):
        self.nvars = nvars
        self.degree = degree
        comps = {}
        for idx, c in dict(components or {}).items():
            idx = tuple(idx)
            if len(idx) != degree or any(not 1 <= i <= nvars for i in idx):
                raise ContextMismatchError(f"bad index tuple {idx} for degree {degree}, m={nvars}")
            if not isinstance(c, Polynomial):
                c = Polynomial.constant(nvars, c)
            elif c.nvars != nvars:
                raise ContextMismatchError("coefficient lives in a different ring")
            sign, key = _sort_with_sign(idx)
            if not sign:
                continue
            v = comps.get(key, Polynomial.zero(nvars)) + (c if sign > 0 else -c)
            if v:
                comps[key] = v
            else:
                comps.pop(key, None)
        self._comps = comps

    @classmethod
    def zero(cls, m, degree):
        return cls(m, degree)

    def components(self):
        return sorted(self._comps.items())

    def coeff(self, idx):
        sign, key = _sort_with_sign(tuple(idx))
        if not sign:
            return Polynomial.zero(self.nvars)
        c = self._comps.get(key, Polynomial.zero(self.nvars))
        return c if sign > 0 else -c

    def is_zero(self):
        return not self._comps

    def __bool__(self):
        return bool(self._comps)

    def _check(self, other):
        if self.nvars != other.nvars or self.degree != other.degree:
            raise ContextMismatchError("multivector fields of different shape")

    def __add__(self, other):
        self._check(other)
        out = dict(self._comps)
        for k, c in other._comps.items():
            out[k] = out[k] + c if k in out else c
        return MultiVectorField(self.nvars, self.degree, out)

    def __neg__(self):
        return MultiVectorField(self.nvars, self.degree, {k: -c for k, c in self._comps.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return MultiVectorField(self.nvars, self.degree, {k: v.scale(c) for k, v in self._comps.items()})

    def __eq__(self, other):
        if not isinstance(other, MultiVectorField):
            return NotImplemented
        return (self.nvars, self.degree, self._comps) == (other.nvars, other.degree, other._comps)

    def __hash__(self):
        return hash((self.nvars, self.degree, frozenset(self._comps.items())))

    def __str__(self):
        if not self._comps:
            return "0"
        pieces = []
        for idx, c in self.components():
            w = "W[" + ",".join(map(str, idx)) + "]" if idx else ""
            if not w:
                pieces.append(str(c))
            elif len(c) == 1:
                (mono, v), = c.terms()
                if not any(mono):
                    pieces.append(w if v == 1 else "-" + w if v == -1 else f"{v}*{w}")
                else:
                    pieces.append(f"{format_term(v, mono)}*{w}")
            else:
                pieces.append(f"({c})*{w}")
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"MultiVectorField(m={self.nvars}, degree={self.degree}, {str(self)!r})"

    def to_json(self):
        return {
            "vars": self.nvars,
            "degree": self.degree,
            "components": [{"indices": list(k), "coeff": c.to_json()} for k, c in self.components()],
        }

    @classmethod
    def from_json(cls, data):
        m = data["vars"]
        return cls(
            m,
            data["degree"],
            {tuple(t["indices"]): Polynomial.from_json(t["coeff"], m) for t in data["components"]},
        )


def wedge(eta, theta):
    """Exterior product with shuffle signs; coefficients multiply."""
    if eta.nvars != theta.nvars:
        raise ContextMismatchError("multivector fields over different rings")
    out = {}
    for i, a in eta._comps.items():
        for j, b in theta._comps.items():
            sign, key = _sort_with_sign(i + j)
            if not sign:
                continue
            v = a * b
            v = v if sign > 0 else -v
            out[key] = out[key] + v if key in out else v
    return MultiVectorField(eta.nvars, eta.degree + theta.degree, out)


# -- alternation and the HKR maps -----------------------------------------------


@lru_cache(maxsize=None)
def _signed_permutations(n):
    return tuple((p, permutation_sign(p)) for p in permutations(range(n)))


def alt(D):
    """Signed average of ``D`` over all permutations of its slots."""
    n = D.arity
    if n == 1 or D.is_zero():
        return D
    out = MultiDiffOp.zero(D.nvars, n)
    for perm, sign in _signed_permutations(n):
        piece = D.permute_slots(perm)
        out = out + piece if sign > 0 else out - piece
    return out.scale(Fraction(1, factorial(n)))


def mvf_to_op(eta):
    """``psi``: a degree-``n`` field as the alternating first-order operator it defines."""
    if eta.degree < 1:
        raise ValueError("psi is defined for degree >= 1")
    m, n = eta.nvars, eta.degree
    w = Fraction(1, factorial(n))
    flat = {}
    for idx, c in eta._comps.items():
        units = [mi_unit(m, i) for i in idx]
        for perm, sign in _signed_permutations(n):
            slots = tuple(units[p] for p in perm)
            for mono, v in c._terms.items():
                key = (slots, mono)
                flat[key] = flat.get(key, 0) + sign * w * v
    return MultiDiffOp.from_flat(m, n, flat)


def op_to_mvf(D):
    """``J``: alternate, keep the first-order-in-every-slot part, read off components.

    ``J`` is the identity on degree-0 cochains.
    """
    if isinstance(D, ZeroCochain):
        return MultiVectorField(D.nvars, 0, {(): D.value})
    if isinstance(D, Polynomial):
        return MultiVectorField(D.nvars, 0, {(): D})
    n = D.arity
    A = alt(D)
    scale = factorial(n)
    comps = {}
    for slots, c in A._terms.items():
        if any(sum(a) != 1 for a in slots):
            continue
        idx = tuple(a.index(1) + 1 for a in slots)
        if all(idx[k] < idx[k + 1] for k in range(n - 1)):
            comps[idx] = c.scale(scale)
    return MultiVectorField(D.nvars, n, comps)


# -- truncated complexes ---------------------------------------------------------


@dataclass(frozen=True)
class Truncation:
    vars: int
    arity: int
    max_slot_order: int
    max_coeff_degree: int

    def __post_init__(self):
        if min(self.vars, self.arity, self.max_slot_order, self.max_coeff_degree) < 0:
            raise ValueError("truncation bounds must be non-negative")

    def keys(self):
        """Basis as ``(slots, monomial)`` pairs, or bare monomials for arity 0."""
        return _window_keys(self.vars, self.arity, self.max_slot_order, self.max_coeff_degree)

    def size(self):
        return len(self.keys())

    def contains(self, D):
        if isinstance(D, (ZeroCochain, Polynomial)):
            p = D.value if isinstance(D, ZeroCochain) else D
            return self.arity == 0 and p.nvars == self.vars and p.degree <= self.max_coeff_degree
        return (
            D.nvars == self.vars
            and D.arity == self.arity
            and vanishes_on_constants(D)
            and all(sum(a) <= self.max_slot_order for s in D._terms for a in s)
            and D.coeff_degree <= self.max_coeff_degree
        )

    def as_dict(self):
        return {"m": self.vars, "n": self.arity, "r": self.max_slot_order, "d": self.max_coeff_degree}


@lru_cache(maxsize=64)
def _window_keys(m, n, r, d):
    monos = monomials_up_to(m, d)
    if n == 0:
        return tuple(monos)
    slots = multi_indices(m, 1, r)
    return tuple((s, g) for s in product(slots, repeat=n) for g in monos)


def enumerate_basis(t):
    """Ordered basis of the window: monomials for arity 0, single-term operators otherwise."""
    m = t.vars
    if t.arity == 0:
        return [Polynomial.monomial(g) if m else Polynomial.constant(0, 1) for g in t.keys()]
    return [
        MultiDiffOp._raw(m, t.arity, {s: Polynomial._raw(m, {g: Fraction(1)})})
        for s, g in t.keys()
    ]


def _threads():
    try:
        return max(1, int(os.environ.get("HOCHKIT_THREADS", "1")))
    except ValueError:
        return 1


@lru_cache(maxsize=4096)
def _delta_of_slots(slots, m):
    # the differential never differentiates coefficients, so the image of
    # x^g * (slot tuple) is x^g times the image of the bare slot tuple
    D = MultiDiffOp._raw(m, len(slots), {slots: Polynomial.constant(m, 1)})
    out = []
    for s, c in hochschild_delta(D)._terms.items():
        for mono, v in c._terms.items():
            out.append((s, v))  # constant coefficients only
    return tuple(out)


def _delta_image(key, m):
    slots, g = key
    return {(s, g): v for s, v in _delta_of_slots(slots, m)}


def _images(keys, m):
    workers = _threads()
    if workers == 1 or len(keys) < 64:
        return [_delta_image(k, m) for k in keys]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda k: _delta_image(k, m), keys))


def delta_matrix(t):
    """Matrix of the differential from window ``(n, r, d)`` to ``(n + 1, r, d)``."""
    m, n = t.vars, t.arity
    target = Truncation(m, n + 1, t.max_slot_order, t.max_coeff_degree)
    rows = {k: i for i, k in enumerate(target.keys())}
    if n == 0:
        return ExactMatrix(len(rows), t.size())
    cols = []
    for img in _images(t.keys(), m):
        col = {}
        for k, v in img.items():
            if k not in rows:
                raise WindowOverflowError(f"differential image {k} outside window {target}")
            col[rows[k]] = v
        cols.append(col)
    return ExactMatrix(len(rows), len(cols), cols)


def _rank_of_images(images, keep=None):
    """Rank of image columns, optionally restricted to rows satisfying ``keep``."""
    index = {}
    e = EchelonBasis(track=False)
    for img in images:
        col = {}
        for k, v in img.items():
            if keep is not None and not keep(k):
                continue
            if k not in index:
                index[k] = len(index)
            col[index[k]] = v
        e.insert(col)
    return e.rank


def _coboundary_dim(m, n, r, d, slack):
    """dim of (image of window (n-1, r+1, d+slack)) intersected with window (n, r, d)."""
    if n <= 1:
        return 0
    pre = Truncation(m, n - 1, r + 1, d + slack)
    images = _images(pre.keys(), m)
    inside = set(_window_keys(m, n, r, d))
    # dim(Im M cap W) = rank M - rank(M projected away from W)
    return _rank_of_images(images) - _rank_of_images(images, keep=lambda k: k not in inside)


def _cocycle_dim(m, n, r, d):
    if n == 0:
        return comb(m + d, d)
    t = Truncation(m, n, r, d)
    return t.size() - _rank_of_images(_images(t.keys(), m))


def cohomology_dims(m, r, d, n_max, slack=2):
    """Cohomology dimensions of the windows ``(n, r, d)`` for ``n = 0..n_max``.

    Cocycles are taken in window ``(n, r, d)``; coboundaries are images of window
    ``(n - 1, r + 1, d + slack)`` that land inside window ``(n, r, d)``.
    Degree 0 is the polynomial window with the zero differential.
    """
    return [_cocycle_dim(m, n, r, d) - _coboundary_dim(m, n, r, d, slack) for n in range(n_max + 1)]


def hkr_prediction(m, d, n_max):
    return [comb(m, n) * comb(m + d, d) for n in range(n_max + 1)]


def cohomology_report(m, r, d, n_max, slack=2):
    dims = cohomology_dims(m, r, d, n_max, slack)
    pred = hkr_prediction(m, d, n_max)
    return {
        "window": {"m": m, "n": n_max, "r": r, "d": d, "slack": slack},
        "dims": dims,
        "basis_sizes": [len(_window_keys(m, n, r, d)) for n in range(n_max + 1)],
        "hkr_prediction": pred,
        "match": dims == pred,
    }


def slack_scan(m, r, d, n_max, slacks=range(5)):
    """Cohomology dimensions for each slack; shows where the window stabilizes."""
    return {s: cohomology_dims(m, r, d, n_max, s) for s in slacks}


# -- cocycle splitting ---------------------------------------------------------------


def split_cocycle(D, t=None, slack=2):
    """Write a cocycle as ``delta(E) + psi(eta)``.

    ``eta`` is read off as ``J(D)``; ``E`` is found by an exact solve over the
    window ``(n - 1, r + 1, d + slack)``.  Returns ``(E, eta)`` where ``E`` is a
    :class:`ZeroCochain` when ``D`` has arity 1.
    """
    m, n = D.nvars, D.arity
    if t is None:
        r = max((sum(a) for s in D._terms for a in s), default=1)
        t = Truncation(m, n, max(r, 1), max(D.coeff_degree, 0))
    if not t.contains(D):
        raise WindowMembershipError(f"operator is not in window {t.as_dict()}")
    if hochschild_delta(D):
        raise NotACocycleError("operator is not a Hochschild cocycle")
    eta = op_to_mvf(D)
    rest = D - mvf_to_op(eta)
    window = {**t.as_dict(), "n": n - 1, "r": t.max_slot_order + 1,
              "d": t.max_coeff_degree + slack, "slack": slack}
    if n == 1:
        if rest:
            raise NoSolutionInWindowError("arity-1 remainder is not a coboundary", window)
        return ZeroCochain(Polynomial.zero(m)), eta
    pre = Truncation(m, n - 1, t.max_slot_order + 1, t.max_coeff_degree + slack)
    keys = pre.keys()
    index = {}
    e = EchelonBasis()
    for img in _images(keys, m):
        col = {}
        for k, v in img.items():
            col[index.setdefault(k, len(index))] = v
        e.insert(col)
    target = {}
    for s, g, v in rest.flat():
        if (s, g) not in index:
            raise NoSolutionInWindowError(f"no preimage in window {window}", window)
        target[index[(s, g)]] = v
    x = e.solve(target)
    if x is None:
        raise NoSolutionInWindowError(f"no preimage in window {window}", window)
    flat = {keys[j]: c for j, c in x.items()}
    return MultiDiffOp.from_flat(m, n - 1, flat), eta
