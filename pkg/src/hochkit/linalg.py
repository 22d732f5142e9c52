"""Exact sparse rational matrices: rank, kernel and linear solves.

Columns are sparse ``{row: Fraction}`` dicts.  Elimination is incremental and
column-by-column: each accepted column is stored in echelon form keyed by its
pivot row (its smallest row index), so reducing a new column only touches
pivots whose rows it actually meets.  Block-diagonal matrices therefore cost no
more than their blocks.
"""

from fractions import Fraction

__all__ = ["ExactMatrix", "EchelonBasis"]


class EchelonBasis:
    """Incrementally maintained echelon form of a set of sparse column vectors.

    Each stored vector remembers which combination of the inserted columns
    produced it, which gives kernel vectors and solutions for free.
    """

    def __init__(self, track=True):
        self.pivots = {}  # pivot row -> (vector, combination)
        self.track = track
        self.kernel = []
        self._count = 0

    @property
    def rank(self):
        return len(self.pivots)

    def reduce(self, vec, combo=None):
        """Reduce ``vec`` against the basis; returns ``(residual, combination)``."""
        v = {r: Fraction(c) for r, c in vec.items() if c}
        combo = dict(combo or {})
        pivots = self.pivots
        while True:
            hits = [r for r in v if r in pivots]
            if not hits:
                return v, combo
            r = min(hits)
            pv, pc = pivots[r]
            f = v[r] / pv[r]
            for rr, c in pv.items():
                nv = v.get(rr, 0) - f * c
                if nv:
                    v[rr] = nv
                else:
                    v.pop(rr, None)
            if self.track:
                for k, c in pc.items():
                    nc = combo.get(k, 0) - f * c
                    if nc:
                        combo[k] = nc
                    else:
                        combo.pop(k, None)

    def insert(self, vec):
        """Add a column; returns True if it increased the rank."""
        idx = self._count
        self._count += 1
        v, combo = self.reduce(vec, {idx: Fraction(1)} if self.track else None)
        if not v:
            if self.track:
                self.kernel.append(combo)
            return False
        self.pivots[min(v)] = (v, combo)
        return True

    def solve(self, target):
        """Coefficients ``x`` (by column index) with ``sum x_j col_j == target``, or None."""
        v, combo = self.reduce(target, {})
        if v:
            return None
        return {k: -c for k, c in combo.items() if c}


class ExactMatrix:
    """A ``rows x cols`` rational matrix stored column-sparse."""

    def __init__(self, rows, cols, columns=None):
        self.rows = rows
        self.cols = cols
        self.columns = [dict() for _ in range(cols)] if columns is None else [
            {r: Fraction(c) for r, c in col.items() if c} for col in columns
        ]
        if len(self.columns) != cols:
            raise ValueError("column count mismatch")
        for col in self.columns:
            for r in col:
                if not 0 <= r < rows:
                    raise IndexError(f"row {r} outside 0..{rows - 1}")
        self._echelon = None

    @classmethod
    def from_dense(cls, data):
        data = [list(r) for r in data]
        rows = len(data)
        cols = len(data[0]) if rows else 0
        columns = [{i: data[i][j] for i in range(rows) if data[i][j]} for j in range(cols)]
        return cls(rows, cols, columns)

    def to_dense(self):
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, c in col.items():
                out[i][j] = c
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.columns[j].get(i, Fraction(0))

    def nnz(self):
        return sum(len(c) for c in self.columns)

    def is_zero(self):
        return not any(self.columns)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        for col in other.columns:
            acc = {}
            for k, c in col.items():
                for i, a in self.columns[k].items():
                    v = acc.get(i, 0) + a * c
                    if v:
                        acc[i] = v
                    else:
                        acc.pop(i)
            out.append(acc)
        return ExactMatrix(self.rows, other.cols, out)

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.columns) == (other.rows, other.cols, other.columns)

    def restrict_rows(self, keep):
        """Submatrix on the rows in ``keep`` (renumbered in sorted order)."""
        keep = sorted(keep)
        where = {r: k for k, r in enumerate(keep)}
        cols = [{where[r]: c for r, c in col.items() if r in where} for col in self.columns]
        return ExactMatrix(len(keep), self.cols, cols)

    def echelon(self):
        if self._echelon is None:
            e = EchelonBasis()
            for col in self.columns:
                e.insert(col)
            self._echelon = e
        return self._echelon

    def rank(self):
        return self.echelon().rank

    def kernel_dim(self):
        return self.cols - self.rank()

    def kernel_basis(self):
        """Kernel vectors as sparse ``{column: Fraction}`` dicts."""
        return [dict(k) for k in self.echelon().kernel]

    def solve(self, b):
        """A sparse solution of ``A x = b`` or ``None`` if inconsistent."""
        return self.echelon().solve(b)
