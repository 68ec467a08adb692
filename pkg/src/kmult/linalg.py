"""Exact linear algebra over the rationals.

Matrices store only nonzero entries, normalized to Fraction on
construction.  Ranks are computed by fraction-free Bareiss elimination
after clearing denominators when the matrix is dense (> 25% fill), and
by pivoted elimination over Fraction rows when it is sparse.  Both are
exact, so the choice is purely a cost heuristic.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

DENSE_FILL = Fraction(1, 4)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class RatMatrix:
    """Immutable sparse rational matrix."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        clean = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise ValueError(f"entry ({i},{j}) out of bounds for {rows}x{cols}")
            v = _frac(v)
            if v != 0:
                clean[(i, j)] = v
        self.entries = clean

    @classmethod
    def from_rows(cls, data) -> "RatMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = _frac(v)
        return cls(rows, cols, entries)

    @classmethod
    def from_columns(cls, ambient: int, columns) -> "RatMatrix":
        entries = {}
        for j, col in enumerate(columns):
            for i, v in enumerate(col):
                if v:
                    entries[(i, j)] = _frac(v)
        return cls(ambient, len(columns), entries)

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls(n, n, {(i, i): Fraction(1) for i in range(n)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, {})

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries.get((i, j), Fraction(0))

    def to_dense(self):
        grid = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            grid[i][j] = v
        return grid

    def column(self, j: int):
        return [self.entry(i, j) for i in range(self.rows)]

    @property
    def density(self) -> Fraction:
        cells = self.rows * self.cols
        return Fraction(len(self.entries), cells) if cells else Fraction(0)

    def transpose(self) -> "RatMatrix":
        return RatMatrix(self.cols, self.rows,
                         {(j, i): v for (i, j), v in self.entries.items()})

    def mul(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        by_row = {}
        for (i, k), v in self.entries.items():
            by_row.setdefault(i, []).append((k, v))
        by_col = {}
        for (k, j), v in other.entries.items():
            by_col.setdefault(k, []).append((j, v))
        acc = {}
        for i, left in by_row.items():
            for k, v in left:
                for j, w in by_col.get(k, ()):
                    key = (i, j)
                    acc[key] = acc.get(key, Fraction(0)) + v * w
        return RatMatrix(self.rows, other.cols, acc)

    def sub(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        acc = dict(self.entries)
        for key, v in other.entries.items():
            acc[key] = acc.get(key, Fraction(0)) - v
        return RatMatrix(self.rows, self.cols, acc)

    def add(self, other: "RatMatrix") -> "RatMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        acc = dict(self.entries)
        for key, v in other.entries.items():
            acc[key] = acc.get(key, Fraction(0)) + v
        return RatMatrix(self.rows, self.cols, acc)

    def scale(self, c) -> "RatMatrix":
        c = _frac(c)
        return RatMatrix(self.rows, self.cols,
                         {k: v * c for k, v in self.entries.items()})

    def hstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.rows != other.rows:
            raise ValueError("shape mismatch in hstack")
        acc = dict(self.entries)
        for (i, j), v in other.entries.items():
            acc[(i, j + self.cols)] = v
        return RatMatrix(self.rows, self.cols + other.cols, acc)

    def vstack(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.cols:
            raise ValueError("shape mismatch in vstack")
        acc = dict(self.entries)
        for (i, j), v in other.entries.items():
            acc[(i + self.rows, j)] = v
        return RatMatrix(self.rows + other.rows, self.cols, acc)

    def is_zero(self) -> bool:
        return not self.entries

    def power(self, n: int) -> "RatMatrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        out = RatMatrix.identity(self.rows)
        for _ in range(n):
            out = out.mul(self)
        return out

    def __eq__(self, other):
        return (isinstance(other, RatMatrix)
                and (self.rows, self.cols) == (other.rows, other.cols)
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __repr__(self):
        return f"RatMatrix({self.rows}x{self.cols}, {len(self.entries)} nonzero)"

    def rank(self) -> int:
        if not self.entries:
            return 0
        if self.density > DENSE_FILL and min(self.rows, self.cols) <= 64:
            return _rank_bareiss(self)
        return _rank_sparse(self)

    def kernel_basis(self):
        """Basis of the right nullspace, as a list of Fraction column vectors."""
        return _kernel(self)


def _rank_bareiss(m: RatMatrix) -> int:
    # Clear denominators row by row (does not change the rank), then
    # run integer fraction-free elimination.
    grid = []
    for i in range(m.rows):
        row = [m.entry(i, j) for j in range(m.cols)]
        scale = 1
        for v in row:
            scale = scale * v.denominator // gcd(scale, v.denominator)
        grid.append([int(v * scale) for v in row])
    rows, cols = m.rows, m.cols
    rank = 0
    prev = 1
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if grid[i][c]:
                piv = i
                break
        if piv is None:
            continue
        grid[r], grid[piv] = grid[piv], grid[r]
        pv = grid[r][c]
        for i in range(r + 1, rows):
            xi = grid[i][c]
            if xi or True:
                row_i = grid[i]
                row_r = grid[r]
                for j in range(c, cols):
                    row_i[j] = (pv * row_i[j] - xi * row_r[j]) // prev
        prev = pv
        rank += 1
        r += 1
        if r == rows:
            break
    return rank


def _rank_sparse(m: RatMatrix) -> int:
    rows = {}
    for (i, j), v in m.entries.items():
        rows.setdefault(i, {})[j] = v
    col_rows = {}
    for i, row in rows.items():
        for j in row:
            col_rows.setdefault(j, set()).add(i)
    rank = 0
    for c in sorted(col_rows):
        live = [i for i in col_rows.get(c, ()) if i in rows and c in rows[i]]
        if not live:
            continue
        piv = min(live, key=lambda i: (len(rows[i]), i))
        prow = rows.pop(piv)
        pval = prow[c]
        for i in list(col_rows.get(c, ())):
            if i == piv or i not in rows or c not in rows[i]:
                continue
            target = rows[i]
            factor = target[c] / pval
            for j, v in prow.items():
                nv = target.get(j, Fraction(0)) - factor * v
                if nv:
                    target[j] = nv
                    col_rows.setdefault(j, set()).add(i)
                else:
                    target.pop(j, None)
            if not target:
                del rows[i]
        rank += 1
    return rank


def _kernel(m: RatMatrix):
    # Reduced row echelon over Fraction; free columns parameterize the kernel.
    grid = m.to_dense()
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if grid[i][c]:
                piv = i
                break
        if piv is None:
            continue
        grid[r], grid[piv] = grid[piv], grid[r]
        pv = grid[r][c]
        grid[r] = [x / pv for x in grid[r]]
        for i in range(rows):
            if i != r and grid[i][c]:
                f = grid[i][c]
                grid[i] = [a - f * b for a, b in zip(grid[i], grid[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * cols
        vec[free] = Fraction(1)
        for rr, pc in enumerate(pivots):
            vec[pc] = -grid[rr][free]
        basis.append(vec)
    return basis


def rank(m: RatMatrix) -> int:
    return m.rank()


def kernel_basis(m: RatMatrix):
    return m.kernel_basis()


def quotient_dim(ambient_dim: int, span_cols: RatMatrix) -> int:
    """dim of ambient / column span."""
    if span_cols.rows != ambient_dim:
        raise ValueError("span columns must live in the ambient space")
    return ambient_dim - span_cols.rank()
