"""Sparse exact matrices and fraction-free elimination over the rationals."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

PIVOTING = ("sparse", "natural")


@dataclass
class SparseExactMatrix:
    """``rows x cols`` integer matrix stored as ``{(r, c): value}``."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        self.entries = {rc: int(v) for rc, v in self.entries.items() if v}
        for r, c in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise IndexError(f"entry ({r}, {c}) outside {self.rows}x{self.cols}")

    @classmethod
    def from_dense(cls, dense):
        dense = [list(row) for row in dense]
        rows = len(dense)
        cols = len(dense[0]) if rows else 0
        return cls(rows, cols, {(r, c): v for r, row in enumerate(dense) for c, v in enumerate(row) if v})

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    @property
    def nnz(self):
        return len(self.entries)

    def row_dicts(self):
        rows = [dict() for _ in range(self.rows)]
        for (r, c), v in self.entries.items():
            rows[r][c] = v
        return rows

    def transpose(self):
        return SparseExactMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self.entries.items()})

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        by_row = {}
        for (k, c), v in other.entries.items():
            by_row.setdefault(k, []).append((c, v))
        out = {}
        for (r, k), v in self.entries.items():
            for c, w in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), 0) + v * w
        return SparseExactMatrix(self.rows, other.cols, out)

    def is_zero(self):
        return not self.entries

    def permuted(self, row_perm=None, col_perm=None):
        """Matrix with row ``r`` moved to ``row_perm[r]`` (same for columns)."""
        rp = row_perm or list(range(self.rows))
        cp = col_perm or list(range(self.cols))
        return SparseExactMatrix(self.rows, self.cols, {(rp[r], cp[c]): v for (r, c), v in self.entries.items()})

    def to_triplets(self):
        """Text form: ``rows cols nnz`` then one ``r c value`` line per entry (0-based)."""
        lines = [f"{self.rows} {self.cols} {self.nnz}"]
        for (r, c) in sorted(self.entries):
            lines.append(f"{r} {c} {self.entries[(r, c)]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_triplets(cls, text):
        lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        rows, cols, nnz = map(int, lines[0])
        if len(lines) - 1 != nnz:
            raise ValueError(f"header announces {nnz} entries, found {len(lines) - 1}")
        entries = {(int(r), int(c)): int(v) for r, c, v in lines[1:]}
        return cls(rows, cols, entries)


def _primitive(row):
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            return row
    if g > 1:
        return {c: v // g for c, v in row.items()}
    return row


def _eliminate(row, pivot_row, col):
    """``a*row - b*pivot_row`` with the ``col`` entry cancelled, content removed."""
    a = pivot_row[col]
    b = row[col]
    g = gcd(a, b)
    a //= g
    b //= g
    out = {c: a * v for c, v in row.items()}
    for c, v in pivot_row.items():
        nv = out.get(c, 0) - b * v
        if nv:
            out[c] = nv
        else:
            out.pop(c, None)
    return _primitive(out)


def echelon(M, pivoting="sparse", reduce=False):
    """Fraction-free elimination; returns the list of ``(pivot col, row)``.

    ``pivoting="sparse"`` picks the pivot with the smallest Markowitz count
    (fewest fill-in candidates); ``"natural"`` walks the columns in order and
    takes the first row with a nonzero entry.  ``reduce`` also clears every
    pivot column above its pivot (Gauss-Jordan form).
    """
    if pivoting not in PIVOTING:
        raise ValueError(f"unknown pivoting {pivoting!r}")
    active = {i: _primitive(r) for i, r in enumerate(M.row_dicts()) if r}
    done = []
    if pivoting == "natural":
        for col in range(M.cols):
            cands = [i for i in sorted(active) if col in active[i]]
            if not cands:
                continue
            p = cands[0]
            prow = active.pop(p)
            for i in cands[1:]:
                r = _eliminate(active[i], prow, col)
                if r:
                    active[i] = r
                else:
                    del active[i]
            done.append((col, prow))
    else:
        while active:
            colcount = {}
            for r in active.values():
                for c in r:
                    colcount[c] = colcount.get(c, 0) + 1
            best = None
            for i in sorted(active):
                r = active[i]
                for c in sorted(r):
                    key = ((len(r) - 1) * (colcount[c] - 1), abs(r[c]), i, c)
                    if best is None or key < best[0]:
                        best = (key, i, c)
            _, p, col = best
            prow = active.pop(p)
            for i in [i for i in sorted(active) if col in active[i]]:
                r = _eliminate(active[i], prow, col)
                if r:
                    active[i] = r
                else:
                    del active[i]
            done.append((col, prow))
    if reduce:
        for k in range(len(done)):
            col, prow = done[k]
            for j in range(len(done)):
                if j != k and col in done[j][1]:
                    done[j] = (done[j][0], _eliminate(done[j][1], prow, col))
    return done


def rank(M, pivoting="sparse"):
    return len(echelon(M, pivoting))


def rank_kernel(M, pivoting="sparse"):
    """Exact rank and an integer basis of the right kernel of ``M``.

    Kernel vectors are primitive integer tuples, one per free column in
    increasing order, with a positive entry at that free column.
    """
    done = echelon(M, pivoting, reduce=True)
    pivot_cols = {col for col, _ in done}
    kernel = []
    for f in range(M.cols):
        if f in pivot_cols:
            continue
        vec = [Fraction(0)] * M.cols
        vec[f] = Fraction(1)
        for col, row in done:
            b = row.get(f)
            if b:
                vec[col] = Fraction(-b, row[col])
        kernel.append(_clear(vec))
    return len(done), kernel


def _clear(vec):
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return tuple(v // g for v in ints) if g > 1 else tuple(ints)
