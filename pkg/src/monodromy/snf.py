"""Exact Smith normal form of integer matrices.

``smith_normal_form(A)`` returns ``U``, ``V`` and the diagonal of ``D`` with
``U @ A @ V == D``.  The inverses of ``U`` and ``V`` are carried along so
unimodularity is certified exactly: an integer matrix with an integer
inverse has determinant +-1.

Matrices are handled sparsely as lists of ``{column: value}`` row dicts;
arithmetic is Python ``int`` so nothing can overflow.  Pivots are chosen by
minimal absolute value.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

SparseRows = list[dict[int, int]]


class SmithVerificationError(AssertionError):
    pass


def to_sparse(matrix: Sequence[Sequence[int]]) -> SparseRows:
    return [{j: int(v) for j, v in enumerate(row) if v} for row in matrix]


def to_dense(rows: SparseRows, ncols: int) -> list[list[int]]:
    dense = [[0] * ncols for _ in rows]
    for i, row in enumerate(rows):
        for j, v in row.items():
            dense[i][j] = v
    return dense


def identity_rows(n: int) -> SparseRows:
    return [{i: 1} for i in range(n)]


def transpose(rows: SparseRows, ncols: int) -> SparseRows:
    out: SparseRows = [{} for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, v in row.items():
            out[j][i] = v
    return out


def matmul(a: SparseRows, b: SparseRows) -> SparseRows:
    out: SparseRows = []
    for row in a:
        acc: dict[int, int] = {}
        for k, x in row.items():
            for j, y in b[k].items():
                acc[j] = acc.get(j, 0) + x * y
        out.append({j: v for j, v in acc.items() if v})
    return out


def _axpy(target: dict[int, int], source: dict[int, int], c: int) -> None:
    """target += c * source, in place, dropping zeros."""
    for j, v in source.items():
        w = target.get(j, 0) + c * v
        if w:
            target[j] = w
        else:
            target.pop(j, None)


class _Reducer:
    """Working state: D with row and column indexes, plus U, U^-1, V, V^-1.

    ``uinv_t`` and ``v_t`` are stored transposed so every update is a row
    operation on some sparse matrix.
    """

    def __init__(self, rows: SparseRows, m: int, n: int):
        self.m, self.n = m, n
        self.rows = [dict(r) for r in rows]
        self.cols: list[dict[int, int]] = [{} for _ in range(n)]
        for i, r in enumerate(self.rows):
            for j, v in r.items():
                self.cols[j][i] = v
        self.u = identity_rows(m)
        self.uinv_t = identity_rows(m)
        self.v_t = identity_rows(n)
        self.vinv = identity_rows(n)

    def _set(self, i: int, j: int, value: int) -> None:
        if value:
            self.rows[i][j] = value
            self.cols[j][i] = value
        else:
            self.rows[i].pop(j, None)
            self.cols[j].pop(i, None)

    def add_row(self, i: int, j: int, c: int) -> None:
        """row_i += c * row_j."""
        for col, v in list(self.rows[j].items()):
            self._set(i, col, self.rows[i].get(col, 0) + c * v)
        _axpy(self.u[i], self.u[j], c)
        _axpy(self.uinv_t[j], self.uinv_t[i], -c)

    def add_col(self, i: int, j: int, c: int) -> None:
        """col_i += c * col_j."""
        for row, v in list(self.cols[j].items()):
            self._set(row, i, self.cols[i].get(row, 0) + c * v)
        _axpy(self.v_t[i], self.v_t[j], c)
        _axpy(self.vinv[j], self.vinv[i], -c)

    def negate_row(self, i: int) -> None:
        for col, v in list(self.rows[i].items()):
            self._set(i, col, -v)
        self.u[i] = {k: -v for k, v in self.u[i].items()}
        self.uinv_t[i] = {k: -v for k, v in self.uinv_t[i].items()}

    def clear_cross(self, r: int, c: int) -> tuple[int, int]:
        """Reduce until (r, c) is the only nonzero entry in its row and column.

        The pivot may migrate within the cross; returns its final position.
        """
        while True:
            p = self.rows[r][c]
            for i, v in list(self.cols[c].items()):
                if i != r:
                    self.add_row(i, r, -(v // p))
            for j, v in list(self.rows[r].items()):
                if j != c:
                    self.add_col(j, c, -(v // p))
            if len(self.cols[c]) == 1 and len(self.rows[r]) == 1:
                return r, c
            # nonzero remainders are strictly smaller than |p|: move the pivot
            best = (abs(p), r, c)
            for i, v in self.cols[c].items():
                if abs(v) < best[0]:
                    best = (abs(v), i, c)
            for j, v in self.rows[r].items():
                if abs(v) < best[0]:
                    best = (abs(v), r, j)
            _, r, c = best


@dataclass
class SmithDecomposition:
    """``U @ A @ V == diag(diagonal)`` with U (m x m) and V (n x n) unimodular."""

    shape: tuple[int, int]
    diagonal: list[int]
    u: SparseRows
    u_inv: SparseRows
    v: SparseRows
    v_inv: SparseRows

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.diagonal if d > 1]

    def d_rows(self) -> SparseRows:
        m, _ = self.shape
        rows: SparseRows = [{} for _ in range(m)]
        for k, d in enumerate(self.diagonal):
            rows[k][k] = d
        return rows

    def verify(self, a: SparseRows) -> None:
        """Exact check of ``U A V = D``, ``U U^-1 = I``, ``V V^-1 = I`` and the
        divisibility chain of the diagonal."""
        m, n = self.shape
        if matmul(matmul(self.u, a), self.v) != self.d_rows():
            raise SmithVerificationError("U A V != D")
        if matmul(self.u, self.u_inv) != identity_rows(m):
            raise SmithVerificationError("U is not unimodular")
        if matmul(self.v, self.v_inv) != identity_rows(n):
            raise SmithVerificationError("V is not unimodular")
        for d, e in zip(self.diagonal, self.diagonal[1:]):
            if d <= 0 or e % d:
                raise SmithVerificationError(f"diagonal {self.diagonal} is not a divisor chain")
        if any(d <= 0 for d in self.diagonal):
            raise SmithVerificationError("diagonal entries must be positive")


def smith_normal_form(a: SparseRows | Sequence[Sequence[int]], shape: tuple[int, int] | None = None,
                      verify: bool = False) -> SmithDecomposition:
    """Smith normal form of an integer matrix given densely or as sparse rows.

    Sparse input needs ``shape`` since trailing zero columns are invisible.
    """
    if shape is None:
        dense = [list(r) for r in a]
        m = len(dense)
        n = len(dense[0]) if m else 0
        rows = to_sparse(dense)
    else:
        m, n = shape
        rows = [dict(r) for r in a]
    red = _Reducer(rows, m, n)

    pivots: list[tuple[int, int]] = []
    active = {i for i in range(m) if red.rows[i]}
    while active:
        best = None
        for i in active:
            for j, v in red.rows[i].items():
                if best is None or abs(v) < best[0]:
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        _, r, c = best
        r, c = red.clear_cross(r, c)
        pivots.append((r, c))
        active.discard(r)
        active = {i for i in active if red.rows[i]}

    for r, c in pivots:
        if red.rows[r][c] < 0:
            red.negate_row(r)

    # enforce d_i | d_j for i < j by replacing pairs with (gcd, lcm)
    for x in range(len(pivots)):
        for y in range(x + 1, len(pivots)):
            (r1, c1), (r2, c2) = pivots[x], pivots[y]
            d1, d2 = red.rows[r1][c1], red.rows[r2][c2]
            if d2 % d1 == 0:
                continue
            red.add_col(c1, c2, 1)
            r, c = red.clear_cross(r1, c1)
            g = red.rows[r][c]
            other = ((r2, c2) if r == r1 else (r1, c2)) if c == c1 else ((r2, c1) if r == r1 else (r1, c1))
            pivots[x], pivots[y] = (r, c), other
            for pr, pc in pivots[x], pivots[y]:
                if red.rows[pr][pc] < 0:
                    red.negate_row(pr)
            assert abs(g) == gcd(d1, d2)

    row_order = [r for r, _ in pivots] + sorted(set(range(m)) - {r for r, _ in pivots})
    col_order = [c for _, c in pivots] + sorted(set(range(n)) - {c for _, c in pivots})

    u = [red.u[old] for old in row_order]
    u_inv = transpose([red.uinv_t[old] for old in row_order], m)
    v = transpose([red.v_t[old] for old in col_order], n)
    v_inv = [red.vinv[old] for old in col_order]
    diagonal = [red.rows[r][c] for r, c in pivots]
    result = SmithDecomposition((m, n), diagonal, u, u_inv, v, v_inv)
    if verify:
        result.verify(rows)
    return result
