"""Exact integer matrix algebra: Smith normal form, rank, integer kernels.

Everything here runs on Python's arbitrary-precision integers; no floating
point is used anywhere.  Matrices are immutable (entries live in a tuple, in
row-major order), so all routines are safe for concurrent use.

The Smith normal form is the computational bedrock for every homology
computation in this package.  Pivoting always picks the nonzero entry of
smallest absolute value, breaking ties by lowest (row, column); this keeps
intermediate entry growth down and makes the output deterministic.  The
unimodular transforms are only computed when a caller actually needs them
(`smith_normal_form`); rank and torsion queries go through the cheaper
`smith_diagonal`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class IntegerMatrix:
    """An immutable integer matrix stored row-major."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(int(e) for e in entries)
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, "
                f"got {len(entries)}"
            )
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        else:
            ncols = 0 if cols is None else cols
        flat = [e for r in rows for e in r]
        return cls(len(rows), ncols, flat)

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntegerMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def entry(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> tuple[int, ...]:
        return self.entries[j :: self.cols] if self.cols else ()

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntegerMatrix":
        ent = []
        for j in range(self.cols):
            ent.extend(self.entries[i * self.cols + j] for i in range(self.rows))
        return IntegerMatrix(self.cols, self.rows, ent)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def mul(self, other: "IntegerMatrix") -> "IntegerMatrix":
        """Exact product, skipping zero entries (boundary matrices are sparse)."""
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} * {other.shape}")
        out = [0] * (self.rows * other.cols)
        oc = other.cols
        for i in range(self.rows):
            base = i * self.cols
            obase = i * oc
            for k in range(self.cols):
                a = self.entries[base + k]
                if a:
                    kbase = k * oc
                    for j in range(oc):
                        b = other.entries[kbase + j]
                        if b:
                            out[obase + j] += a * b
        return IntegerMatrix(self.rows, oc, out)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "IntegerMatrix":
        ent = []
        for i in row_idx:
            base = i * self.cols
            ent.extend(self.entries[base + j] for j in col_idx)
        return IntegerMatrix(len(row_idx), len(col_idx), ent)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def nonzero_items(self):
        """Yield (i, j, value) for nonzero entries, row-major order."""
        c = self.cols
        for idx, v in enumerate(self.entries):
            if v:
                yield idx // c, idx % c, v

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntegerMatrix)
            and self.shape == other.shape
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        if self.rows * self.cols <= 36:
            return f"IntegerMatrix({self.to_rows()!r})"
        return f"IntegerMatrix(<{self.rows}x{self.cols}>)"


@dataclass(frozen=True)
class SmithDecomposition:
    """U * M * V = D with U, V unimodular and D diagonal.

    ``diagonal`` lists the positive invariant factors d_1 | d_2 | ... | d_r;
    every remaining diagonal entry of D is zero.
    """

    U: IntegerMatrix
    D: IntegerMatrix
    V: IntegerMatrix
    diagonal: tuple[int, ...]

    def verify(self, m: IntegerMatrix) -> bool:
        """Check U*M*V == D and the shape of the diagonal (not unimodularity)."""
        if self.U.mul(m).mul(self.V) != self.D:
            return False
        for k in range(min(self.D.rows, self.D.cols)):
            expected = self.diagonal[k] if k < len(self.diagonal) else 0
            if self.D.entry(k, k) != expected:
                return False
        for i, j, _ in self.D.nonzero_items():
            if i != j:
                return False
        return _divisibility_chain_ok(self.diagonal)


def _divisibility_chain_ok(diag: Sequence[int]) -> bool:
    if any(d <= 0 for d in diag):
        return False
    return all(diag[k + 1] % diag[k] == 0 for k in range(len(diag) - 1))


class _Eliminator:
    """Sparse elimination engine shared by the diagonal-only and full SNF.

    The work matrix is held as a dict of sparse rows plus a column index.
    Row operations optionally mirror into U (a dense rows x rows transform)
    and column operations into V (cols x cols), so that U*M*V equals the
    eliminated matrix at every step.
    """

    def __init__(self, m: IntegerMatrix, with_transforms: bool):
        self.nrows = m.rows
        self.ncols = m.cols
        self.rowdata: dict[int, dict[int, int]] = {}
        self.colindex: dict[int, set[int]] = {}
        for i, j, v in m.nonzero_items():
            self.rowdata.setdefault(i, {})[j] = v
            self.colindex.setdefault(j, set()).add(i)
        self.with_transforms = with_transforms
        if with_transforms:
            self.U = [[1 if i == j else 0 for j in range(m.rows)] for i in range(m.rows)]
            self.V = [[1 if i == j else 0 for j in range(m.cols)] for i in range(m.cols)]
        self.diagonal: list[int] = []
        self.pivots: list[tuple[int, int]] = []

    # -- elementary operations ------------------------------------------

    def _set(self, r: int, c: int, v: int) -> None:
        if v:
            self.rowdata.setdefault(r, {})[c] = v
            self.colindex.setdefault(c, set()).add(r)
        else:
            row = self.rowdata.get(r)
            if row and c in row:
                del row[c]
                if not row:
                    del self.rowdata[r]
                col = self.colindex[c]
                col.discard(r)
                if not col:
                    del self.colindex[c]

    def row_op(self, dst: int, src: int, q: int) -> None:
        """row[dst] -= q * row[src]"""
        if q == 0:
            return
        src_row = dict(self.rowdata.get(src, {}))
        for c, v in src_row.items():
            cur = self.rowdata.get(dst, {}).get(c, 0)
            self._set(dst, c, cur - q * v)
        if self.with_transforms:
            U, Udst, Usrc = self.U, self.U[dst], self.U[src]
            for k in range(self.nrows):
                Udst[k] -= q * Usrc[k]

    def col_op(self, dst: int, src: int, q: int) -> None:
        """col[dst] -= q * col[src]"""
        if q == 0:
            return
        for r in sorted(self.colindex.get(src, set())):
            v = self.rowdata[r][src]
            cur = self.rowdata.get(r, {}).get(dst, 0)
            self._set(r, dst, cur - q * v)
        if self.with_transforms:
            for row in self.V:
                row[dst] -= q * row[src]

    def negate_row(self, r: int) -> None:
        for c, v in list(self.rowdata.get(r, {}).items()):
            self.rowdata[r][c] = -v
        if self.with_transforms:
            self.U[r] = [-x for x in self.U[r]]

    # -- pivot machinery --------------------------------------------------

    def _find_pivot(self) -> tuple[int, int, int] | None:
        best = None
        for r in sorted(self.rowdata):
            for c in sorted(self.rowdata[r]):
                v = self.rowdata[r][c]
                key = (abs(v), r, c)
                if best is None or key < best[0]:
                    best = (key, r, c)
        if best is None:
            return None
        _, r, c = best
        return r, c, self.rowdata[r][c]

    def run(self) -> None:
        while True:
            found = self._find_pivot()
            if found is None:
                break
            r, c, v = found
            if v < 0:
                self.negate_row(r)
                v = -v
            r, c, v = self._reduce_pivot(r, c, v)
            self.diagonal.append(v)
            self.pivots.append((r, c))
            # pivot row/column now hold only the pivot entry; retire them
            self._set(r, c, 0)

        assert _divisibility_chain_ok(self.diagonal)

    def _reduce_pivot(self, r: int, c: int, v: int) -> tuple[int, int, int]:
        """Clear row r / column c, keeping the pivot dividing everything left."""
        while True:
            # clear the pivot column
            moved = True
            while moved:
                moved = False
                for r2 in sorted(self.colindex.get(c, set()) - {r}):
                    q = self.rowdata[r2][c] // v
                    self.row_op(r2, r, q)
                # remainders lie in [0, v); a nonzero one becomes the new pivot
                rem = [
                    (self.rowdata[r2][c], r2)
                    for r2 in self.colindex.get(c, set()) - {r}
                ]
                if rem:
                    v, r = min(rem)
                    moved = True
            # clear the pivot row (column ops never touch column c)
            moved = True
            while moved:
                moved = False
                for c2 in sorted(set(self.rowdata.get(r, {})) - {c}):
                    q = self.rowdata[r][c2] // v
                    self.col_op(c2, c, q)
                rem = [
                    (self.rowdata[r][c2], c2)
                    for c2 in set(self.rowdata.get(r, {})) - {c}
                ]
                if rem:
                    v, c = min(rem)
                    moved = True
                    # the new pivot column may be dirty; restart fully
                    break
            if set(self.rowdata.get(r, {})) - {c} or self.colindex.get(c, set()) - {r}:
                continue
            # pivot isolated; enforce divisibility of the remaining submatrix
            bad = self._find_nondivisible(r, v)
            if bad is None:
                return r, c, v
            self.row_op(r, bad, -1)  # fold the offending row into the pivot row

    def _find_nondivisible(self, pivot_row: int, v: int) -> int | None:
        if v == 1:
            return None
        for r2 in sorted(self.rowdata):
            if r2 == pivot_row:
                continue
            for c2 in sorted(self.rowdata[r2]):
                if self.rowdata[r2][c2] % v:
                    return r2
        return None

    # -- result assembly ---------------------------------------------------

    def permuted_transforms(self) -> tuple[IntegerMatrix, IntegerMatrix]:
        """Reorder U rows / V columns so pivots land on the main diagonal."""
        pivot_rows = [r for r, _ in self.pivots]
        pivot_cols = [c for _, c in self.pivots]
        row_order = pivot_rows + [r for r in range(self.nrows) if r not in set(pivot_rows)]
        col_order = pivot_cols + [c for c in range(self.ncols) if c not in set(pivot_cols)]
        u_ent = [x for r in row_order for x in self.U[r]]
        v_ent = [self.V[i][c] for i in range(self.ncols) for c in col_order]
        U = IntegerMatrix(self.nrows, self.nrows, u_ent)
        V = IntegerMatrix(self.ncols, self.ncols, v_ent)
        return U, V


def smith_diagonal(m: IntegerMatrix) -> tuple[int, ...]:
    """The invariant factors of m (positive entries of its Smith form only)."""
    worker = _Eliminator(m, with_transforms=False)
    worker.run()
    return tuple(worker.diagonal)


def smith_normal_form(m: IntegerMatrix) -> SmithDecomposition:
    """Full Smith decomposition U*M*V = D with unimodular transforms.

    U and V are products of elementary integer operations (determinant +-1 by
    construction).  Output is deterministic for a given input.
    """
    worker = _Eliminator(m, with_transforms=True)
    worker.run()
    U, V = worker.permuted_transforms()
    diag = tuple(worker.diagonal)
    d_ent = [0] * (m.rows * m.cols)
    for k, d in enumerate(diag):
        d_ent[k * m.cols + k] = d
    D = IntegerMatrix(m.rows, m.cols, d_ent)
    result = SmithDecomposition(U=U, D=D, V=V, diagonal=diag)
    assert result.verify(m), "Smith decomposition postcondition failed"
    return result


def rank(m: IntegerMatrix) -> int:
    """Rank of m over Q (= number of nonzero Smith diagonal entries)."""
    return len(smith_diagonal(m))


def integer_kernel_basis(m: IntegerMatrix) -> list[tuple[int, ...]]:
    """A lattice basis of {v : M v = 0}.

    With U*M*V = D, the columns of V past the rank satisfy M v = 0 and span
    the kernel lattice saturately (V is unimodular).
    """
    if m.cols == 0:
        return []
    snf = smith_normal_form(m)
    r = len(snf.diagonal)
    return [snf.V.column(j) for j in range(r, m.cols)]
