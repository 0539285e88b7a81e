"""Chain complexes of finitely generated free modules over Z, and their
homology, cohomology, relative quotients, and induced maps.

A complex stores one boundary matrix per degree (from degree d down to d-1)
and validates d o d = 0 on construction.  Homology is computed from Smith
diagonals: free ranks by rank-nullity, torsion from the invariant factors of
the incoming boundary.  Complexes are immutable after construction and all
operations are pure.

Induced maps on homology are supported over Q: bases of homology are chosen
deterministically (boundary columns first, then integer kernel vectors, with
leftmost-independent selection), so matrices of induced maps are reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exactalg import IntegerMatrix, integer_kernel_basis, smith_diagonal

INTEGERS = "integers"
RATIONALS = "rationals"


class MalformedComplex(ValueError):
    """The boundary data does not define a chain complex."""


class NotASubcomplex(ValueError):
    """A selected generator has boundary outside the selection."""

    def __init__(self, degree: int, generator: int):
        self.degree = degree
        self.generator = generator
        super().__init__(
            f"generator {generator} in degree {degree} has boundary support "
            "outside the selected generators"
        )


class NotAChainMap(ValueError):
    """The given per-degree matrices do not commute with the boundaries."""

    def __init__(self, degree: int):
        self.degree = degree
        super().__init__(f"map fails to commute with boundaries at degree {degree}")


class HomologyProfile:
    """Graded summary of a (co)homology computation.

    Per degree: a free rank and a list of torsion coefficients (> 1, in
    divisibility order).  Degrees with trivial homology are not stored.
    """

    __slots__ = ("_data",)

    def __init__(self, data: Mapping[int, tuple[int, Sequence[int]]]):
        cleaned = {}
        for d, (free, torsion) in data.items():
            torsion = tuple(int(t) for t in torsion)
            if any(t <= 1 for t in torsion):
                raise ValueError("torsion coefficients must exceed 1")
            if free < 0:
                raise ValueError("free rank must be nonnegative")
            if free or torsion:
                cleaned[int(d)] = (int(free), torsion)
        self._data = cleaned

    def free_rank(self, degree: int) -> int:
        return self._data.get(degree, (0, ()))[0]

    def torsion(self, degree: int) -> tuple[int, ...]:
        return self._data.get(degree, (0, ()))[1]

    def degrees(self) -> list[int]:
        return sorted(self._data)

    def is_trivial(self) -> bool:
        return not self._data

    def total_torsion(self) -> list[tuple[int, int]]:
        """All (degree, coefficient) torsion pairs, sorted."""
        return [(d, t) for d in self.degrees() for t in self.torsion(d)]

    def to_entries(self) -> list[dict]:
        return [
            {"degree": d, "free_rank": f, "torsion": [str(t) for t in tor]}
            for d, (f, tor) in sorted(self._data.items())
        ]

    def __eq__(self, other) -> bool:
        return isinstance(other, HomologyProfile) and self._data == other._data

    def __hash__(self) -> int:
        return hash(tuple(sorted(self._data.items())))

    def __repr__(self) -> str:
        if not self._data:
            return "HomologyProfile(0)"
        parts = []
        for d in self.degrees():
            f, tor = self._data[d]
            term = []
            if f:
                term.append("Z" if f == 1 else f"Z^{f}")
            term.extend(f"Z/{t}" for t in tor)
            parts.append(f"[{d}]=" + "+".join(term))
        return "HomologyProfile(" + ", ".join(parts) + ")"


def profile(entries: Mapping[int, tuple[int, Sequence[int]]] | None = None) -> HomologyProfile:
    return HomologyProfile(entries or {})


class IntegerChainComplex:
    """A bounded complex of free Z-modules with explicit boundary matrices.

    ``ranks`` maps degree -> rank of the chain group; ``boundaries`` maps
    degree d -> the matrix of d_d : C_d -> C_{d-1}, of shape
    rank(d-1) x rank(d).  Degrees outside the stored range are zero.
    """

    __slots__ = ("_ranks", "_boundaries", "_diagonals")

    def __init__(
        self,
        ranks: Mapping[int, int],
        boundaries: Mapping[int, IntegerMatrix],
        _trusted: bool = False,
    ):
        self._ranks = {int(d): int(r) for d, r in ranks.items()}
        if any(r < 0 for r in self._ranks.values()):
            raise MalformedComplex("chain ranks must be nonnegative")
        self._boundaries = dict(boundaries)
        self._diagonals: dict[int, tuple[int, ...]] = {}
        if not _trusted:
            self._validate()

    def _validate(self) -> None:
        for d, m in self._boundaries.items():
            expected = (self.rank(d - 1), self.rank(d))
            if m.shape != expected:
                raise MalformedComplex(
                    f"boundary at degree {d} has shape {m.shape}, expected {expected}"
                )
        # d o d = 0, checked column by column through the sparse entries
        for d, m in sorted(self._boundaries.items()):
            lower = self._boundaries.get(d - 1)
            if lower is None or lower.rows == 0:
                continue
            cols_lower = {}
            for i, j, v in lower.nonzero_items():
                cols_lower.setdefault(j, []).append((i, v))
            for col in range(m.cols):
                acc: dict[int, int] = {}
                for mid in range(m.rows):
                    a = m.entry(mid, col)
                    if a:
                        for i, v in cols_lower.get(mid, ()):
                            acc[i] = acc.get(i, 0) + a * v
                if any(acc.values()):
                    raise MalformedComplex(
                        f"composite boundary nonzero at degree {d}, generator {col}"
                    )

    # -- shape queries ----------------------------------------------------

    def rank(self, degree: int) -> int:
        return self._ranks.get(degree, 0)

    def degrees(self) -> list[int]:
        return sorted(d for d in self._ranks)

    def min_degree(self) -> int:
        return min(self._ranks) if self._ranks else 0

    def max_degree(self) -> int:
        return max(self._ranks) if self._ranks else 0

    def boundary(self, degree: int) -> IntegerMatrix:
        m = self._boundaries.get(degree)
        if m is None:
            m = IntegerMatrix.zeros(self.rank(degree - 1), self.rank(degree))
        return m

    def total_rank(self) -> int:
        return sum(self._ranks.values())

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * r for d, r in self._ranks.items())

    def _diagonal(self, degree: int) -> tuple[int, ...]:
        if degree not in self._diagonals:
            m = self.boundary(degree)
            self._diagonals[degree] = smith_diagonal(m) if not m.is_zero() else ()
        return self._diagonals[degree]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, IntegerChainComplex)
            and self._ranks == other._ranks
            and all(self.boundary(d) == other.boundary(d)
                    for d in set(self._boundaries) | set(other._boundaries))
        )

    def __repr__(self) -> str:
        ranks = ", ".join(f"{d}:{self.rank(d)}" for d in self.degrees())
        return f"IntegerChainComplex({{{ranks}}})"


def homology(c: IntegerChainComplex, coefficients: str = INTEGERS) -> HomologyProfile:
    """Homology of the complex, degree by degree.

    free_rank(d) = rank(d) - rank(d_d) - rank(d_{d+1}); over Z the torsion in
    degree d is read off the Smith diagonal of d_{d+1}.
    """
    _check_coefficients(coefficients)
    data = {}
    for d in c.degrees():
        r_in = len(c._diagonal(d + 1))
        r_out = len(c._diagonal(d))
        free = c.rank(d) - r_out - r_in
        torsion: tuple[int, ...] = ()
        if coefficients == INTEGERS:
            torsion = tuple(t for t in c._diagonal(d + 1) if t > 1)
        data[d] = (free, torsion)
    return HomologyProfile(data)


def cohomology(c: IntegerChainComplex, coefficients: str = INTEGERS) -> HomologyProfile:
    """Cohomology, computed from the transposed boundaries.

    The coboundary out of degree d is the transpose of d_{d+1}.  Universal
    coefficients then give free H^d = free H_d and torsion H^d = torsion
    H_{d-1}; this is checked as a property in the test suite, not assumed.
    """
    _check_coefficients(coefficients)
    diag: dict[int, tuple[int, ...]] = {}

    def codiagonal(d: int) -> tuple[int, ...]:
        # coboundary C^d -> C^{d+1} is boundary(d+1) transposed
        if d not in diag:
            m = c.boundary(d + 1).transpose()
            diag[d] = smith_diagonal(m) if not m.is_zero() else ()
        return diag[d]

    data = {}
    for d in c.degrees():
        r_out = len(codiagonal(d))
        r_in = len(codiagonal(d - 1))
        free = c.rank(d) - r_out - r_in
        torsion: tuple[int, ...] = ()
        if coefficients == INTEGERS:
            torsion = tuple(t for t in codiagonal(d - 1) if t > 1)
        data[d] = (free, torsion)
    return HomologyProfile(data)


def _check_coefficients(coefficients: str) -> None:
    if coefficients not in (INTEGERS, RATIONALS):
        raise ValueError(f"unknown coefficients {coefficients!r}")


def _closure_check(total: IntegerChainComplex, selected: dict[int, set[int]]) -> None:
    for d in sorted(selected):
        m = total.boundary(d)
        below = selected.get(d - 1, set())
        for g in sorted(selected[d]):
            if g >= total.rank(d):
                raise NotASubcomplex(d, g)
            for i in range(m.rows):
                if m.entry(i, g) and i not in below:
                    raise NotASubcomplex(d, g)


def _normalize_selection(
    c: IntegerChainComplex, sub_generators: Mapping[int, Iterable[int]]
) -> dict[int, set[int]]:
    return {int(d): set(int(i) for i in idx) for d, idx in sub_generators.items()}


def quotient_complex(
    total: IntegerChainComplex, sub_generators: Mapping[int, Iterable[int]]
) -> IntegerChainComplex:
    """The quotient of ``total`` by the subcomplex spanned by the selection.

    Its homology is the relative homology of the pair (total, sub).  The
    selection must be boundary-closed, otherwise NotASubcomplex is raised
    naming the violating generator.
    """
    selected = _normalize_selection(total, sub_generators)
    _closure_check(total, selected)
    kept = {
        d: [i for i in range(total.rank(d)) if i not in selected.get(d, set())]
        for d in total.degrees()
    }
    ranks = {d: len(kept[d]) for d in kept}
    boundaries = {}
    for d in total.degrees():
        m = total.boundary(d)
        if d - 1 in kept:
            boundaries[d] = m.submatrix(kept[d - 1], kept[d])
    return IntegerChainComplex(ranks, boundaries)


def subcomplex(
    total: IntegerChainComplex, sub_generators: Mapping[int, Iterable[int]]
) -> IntegerChainComplex:
    """The subcomplex spanned by a boundary-closed selection of generators."""
    selected = _normalize_selection(total, sub_generators)
    _closure_check(total, selected)
    kept = {d: sorted(selected.get(d, set())) for d in total.degrees()}
    ranks = {d: len(kept[d]) for d in kept}
    boundaries = {}
    for d in total.degrees():
        if d - 1 in kept:
            boundaries[d] = total.boundary(d).submatrix(kept[d - 1], kept[d])
    return IntegerChainComplex(ranks, boundaries)


def cochain_complex(c: IntegerChainComplex) -> IntegerChainComplex:
    """The cochain complex, regraded so cohomological degree p sits at -p.

    The differential out of chain degree -p is the transpose of d_{p+1}, so
    H_{-p} of the result is H^p of the input.
    """
    ranks = {-d: c.rank(d) for d in c.degrees()}
    boundaries = {}
    for d in c.degrees():
        up = c.boundary(d + 1)
        if up.rows or up.cols:
            # chain degree -d -> -d-1 carries C^d -> C^{d+1}
            boundaries[-d] = up.transpose()
    return IntegerChainComplex(ranks, boundaries, _trusted=True)


# ---------------------------------------------------------------------------
# rational homology bases and induced maps


def _solve_columns(
    columns: list[tuple[int, ...]], target: Sequence[Fraction | int], nrows: int
) -> list[Fraction] | None:
    """Solve sum_j x_j * columns[j] = target over Q; None if inconsistent.

    The columns are assumed linearly independent, so the solution is unique.
    """
    ncols = len(columns)
    aug = [
        [Fraction(columns[j][i]) for j in range(ncols)] + [Fraction(target[i])]
        for i in range(nrows)
    ]
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if aug[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c]:
                factor = aug[i][c]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    solution = [Fraction(0)] * ncols
    for row, c in enumerate(pivots):
        solution[c] = aug[row][ncols]
    # consistency: rows past the pivot rows must have zero right-hand side
    for i in range(r, nrows):
        if aug[i][ncols]:
            return None
    return solution


def _independent_prefix(columns: list[tuple[int, ...]], nrows: int) -> list[int]:
    """Indices of a leftmost maximal independent subset of the columns."""
    basis_rows: list[list[Fraction]] = []
    pivots: list[int] = []
    chosen = []
    for idx, col in enumerate(columns):
        vec = [Fraction(x) for x in col]
        for row, p in zip(basis_rows, pivots):
            if vec[p]:
                factor = vec[p] / row[p]
                vec = [a - factor * b for a, b in zip(vec, row)]
        pivot = next((i for i in range(nrows) if vec[i]), None)
        if pivot is not None:
            basis_rows.append(vec)
            pivots.append(pivot)
            chosen.append(idx)
    return chosen


class RationalHomologyBasis:
    """Deterministic homology bases over Q for one complex.

    Per degree: representatives are integer cycle vectors (from the kernel
    lattice of the boundary) extending a column basis of the boundaries from
    above.  ``coordinates`` expresses any cycle in this basis modulo
    boundaries.
    """

    def __init__(self, c: IntegerChainComplex):
        self.complex = c
        self._reps: dict[int, list[tuple[int, ...]]] = {}
        self._solver_columns: dict[int, list[tuple[int, ...]]] = {}
        self._boundary_count: dict[int, int] = {}
        for d in c.degrees():
            n = c.rank(d)
            if n == 0:
                self._reps[d] = []
                self._solver_columns[d] = []
                self._boundary_count[d] = 0
                continue
            down = c.boundary(d)
            if down.is_zero():
                kernel = [
                    tuple(1 if i == j else 0 for i in range(n)) for j in range(n)
                ]
            else:
                kernel = list(integer_kernel_basis(down))
            up = c.boundary(d + 1)
            boundary_cols = [up.column(j) for j in range(up.cols)] if up.cols else []
            all_cols = boundary_cols + kernel
            chosen = _independent_prefix(all_cols, n)
            b_basis = [all_cols[i] for i in chosen if i < len(boundary_cols)]
            reps = [all_cols[i] for i in chosen if i >= len(boundary_cols)]
            self._reps[d] = reps
            self._solver_columns[d] = b_basis + reps
            self._boundary_count[d] = len(b_basis)

    def betti(self, degree: int) -> int:
        return len(self._reps.get(degree, []))

    def representatives(self, degree: int) -> list[tuple[int, ...]]:
        return list(self._reps.get(degree, []))

    def profile(self) -> HomologyProfile:
        return HomologyProfile(
            {d: (len(reps), ()) for d, reps in self._reps.items()}
        )

    def coordinates(self, degree: int, vector: Sequence[int | Fraction]) -> list[Fraction]:
        """Coordinates of a cycle in the homology basis (mod boundaries)."""
        n = self.complex.rank(degree)
        cols = self._solver_columns.get(degree, [])
        if not cols:
            if any(Fraction(v) for v in vector):
                raise ValueError("nonzero vector in a degree with trivial chains")
            return []
        sol = _solve_columns(cols, list(vector), n)
        if sol is None:
            raise ValueError("vector is not a cycle modulo boundaries")
        return sol[self._boundary_count[degree]:]


def _is_chain_map(
    f: Mapping[int, IntegerMatrix],
    source: IntegerChainComplex,
    target: IntegerChainComplex,
) -> int | None:
    """First degree where f fails to commute with the boundaries, or None."""
    degrees = sorted(set(source.degrees()) | set(target.degrees()))
    maps = {}
    for d in degrees:
        m = f.get(d)
        if m is None:
            m = IntegerMatrix.zeros(target.rank(d), source.rank(d))
        if m.shape != (target.rank(d), source.rank(d)):
            raise ValueError(
                f"map at degree {d} has shape {m.shape}, expected "
                f"{(target.rank(d), source.rank(d))}"
            )
        maps[d] = m
    for d in degrees:
        lower = maps.get(d - 1, IntegerMatrix.zeros(target.rank(d - 1), source.rank(d - 1)))
        lhs = lower.mul(source.boundary(d))
        rhs = target.boundary(d).mul(maps[d])
        if lhs != rhs:
            return d
    return None


def induced_map_on_homology(
    f: Mapping[int, IntegerMatrix],
    source: IntegerChainComplex,
    target: IntegerChainComplex,
    coefficients: str = RATIONALS,
    source_basis: RationalHomologyBasis | None = None,
    target_basis: RationalHomologyBasis | None = None,
) -> dict[int, list[list[Fraction]]]:
    """Matrices of the induced map on rational homology.

    Expressed in the deterministic bases of RationalHomologyBasis; entry
    [d][i][j] is the i-th coordinate of the image of the j-th source
    representative in degree d.  Raises NotAChainMap if f does not commute
    with the boundaries.  Only rational coefficients are supported: integral
    induced maps would need presentation lifting, and every consumer here is
    a rank comparison.
    """
    if coefficients != RATIONALS:
        raise ValueError("induced maps are supported over rationals only")
    bad = _is_chain_map(f, source, target)
    if bad is not None:
        raise NotAChainMap(bad)
    sb = source_basis or RationalHomologyBasis(source)
    tb = target_basis or RationalHomologyBasis(target)
    out: dict[int, list[list[Fraction]]] = {}
    for d in sorted(set(source.degrees()) | set(target.degrees())):
        src_reps = sb.representatives(d)
        tdim = tb.betti(d)
        matrix = [[Fraction(0)] * len(src_reps) for _ in range(tdim)]
        fd = f.get(d)
        for j, rep in enumerate(src_reps):
            if fd is None:
                image = [0] * target.rank(d)
            else:
                image = [
                    sum(fd.entry(i, k) * rep[k] for k in range(len(rep)))
                    for i in range(fd.rows)
                ]
            coords = tb.coordinates(d, image)
            for i in range(tdim):
                matrix[i][j] = coords[i]
        out[d] = matrix
    return out
