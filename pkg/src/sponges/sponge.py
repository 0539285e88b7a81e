"""The SpongeComplex type: a graded face poset with signed incidence data.

A sponge of ambient parameter n (n >= 2) has faces of dimensions 0..n-2 and
an integer incidence number on every cover pair.  Three combinatorial axioms
are validated: every rank-2 interval is a diamond (exactly two intermediate
faces), every diamond satisfies the sign relation
[F:G1][G1:F'] + [F:G2][G2:F'] = 0, and every face has a vertex below it.

Cellular (co)homology is read straight off the incidence numbers.  Local
cohomology at a face F is the cohomology of the cellular complex relative to
the subcomplex of faces not above F; for compact face-acyclic sponges this
agrees with the order-complex pair computation (`local_cohomology_via_order_
complex`), which the test suite uses as an independent cross-check.  The two
computations genuinely differ on the non-compact local models, whose faces
are cones; such sponges carry the ``non_compact`` flag and keep only the
local-cohomology / poset / Cohen-Macaulay machinery enabled.

Face identifiers are opaque strings, and the canonical generator order is
(dimension, identifier) everywhere, so every matrix in this module is
reproducible byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .complexes import (
    HomologyProfile,
    IntegerChainComplex,
    cohomology,
    quotient_complex,
)
from .exactalg import IntegerMatrix
from .poset import (
    GradedPoset,
    UnknownElement,
    order_complex,
    reduced_simplicial_cohomology,
    reduced_simplicial_homology,
    subposet,
)


class InvalidSponge(ValueError):
    """The sponge fails structural validation; carries the report."""

    def __init__(self, report: "SpongeValidation"):
        self.report = report
        super().__init__(f"invalid sponge: {report.summary()}")


class NonCompactSponge(ValueError):
    """Operation disabled for non-compact sponges (cone faces)."""


class NotAcyclicSponge(ValueError):
    """The sponge fails the acyclicity conditions."""


class NotDiamond(ValueError):
    """Some rank-2 interval does not have exactly two intermediate faces."""

    def __init__(self, intervals):
        self.intervals = tuple(intervals)
        super().__init__(f"{len(self.intervals)} rank-2 intervals are not diamonds")


class SignUnsolvable(ValueError):
    """The diamond/balance sign system has no solution over +-1."""


class RealizationMismatch(ValueError):
    """Cellular and order-complex cohomology disagree."""

    def __init__(self, degree: int, cellular, simplicial):
        self.degree = degree
        self.cellular = cellular
        self.simplicial = simplicial
        super().__init__(
            f"cohomology mismatch in degree {degree}: "
            f"cellular {cellular} vs order complex {simplicial}"
        )


class SpongeComplex:
    """Faces of dimensions 0..n-2 with integer incidence numbers on covers."""

    __slots__ = ("n", "faces", "incidence", "non_compact", "name", "_validation")

    def __init__(
        self,
        n: int,
        faces: GradedPoset,
        incidence: dict[tuple[str, str], int],
        non_compact: bool = False,
        name: str = "",
    ):
        if n < 2:
            raise ValueError("ambient parameter n must be at least 2")
        top = faces.max_rank()
        if top > n - 2:
            raise ValueError(f"face of dimension {top} exceeds n-2 = {n - 2}")
        cover_set = set(faces.covers())
        provided = set(incidence)
        if provided != cover_set:
            extra = provided - cover_set
            missing = cover_set - provided
            raise ValueError(
                f"incidence keys must match covers exactly "
                f"(extra: {sorted(extra)[:3]}, missing: {sorted(missing)[:3]})"
            )
        if any(int(v) == 0 for v in incidence.values()):
            raise ValueError("incidence numbers must be nonzero")
        self.n = n
        self.faces = faces
        self.incidence = {k: int(v) for k, v in incidence.items()}
        self.non_compact = bool(non_compact)
        self.name = name
        self._validation: SpongeValidation | None = None

    @property
    def dimension(self) -> int:
        return self.n - 2

    def faces_of_dim(self, d: int) -> list[str]:
        return self.faces.elements_of_rank(d)

    def face_counts(self) -> tuple[int, ...]:
        return tuple(len(self.faces_of_dim(d)) for d in range(self.n - 1))

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"SpongeComplex(n={self.n}, f={self.face_counts()}{label})"


@dataclass(frozen=True)
class SpongeValidation:
    """Structured result of validate_sponge; never raised from there."""

    non_diamond_intervals: tuple = ()
    diamond_violations: tuple = ()
    vertex_free_faces: tuple = ()

    @property
    def is_valid(self) -> bool:
        return not (
            self.non_diamond_intervals
            or self.diamond_violations
            or self.vertex_free_faces
        )

    def summary(self) -> str:
        return (
            f"{len(self.non_diamond_intervals)} non-diamond intervals, "
            f"{len(self.diamond_violations)} diamond violations, "
            f"{len(self.vertex_free_faces)} vertex-free faces"
        )


def rank2_intervals(faces: GradedPoset):
    """Yield (upper, lower, middles) for every length-2 interval, sorted."""
    for upper in faces.elements():
        grand: dict[str, list[str]] = {}
        for mid in faces.lower_covers(upper):
            for low in faces.lower_covers(mid):
                grand.setdefault(low, []).append(mid)
        for low in sorted(grand, key=faces.sort_key):
            yield upper, low, sorted(grand[low], key=faces.sort_key)


def validate_sponge(z: SpongeComplex) -> SpongeValidation:
    """Check the three sponge axioms, collecting every violation."""
    non_diamond = []
    violations = []
    for upper, low, middles in rank2_intervals(z.faces):
        if len(middles) != 2:
            non_diamond.append((upper, low, tuple(middles)))
            continue
        g1, g2 = middles
        total = (
            z.incidence[(upper, g1)] * z.incidence[(g1, low)]
            + z.incidence[(upper, g2)] * z.incidence[(g2, low)]
        )
        if total != 0:
            violations.append((upper, low, total))
    vertexless = []
    for f in z.faces.elements():
        if not any(z.faces.rank(t) == 0 for t in z.faces.downset(f)):
            vertexless.append(f)
    report = SpongeValidation(
        non_diamond_intervals=tuple(non_diamond),
        diamond_violations=tuple(violations),
        vertex_free_faces=tuple(vertexless),
    )
    return report


def ensure_valid(z: SpongeComplex) -> None:
    if z._validation is None:
        z._validation = validate_sponge(z)
    if not z._validation.is_valid:
        raise InvalidSponge(z._validation)


def cellular_complex(z: SpongeComplex, augmented: bool = False) -> IntegerChainComplex:
    """The cellular chain complex: one generator per face, incidence boundary.

    With ``augmented`` a rank-one group in degree -1 receives every vertex
    with coefficient 1; this requires the edge incidences to be balanced
    (each 1-face's vertex incidences sum to zero), otherwise construction
    fails the boundary-squared check.
    """
    ensure_valid(z)
    ranks = {d: len(z.faces_of_dim(d)) for d in range(z.n - 1)}
    index = {
        d: {f: i for i, f in enumerate(z.faces_of_dim(d))} for d in range(z.n - 1)
    }
    boundaries: dict[int, IntegerMatrix] = {}
    for d in range(1, z.n - 1):
        rows, cols = ranks[d - 1], ranks[d]
        ent = [0] * (rows * cols)
        for f in z.faces_of_dim(d):
            j = index[d][f]
            for g in z.faces.lower_covers(f):
                ent[index[d - 1][g] * cols + j] = z.incidence[(f, g)]
        boundaries[d] = IntegerMatrix(rows, cols, ent)
    if augmented:
        ranks[-1] = 1
        boundaries[0] = IntegerMatrix(1, ranks[0], [1] * ranks[0])
    return IntegerChainComplex(ranks, boundaries)


@dataclass(frozen=True)
class AcyclicityReport:
    n: int
    faces_ok: bool
    lower_interval_failures: tuple
    skeleton_acyclic_up_to: int
    b_number: int
    torsion_found: tuple

    @property
    def is_acyclic(self) -> bool:
        return self.faces_ok and self.skeleton_acyclic_up_to >= self.n - 3


def _sphere_defect(profile_: HomologyProfile, dim: int):
    """None if the profile is exactly that of a homology dim-sphere."""
    expected = {dim: (1, ())}
    actual = {d: (profile_.free_rank(d), profile_.torsion(d)) for d in profile_.degrees()}
    if actual == expected:
        return None
    return actual


def check_acyclic(z: SpongeComplex) -> AcyclicityReport:
    """Face acyclicity via lower intervals, plus skeleton acyclicity.

    Condition (i): for every face F, |strictly_below(F)| must be a homology
    (dim F - 1)-sphere over Z (the empty poset counts as the (-1)-sphere, so
    vertices pass automatically).  Condition (ii): the reduced cellular
    cohomology must vanish in degrees up to n-3; the report also carries the
    rank of the top reduced cohomology (the b-number) and any torsion.
    """
    ensure_valid(z)
    if z.non_compact:
        raise NonCompactSponge(
            "face acyclicity is undefined for non-compact sponges (cone faces)"
        )
    failures = []
    for f in z.faces.elements():
        below = subposet(z.faces, "strictly_below", f)
        prof = reduced_simplicial_homology(order_complex(below))
        defect = _sphere_defect(prof, z.faces.rank(f) - 1)
        if defect is not None:
            failures.append((f, tuple(sorted(defect.items()))))
    reduced = cohomology(cellular_complex(z, augmented=True))
    up_to = -2
    for i in range(-1, z.n - 1):
        if reduced.free_rank(i) == 0 and not reduced.torsion(i):
            up_to = i
        else:
            break
    torsion = tuple(
        (d, t) for d in reduced.degrees() for t in reduced.torsion(d)
    )
    return AcyclicityReport(
        n=z.n,
        faces_ok=not failures,
        lower_interval_failures=tuple(failures),
        skeleton_acyclic_up_to=up_to,
        b_number=reduced.free_rank(z.n - 2),
        torsion_found=torsion,
    )


def _up_set_quotient(z: SpongeComplex, face: str) -> IntegerChainComplex:
    up = z.faces.upset(face)
    outside = {
        d: [
            i
            for i, f in enumerate(z.faces_of_dim(d))
            if f not in up
        ]
        for d in range(z.n - 1)
    }
    return quotient_complex(cellular_complex(z, augmented=False), outside)


def local_cohomology(
    z: SpongeComplex, face: str, coefficients: str = "integers"
) -> HomologyProfile:
    """Cohomology of the sponge relative to everything outside the star of F.

    Computed via quotient_complex + cohomology on the cellular complex: the
    faces not above F span a subcomplex, and the quotient is the relative
    cochain complex on the up-set of F.
    """
    ensure_valid(z)
    if face not in z.faces.ranks:
        raise UnknownElement(face)
    return cohomology(_up_set_quotient(z, face), coefficients)


def local_cohomology_via_order_complex(
    z: SpongeComplex, face: str, coefficients: str = "integers"
) -> HomologyProfile:
    """The same local cohomology through the order-complex pair.

    Relative cohomology of (|S|, |S minus the up-set of F|), used as an
    independent route for compact face-acyclic sponges; it disagrees with the
    cellular computation on non-compact models, whose faces are cones.
    """
    ensure_valid(z)
    if face not in z.faces.ranks:
        raise UnknownElement(face)
    up = z.faces.upset(face)
    k = order_complex(z.faces)
    total = k.chain_complex(augmented=False)
    faces_by_dim = k.faces_by_dim()
    sub = {
        d: [
            i
            for i, simplex in enumerate(faces_by_dim.get(d, []))
            if not any(k.vertices[v] in up for v in simplex)
        ]
        for d in faces_by_dim
    }
    return cohomology(quotient_complex(total, sub), coefficients)


@dataclass(frozen=True)
class LocalModelReport:
    violations: tuple

    @property
    def passed(self) -> bool:
        return not self.violations


def check_local_model(z: SpongeComplex) -> LocalModelReport:
    """Cover-count regularity imposed by the local structure.

    Every face of dimension k < n-2 must be covered by exactly n-k faces of
    dimension k+1.  This is a necessary combinatorial consequence of the
    local model, not known to be sufficient; violations are listed.
    """
    ensure_valid(z)
    violations = []
    for f in z.faces.elements():
        k = z.faces.rank(f)
        if k >= z.n - 2:
            continue
        found = len(z.faces.upper_covers(f))
        if found != z.n - k:
            violations.append((f, k, found, z.n - k))
    return LocalModelReport(violations=tuple(violations))


def sign_solver(faces: GradedPoset) -> dict[tuple[str, str], int]:
    """Solve for +-1 incidence numbers satisfying every diamond relation.

    Writing each sign as (-1)^x, every diamond contributes the linear
    equation x(F,G1)+x(G1,F')+x(F,G2)+x(G2,F') = 1 over GF(2).  Edges with
    exactly two vertices additionally get the balance equation
    x(e,v)+x(e,w) = 1, so the assignment orients the complex (without it the
    augmented chain complex, and with it integral H_0, would be wrong; a
    one-vertex gauge flip of any balanced solution breaks balance while
    preserving all diamonds, so balance is not implied).  Free variables are
    set to zero, so the output is deterministic.

    Raises NotDiamond if some rank-2 interval lacks exactly two middles, and
    SignUnsolvable if the system is inconsistent.
    """
    covers = sorted(faces.covers(), key=lambda uv: (faces.sort_key(uv[0]), faces.sort_key(uv[1])))
    var = {cover: i for i, cover in enumerate(covers)}
    nvars = len(covers)
    bad = []
    equations: list[int] = []  # bitmask rows; bit nvars is the constant term
    for upper, low, middles in rank2_intervals(faces):
        if len(middles) != 2:
            bad.append((upper, low, tuple(middles)))
            continue
        g1, g2 = middles
        row = (
            (1 << var[(upper, g1)])
            | (1 << var[(g1, low)])
            | (1 << var[(upper, g2)])
            | (1 << var[(g2, low)])
            | (1 << nvars)
        )
        equations.append(row)
    if bad:
        raise NotDiamond(bad)
    for e in faces.elements():
        if faces.rank(e) == 1:
            below = faces.lower_covers(e)
            if len(below) == 2:
                v, w = below
                equations.append(
                    (1 << var[(e, v)]) | (1 << var[(e, w)]) | (1 << nvars)
                )
    # Gaussian elimination over GF(2) with deterministic pivot order
    pivots: dict[int, int] = {}
    for row in equations:
        for col in sorted(pivots):
            if row & (1 << col):
                row ^= pivots[col]
        lead = None
        for col in range(nvars):
            if row & (1 << col):
                lead = col
                break
        if lead is None:
            if row & (1 << nvars):
                raise SignUnsolvable(
                    "no +-1 incidence assignment satisfies the diamond relations"
                )
            continue
        for col, prow in pivots.items():
            if prow & (1 << lead):
                pivots[col] = prow ^ row
        pivots[lead] = row
    assignment = {}
    for cover, i in var.items():
        bit = (pivots[i] >> nvars) & 1 if i in pivots else 0
        assignment[cover] = -1 if bit else 1
    return assignment


@dataclass
class RealizationReport:
    degrees_checked: tuple
    cellular: dict = field(default_factory=dict)
    simplicial: dict = field(default_factory=dict)


def realization_cross_check(z: SpongeComplex) -> RealizationReport:
    """Reduced cellular cohomology must match that of the order complex.

    The order complex is the barycentric-subdivision model of the sponge, so
    for face-acyclic sponges both sides compute the same groups (free ranks
    and torsion, degree by degree).  Raises RealizationMismatch at the first
    disagreeing degree, NotAcyclicSponge if the face condition fails first.
    """
    ensure_valid(z)
    report = check_acyclic(z)
    if not report.faces_ok:
        raise NotAcyclicSponge(
            f"faces fail the lower-interval sphere condition: "
            f"{[f for f, _ in report.lower_interval_failures]}"
        )
    cellular = cohomology(cellular_complex(z, augmented=True))
    simplicial = reduced_simplicial_cohomology(order_complex(z.faces))
    degrees = sorted(set(cellular.degrees()) | set(simplicial.degrees()) | set(range(z.n - 1)))
    for d in degrees:
        left = (cellular.free_rank(d), cellular.torsion(d))
        right = (simplicial.free_rank(d), simplicial.torsion(d))
        if left != right:
            raise RealizationMismatch(d, left, right)
    return RealizationReport(
        degrees_checked=tuple(degrees),
        cellular={d: (cellular.free_rank(d), cellular.torsion(d)) for d in degrees},
        simplicial={d: (simplicial.free_rank(d), simplicial.torsion(d)) for d in degrees},
    )
