"""Abelian covering towers of a cusped surface: degrees, connectivity,
cusp multiplicities, and first-betti-number bounds.

The model: the base has fundamental group abelianizing onto Z^k; each
boundary (cusp) curve contributes a sublattice of Z^k, and a finite
abelian cover is an `AbelianHom` from Z^k onto a deck group.  For an
abelian deck group the number of cusps over a boundary curve equals the
index of the image of its sublattice, so all counting happens in exact
integer arithmetic.  A fibration over a curve with finitely generated
fiber group caps b1 of every cover whose homomorphism kills the
fibration's kernel sublattice.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Optional, Sequence

from .errors import ValidationError
from .lattice import (
    AbelianHom,
    IntMatrix,
    image_index,
    is_surjective,
    kernel_contains,
    smith_normal_form,
)


@dataclass(frozen=True)
class CuspData:
    """A boundary curve: its name and the sublattice of Z^k generated by
    the images of its fundamental group (columns = generators)."""

    name: str
    sublattice: IntMatrix

    def __post_init__(self):
        rank = smith_normal_form(self.sublattice).rank
        if rank != self.sublattice.cols:
            raise ValidationError(
                f"cusp {self.name!r}: sublattice generators are linearly dependent"
            )


@dataclass(frozen=True)
class FibrationData:
    """A fibration of the base over a curve group of free rank `target_rank`,
    with fiber a genus `fiber_genus` surface with `fiber_punctures` punctures.

    `kernel_sublattice` generates the part of Z^k killed by the induced
    map; covers whose homomorphism also kills it inherit the fibration.
    """

    name: str
    kernel_sublattice: IntMatrix
    target_rank: int
    fiber_genus: int
    fiber_punctures: int

    def __post_init__(self):
        if self.target_rank < 1:
            raise ValidationError(f"fibration {self.name!r}: target rank must be >= 1")
        if self.fiber_genus < 0 or self.fiber_punctures < 0:
            raise ValidationError(
                f"fibration {self.name!r}: genus and puncture count must be >= 0"
            )
        if 2 * self.fiber_genus + self.fiber_punctures - 1 < 1:
            raise ValidationError(
                f"fibration {self.name!r}: fiber must be hyperbolic or parabolic "
                "(2g + b - 1 >= 1)"
            )


@dataclass(frozen=True)
class BaseSpace:
    """The covering-space bookkeeping of a cusped base: ambient rank k,
    cusp sublattices, and available fibrations."""

    ambient_rank: int
    cusps: tuple[CuspData, ...]
    fibrations: tuple[FibrationData, ...] = ()

    def __post_init__(self):
        names = [c.name for c in self.cusps] + [f.name for f in self.fibrations]
        if len(set(names)) != len(names):
            raise ValidationError("cusp and fibration names must be distinct")
        for c in self.cusps:
            if c.sublattice.rows != self.ambient_rank:
                raise ValidationError(
                    f"cusp {c.name!r} sublattice has {c.sublattice.rows} rows, "
                    f"expected {self.ambient_rank}"
                )
        for f in self.fibrations:
            if f.kernel_sublattice.rows != self.ambient_rank:
                raise ValidationError(
                    f"fibration {f.name!r} kernel has {f.kernel_sublattice.rows} rows, "
                    f"expected {self.ambient_rank}"
                )


def _hirzebruch() -> BaseSpace:
    # Blown-up abelian surface minus four elliptic curves; H_1 = Z^4 with
    # generators v1, v2 (first factor) and v3, v4 (second factor).
    e = IntMatrix.identity(4).columns()
    col = IntMatrix.from_columns
    return BaseSpace(
        ambient_rank=4,
        cusps=(
            CuspData("C0", col([e[0], e[1]])),
            CuspData("Cinf", col([e[2], e[3]])),
            CuspData("C1", col([(1, 0, 1, 0), (0, 1, 0, 1)])),
            CuspData("Czeta", col([(1, 0, 0, 1), (0, 1, -1, 1)])),
        ),
        fibrations=(
            # Projection to the first elliptic-curve factor: fiber is a
            # thrice-punctured elliptic curve.
            FibrationData(
                "proj1",
                col([e[2], e[3]]),
                target_rank=2,
                fiber_genus=1,
                fiber_punctures=3,
            ),
            # Coordinate-sum map (z, w) -> z + w: fiber is an elliptic
            # curve punctured at its four boundary intersections.
            FibrationData(
                "sum",
                col([(1, 0, -1, 0), (0, 1, 0, -1)]),
                target_rank=2,
                fiber_genus=1,
                fiber_punctures=4,
            ),
        ),
    )


#: Built-in base: Hirzebruch's cusped ball quotient (four boundary curves).
HIRZEBRUCH = _hirzebruch()


@dataclass(frozen=True)
class TowerSpec:
    """A base space together with one deck homomorphism per level."""

    base: BaseSpace
    levels: tuple[AbelianHom, ...]

    def __post_init__(self):
        for idx, rho in enumerate(self.levels):
            if rho.source_rank != self.base.ambient_rank:
                raise ValidationError(
                    f"level {idx}: homomorphism expects rank {rho.source_rank}, "
                    f"base has rank {self.base.ambient_rank}"
                )


@dataclass(frozen=True)
class LevelReport:
    """Per-level covering data.

    `total_cusps` is None for disconnected covers (the count is only
    defined per connected component there).  `b1_bound` is None when no
    declared fibration factors through the level's homomorphism; the
    method then gives no bound.
    """

    degree: int
    connected: bool
    cusp_multiplicities: dict[str, int]
    total_cusps: Optional[int]
    b1_bound: Optional[int]
    factoring_fibration: Optional[str]


@dataclass(frozen=True)
class TowerReport:
    levels: tuple[LevelReport, ...]


def b1_bound_for(fib: FibrationData) -> int:
    """Upper bound on b1 of any cover inheriting this fibration.

    The fiber group is generated by 2g + b - 1 elements when the fiber
    is punctured (b >= 1) and by 2g when it is closed; the bound adds
    the free rank of the fibration target.
    """
    g, b = fib.fiber_genus, fib.fiber_punctures
    fiber_generators = 2 * g + b - 1 if b >= 1 else 2 * g
    return fiber_generators + fib.target_rank


def analyze_level(base: BaseSpace, rho: AbelianHom) -> LevelReport:
    """Covering data of the finite abelian cover defined by `rho`.

    Degree is the deck-group order; the cover is connected iff `rho` is
    surjective.  Each cusp's multiplicity is the index of the image of
    its sublattice; the total is their sum when the cover is connected.
    The b1 bound comes from the first declared fibration whose kernel
    lies inside ker(rho), if any.
    """
    if rho.source_rank != base.ambient_rank:
        raise ValidationError(
            f"homomorphism expects rank {rho.source_rank}, base has rank "
            f"{base.ambient_rank}"
        )
    degree = rho.target.order
    connected = is_surjective(rho)
    multiplicities = {
        cusp.name: image_index(rho, cusp.sublattice) for cusp in base.cusps
    }
    total = sum(multiplicities.values()) if connected else None
    bound = None
    via = None
    for fib in base.fibrations:
        if kernel_contains(rho, fib.kernel_sublattice):
            bound = b1_bound_for(fib)
            via = fib.name
            break
    return LevelReport(
        degree=degree,
        connected=connected,
        cusp_multiplicities=multiplicities,
        total_cusps=total,
        b1_bound=bound,
        factoring_fibration=via,
    )


def analyze_tower(spec: TowerSpec) -> TowerReport:
    return TowerReport(tuple(analyze_level(spec.base, rho) for rho in spec.levels))


def _require_prime(p: int) -> None:
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValidationError(f"{p} is not prime")


def build_a_tower(p: int, depth: int) -> TowerSpec:
    """The tower sending v1 to a deck-group generator and v2, v3, v4 to 0,
    with deck groups Z/p^j for j = 1..depth.

    The images are compatible with the reduction maps Z/p^(j+1) -> Z/p^j,
    so consecutive levels form a tower of covers.
    """
    _require_prime(p)
    if depth < 1:
        raise ValidationError(f"depth must be >= 1, got {depth}")
    levels = tuple(
        AbelianHom.cyclic(p**j, (1, 0, 0, 0)) for j in range(1, depth + 1)
    )
    return TowerSpec(HIRZEBRUCH, levels)


def build_b_tower(p: int, depth: int) -> TowerSpec:
    """The tower sending every v_i to the same deck-group generator,
    with deck groups Z/p^j for j = 1..depth.

    Requires p odd: modulo 2 the diagonal boundary curve maps into the
    proper subgroup generated by 2, its cusp splits, and the constant
    cusp count 4 is lost.
    """
    _require_prime(p)
    if p == 2:
        raise ValidationError(
            "the B tower requires an odd prime: for p = 2 the diagonal "
            "boundary curve C1 no longer surjects onto the deck group and "
            "its cusp splits (total becomes 5, not 4)"
        )
    if depth < 1:
        raise ValidationError(f"depth must be >= 1, got {depth}")
    levels = tuple(
        AbelianHom.cyclic(p**j, (1, 1, 1, 1)) for j in range(1, depth + 1)
    )
    return TowerSpec(HIRZEBRUCH, levels)


@dataclass(frozen=True)
class CTowerLevel:
    """One level of a cyclic-cover tower over a compact genus-g surface."""

    level: int
    degree: int
    b1_surface: int
    total_cusps: int


def c_tower_report(
    genus: int, cusp_divisors: Sequence[int], depth: int
) -> list[CTowerLevel]:
    """Cyclic covers of a compact genus-g base curve, g >= 2, pulled back
    to a cusped total space.

    Each cusp is modeled by the divisor d >= 0 such that its parabolic
    image in Z is d*Z (d = 0 for trivial image).  Level j is the degree-j
    cyclic cover: b1 of the surface is 2 + j*(2g - 2) by multiplicativity
    of the Euler characteristic, and the cusp over divisor d splits into
    gcd(d, j) cusps, with gcd(0, j) = j.
    """
    if genus < 2:
        raise ValidationError(
            f"base curve must be a compact surface of genus >= 2, got genus {genus}"
        )
    if depth < 1:
        raise ValidationError(f"depth must be >= 1, got {depth}")
    divisors = [int(d) for d in cusp_divisors]
    if any(d < 0 for d in divisors):
        raise ValidationError("cusp divisors must be nonnegative")
    report = []
    for j in range(1, depth + 1):
        report.append(
            CTowerLevel(
                level=j,
                degree=j,
                b1_surface=2 + j * (2 * genus - 2),
                total_cusps=sum(gcd(d, j) for d in divisors),
            )
        )
    return report
