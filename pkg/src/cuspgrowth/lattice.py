"""Exact integer-matrix algebra: Smith normal form, cokernels, finite
abelian groups, and indices of subgroup images.

Everything here is arbitrary-precision (plain Python ints) and pure;
values are immutable and safe to share between threads.  Degenerate
matrix shapes (zero rows or zero columns) are permitted so that empty
generating sets and homomorphisms to the trivial group have honest
representations.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Optional, Sequence

from .errors import ValidationError


@dataclass(frozen=True)
class IntMatrix:
    """An immutable integer matrix, row-major.

    `cols` is stored explicitly so zero-row matrices keep their width.
    """

    entries: tuple[tuple[int, ...], ...]
    cols: int

    def __post_init__(self):
        if self.cols < 0:
            raise ValidationError("column count cannot be negative")
        normalized = []
        for r, row in enumerate(self.entries):
            row = tuple(row)
            if len(row) != self.cols:
                raise ValidationError(
                    f"row {r} has {len(row)} entries, expected {self.cols}"
                )
            for v in row:
                if not isinstance(v, int) or isinstance(v, bool):
                    raise ValidationError(f"matrix entries must be ints, got {v!r}")
            normalized.append(row)
        object.__setattr__(self, "entries", tuple(normalized))

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[int]], cols: Optional[int] = None) -> "IntMatrix":
        rows = [tuple(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValidationError("cannot infer width of a matrix with no rows")
            cols = len(rows[0])
        return cls(tuple(rows), cols)

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable[int]], rows: Optional[int] = None) -> "IntMatrix":
        columns = [tuple(c) for c in columns]
        if rows is None:
            if not columns:
                raise ValidationError("cannot infer height of a matrix with no columns")
            rows = len(columns[0])
        for c in columns:
            if len(c) != rows:
                raise ValidationError("columns have inconsistent heights")
        return cls(tuple(tuple(c[i] for c in columns) for i in range(rows)), len(columns))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(tuple((0,) * cols for _ in range(rows)), cols)

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls(
            tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)),
            n,
        )

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(self.column(j) for j in range(self.cols)), self.rows)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValidationError(
                f"cannot stack {self.shape} beside {other.shape}: row counts differ"
            )
        return IntMatrix(
            tuple(a + b for a, b in zip(self.entries, other.entries)),
            self.cols + other.cols,
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValidationError(
                f"cannot multiply {self.shape} by {other.shape}"
            )
        ot = other.transpose()
        return IntMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in ot.entries)
                for row in self.entries
            ),
            other.cols,
        )

    def det(self) -> int:
        """Exact determinant via fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValidationError(f"determinant needs a square matrix, got {self.shape}")
        n = self.rows
        if n == 0:
            return 1
        m = [list(row) for row in self.entries]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if m[k][k] == 0:
                for i in range(k + 1, n):
                    if m[i][k] != 0:
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
                m[i][k] = 0
            prev = m[k][k]
        return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class SmithDecomposition:
    """U @ A @ V = D with U, V unimodular and D in Smith normal form."""

    u: IntMatrix
    d: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d[i, i] for i in range(min(self.d.rows, self.d.cols)))

    @property
    def rank(self) -> int:
        return sum(1 for x in self.diagonal if x != 0)


def smith_normal_form(a: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms.

    Pivot selection: the nonzero entry of least absolute value in the
    active block, ties broken by lowest (row, col); this makes the
    output deterministic for a fixed input.  Diagonal entries come out
    nonnegative, each dividing the next, zeros trailing.
    """
    nrows, ncols = a.rows, a.cols
    m = [list(row) for row in a.entries]
    u = [[int(i == j) for j in range(nrows)] for i in range(nrows)]
    v = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def row_swap(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_addmul(i, j, t):
        # row i += t * row j
        mi, mj = m[i], m[j]
        for c in range(ncols):
            mi[c] += t * mj[c]
        ui, uj = u[i], u[j]
        for c in range(nrows):
            ui[c] += t * uj[c]

    def col_addmul(i, j, t):
        # col i += t * col j
        for row in m:
            row[i] += t * row[j]
        for row in v:
            row[i] += t * row[j]

    def negate_row(i):
        m[i] = [-x for x in m[i]]
        u[i] = [-x for x in u[i]]

    def find_pivot(s):
        best = None
        for i in range(s, nrows):
            for j in range(s, ncols):
                x = m[i][j]
                if x != 0 and (best is None or abs(x) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        return best

    for s in range(min(nrows, ncols)):
        while True:
            pivot = find_pivot(s)
            if pivot is None:
                break
            pi, pj = pivot
            if pi != s:
                row_swap(s, pi)
            if pj != s:
                col_swap(s, pj)
            if m[s][s] < 0:
                negate_row(s)
            p = m[s][s]
            for i in range(s + 1, nrows):
                if m[i][s] != 0:
                    row_addmul(i, s, -(m[i][s] // p))
            for j in range(s + 1, ncols):
                if m[s][j] != 0:
                    col_addmul(j, s, -(m[s][j] // p))
            if any(m[i][s] for i in range(s + 1, nrows)):
                continue
            if any(m[s][j] for j in range(s + 1, ncols)):
                continue
            # Row and column are clear; enforce divisibility of the rest.
            offender = None
            for i in range(s + 1, nrows):
                for j in range(s + 1, ncols):
                    if m[i][j] % p != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_addmul(s, offender, 1)
        if find_pivot(s) is None:
            break

    return SmithDecomposition(
        u=IntMatrix.from_rows(u, nrows),
        d=IntMatrix.from_rows(m, ncols),
        v=IntMatrix.from_rows(v, ncols),
    )


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """A finite abelian group given by its invariant factors.

    Canonical form: factors equal to 1 are dropped, the remaining ones
    satisfy d_1 | d_2 | ... and are all >= 2; the trivial group is the
    empty list.  A zero factor would make the quotient infinite and is
    rejected here: deck groups must be finite.
    """

    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        kept = []
        for d in self.invariant_factors:
            if not isinstance(d, int) or isinstance(d, bool):
                raise ValidationError(f"invariant factors must be ints, got {d!r}")
            if d == 0:
                raise ValidationError(
                    "zero invariant factor means an infinite quotient; "
                    "deck groups must be finite"
                )
            if d < 0:
                raise ValidationError(f"invariant factors must be positive, got {d}")
            if d > 1:
                kept.append(d)
        for a, b in zip(kept, kept[1:]):
            if b % a != 0:
                raise ValidationError(
                    f"invariant factors must form a divisor chain; {a} does not "
                    f"divide {b} (use from_cyclic_factors to normalize)"
                )
        object.__setattr__(self, "invariant_factors", tuple(kept))

    @classmethod
    def trivial(cls) -> "FiniteAbelianGroup":
        return cls(())

    @classmethod
    def from_cyclic_factors(cls, moduli: Iterable[int]) -> "FiniteAbelianGroup":
        """Canonicalize an arbitrary direct sum of cyclic groups Z/m_i."""
        ms = [m for m in moduli]
        for m in ms:
            if m <= 0:
                raise ValidationError(f"cyclic factor moduli must be positive, got {m}")
        ms = [m for m in ms if m > 1]
        if not ms:
            return cls(())
        snf = smith_normal_form(IntMatrix.diagonal(ms))
        return cls(snf.diagonal)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def order(self) -> int:
        result = 1
        for d in self.invariant_factors:
            result *= d
        return result

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def elements(self) -> Iterator[tuple[int, ...]]:
        """Iterate all elements as coefficient tuples; meant for small groups."""
        return product(*(range(d) for d in self.invariant_factors))

    def __str__(self) -> str:
        if self.is_trivial:
            return "trivial"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class AbelianHom:
    """A homomorphism Z^k -> G for a finite abelian group G.

    `images` has one row per invariant factor of the target and one
    column per standard generator of Z^k; entry (i, j) is the i-th
    coordinate of the image of e_j, reduced modulo d_i at construction.
    """

    target: FiniteAbelianGroup
    images: IntMatrix

    def __post_init__(self):
        if self.images.rows != self.target.rank:
            raise ValidationError(
                f"images matrix has {self.images.rows} rows but the target "
                f"has {self.target.rank} invariant factors"
            )
        factors = self.target.invariant_factors
        reduced = IntMatrix(
            tuple(
                tuple(x % factors[i] for x in row)
                for i, row in enumerate(self.images.entries)
            ),
            self.images.cols,
        )
        object.__setattr__(self, "images", reduced)

    @property
    def source_rank(self) -> int:
        return self.images.cols

    @classmethod
    def cyclic(cls, modulus: int, images: Sequence[int]) -> "AbelianHom":
        """Convenience builder for a map Z^k -> Z/modulus."""
        return cls(FiniteAbelianGroup((modulus,)), IntMatrix.from_rows([list(images)]))


def cokernel(target: FiniteAbelianGroup, generators: IntMatrix) -> FiniteAbelianGroup:
    """Quotient of `target` by the subgroup its `generators` columns span.

    `generators` must have one row per invariant factor of `target`;
    each column is a subgroup generator written in the target's
    coordinates.  Computed as the cokernel of the block matrix
    [diag(d_i) | generators] via Smith normal form.
    """
    s = target.rank
    if generators.rows != s:
        raise ValidationError(
            f"generator matrix has {generators.rows} rows but the target "
            f"has {s} invariant factors"
        )
    if s == 0:
        return FiniteAbelianGroup.trivial()
    block = IntMatrix.diagonal(list(target.invariant_factors)).hstack(generators)
    snf = smith_normal_form(block)
    diag = snf.diagonal
    if any(d == 0 for d in diag):
        raise ValidationError("cokernel is infinite; this cannot happen for a finite target")
    return FiniteAbelianGroup(diag)


def image_index(rho: AbelianHom, sublattice: IntMatrix) -> int:
    """Index [G : rho(L)] of the image of a sublattice L of Z^k.

    `sublattice` has k rows; its columns generate L.  Equals |G| when
    the image is trivial, and 1 when the restriction is surjective.
    """
    if sublattice.rows != rho.source_rank:
        raise ValidationError(
            f"sublattice has {sublattice.rows} rows but the homomorphism "
            f"expects {rho.source_rank}"
        )
    image_gens = rho.images @ sublattice
    return cokernel(rho.target, image_gens).order


def is_surjective(rho: AbelianHom) -> bool:
    """True iff the homomorphism maps Z^k onto its target."""
    return image_index(rho, IntMatrix.identity(rho.source_rank)) == 1


def kernel_contains(rho: AbelianHom, sublattice: IntMatrix) -> bool:
    """True iff every generator column of the sublattice maps to 0."""
    if sublattice.rows != rho.source_rank:
        raise ValidationError(
            f"sublattice has {sublattice.rows} rows but the homomorphism "
            f"expects {rho.source_rank}"
        )
    mapped = rho.images @ sublattice
    factors = rho.target.invariant_factors
    return all(
        mapped[i, j] % factors[i] == 0
        for i in range(mapped.rows)
        for j in range(mapped.cols)
    )
