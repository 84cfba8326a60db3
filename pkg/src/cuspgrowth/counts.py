"""Exact orders of finite classical groups over residue rings, with
independent brute-force oracles, and the derived congruence-tower data.

Formula paths are closed-form products; brute-force paths enumerate
matrices over table-driven finite fields with column-by-column pruning.
Both return a `GroupOrder` tagged with its method, and the two must
agree whenever the brute-force search space fits under the cap.

The hermitian form for the unitary families is fixed as the antidiagonal
(split) form, so that the strictly upper-triangular unitary matrices
form the Heisenberg-type unipotent subgroup; group orders do not depend
on this choice.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import InexactDivisionError, ResourceLimitError, ValidationError
from .gf import PrimePowerField, field

#: Refuse brute-force searches whose raw matrix space exceeds this.
DEFAULT_BRUTE_CAP = 1 << 28


class GroupFamily(str, enum.Enum):
    SL2_ZN = "SL2_ZN"
    SL = "SL"
    U = "U"
    SU = "SU"
    UNITRIANGULAR_U = "UNITRIANGULAR_U"


class Method(str, enum.Enum):
    FORMULA = "FORMULA"
    BRUTE_FORCE = "BRUTE_FORCE"


@dataclass(frozen=True)
class GroupOrder:
    """An exact group order with its provenance.

    For SL2_ZN the `q` field holds the modulus N (any integer >= 2);
    for the field families it holds the prime power q.
    """

    family: GroupFamily
    m: int
    q: int
    order: int
    method: Method

    def __post_init__(self):
        if self.order < 1:
            raise ValidationError("group orders are positive")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; fine at desk scale."""
    if n < 1:
        raise ValidationError(f"cannot factor {n}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and list(factorize(n)) == [n]


def prime_power_base(q: int) -> tuple[int, int]:
    """Return (p, e) with q = p^e, or raise if q is not a prime power."""
    if q < 2:
        raise ValidationError(f"{q} is not a prime power")
    fact = factorize(q)
    if len(fact) != 1:
        raise ValidationError(f"{q} is not a prime power")
    [(p, e)] = fact.items()
    return p, e


def primes_in_range(lo: int, hi: int) -> list[int]:
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]


def _exact_ratio(num: int, den: int, context: str) -> int:
    if num % den != 0:
        raise InexactDivisionError(
            f"{context}: expected an exact integer, got {Fraction(num, den)}",
            ratio=Fraction(num, den),
        )
    return num // den


def sl2_order(n: int) -> GroupOrder:
    """|SL_2(Z/N)| = N^3 * prod_(p | N) (1 - p^-2), exactly."""
    if n < 2:
        raise ValidationError(f"modulus must be >= 2, got {n}")
    num = n**3
    den = 1
    for p in factorize(n):
        num *= p * p - 1
        den *= p * p
    return GroupOrder(GroupFamily.SL2_ZN, 2, n, _exact_ratio(num, den, "sl2_order"),
                      Method.FORMULA)


def psl2_order(n: int) -> int:
    """|PSL_2(Z/N)|: the SL_2 order divided by |{+-1} mod N|."""
    center = 2 if n > 2 else 1
    return _exact_ratio(sl2_order(n).order, center, "psl2_order")


def sl_order(m: int, q: int) -> GroupOrder:
    """|SL_m(F_q)| = q^(m(m-1)/2) * prod_(i=2..m) (q^i - 1)."""
    if m < 2:
        raise ValidationError(f"matrix size must be >= 2, got {m}")
    prime_power_base(q)
    order = q ** (m * (m - 1) // 2)
    for i in range(2, m + 1):
        order *= q**i - 1
    return GroupOrder(GroupFamily.SL, m, q, order, Method.FORMULA)


def u_order(m: int, q: int) -> GroupOrder:
    """|U_m(F_q)| = q^(m(m-1)/2) * prod_(i=1..m) (q^i - (-1)^i)."""
    if m < 2:
        raise ValidationError(f"matrix size must be >= 2, got {m}")
    prime_power_base(q)
    order = q ** (m * (m - 1) // 2)
    for i in range(1, m + 1):
        order *= q**i - (-1) ** i
    return GroupOrder(GroupFamily.U, m, q, order, Method.FORMULA)


def su_order(m: int, q: int) -> GroupOrder:
    """|SU_m(F_q)| = |U_m(F_q)| / (q + 1)."""
    order = _exact_ratio(u_order(m, q).order, q + 1, "su_order")
    return GroupOrder(GroupFamily.SU, m, q, order, Method.FORMULA)


def unitriangular_u_order(m: int, q: int) -> GroupOrder:
    """Order q^(m(m-1)/2) of the upper unitriangular subgroup of U_m(F_q)."""
    if m < 2:
        raise ValidationError(f"matrix size must be >= 2, got {m}")
    prime_power_base(q)
    return GroupOrder(
        GroupFamily.UNITRIANGULAR_U, m, q, q ** (m * (m - 1) // 2), Method.FORMULA
    )


def order_formula(family: GroupFamily, m: int, q: int) -> GroupOrder:
    if family is GroupFamily.SL2_ZN:
        if m != 2:
            raise ValidationError("SL2_ZN is only defined for m = 2")
        return sl2_order(q)
    if family is GroupFamily.SL:
        return sl_order(m, q)
    if family is GroupFamily.U:
        return u_order(m, q)
    if family is GroupFamily.SU:
        return su_order(m, q)
    if family is GroupFamily.UNITRIANGULAR_U:
        return unitriangular_u_order(m, q)
    raise ValidationError(f"unknown family {family!r}")


# ---------------------------------------------------------------------------
# Brute-force oracles


def _det(f: PrimePowerField, cols: list[tuple[int, ...]]) -> int:
    """Determinant over the field by cofactor expansion; m is tiny."""
    m = len(cols)
    rows = [tuple(cols[j][i] for j in range(m)) for i in range(m)]

    def expand(rs: list[tuple[int, ...]]) -> int:
        k = len(rs)
        if k == 1:
            return rs[0][0]
        total = 0
        for j in range(k):
            c = rs[0][j]
            if c == 0:
                continue
            minor = [tuple(row[:j] + row[j + 1:]) for row in rs[1:]]
            term = f.mul(c, expand(minor))
            total = f.add(total, term) if j % 2 == 0 else f.sub(total, term)
        return total

    return expand(rows)


def _count_sl(f: PrimePowerField, m: int) -> int:
    """Count m x m matrices over the field with determinant 1, building up
    columns and pruning on linear dependence."""
    vectors = list(product(range(f.size), repeat=m))
    count = 0
    chosen: list[tuple[int, ...]] = []
    echelon: list[tuple[int, ...]] = []

    def reduce(vec: tuple[int, ...]) -> tuple[int, ...]:
        v = list(vec)
        for row in echelon:
            pivot = next(i for i, x in enumerate(row) if x != 0)
            if v[pivot] != 0:
                c = v[pivot]
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        return tuple(v)

    def normalize(vec: tuple[int, ...]) -> tuple[int, ...]:
        lead = next(x for x in vec if x != 0)
        inv = f.inv(lead)
        return tuple(f.mul(inv, x) for x in vec)

    def recurse() -> None:
        nonlocal count
        if len(chosen) == m:
            if _det(f, chosen) == 1:
                count += 1
            return
        for vec in vectors:
            reduced = reduce(vec)
            if all(x == 0 for x in reduced):
                continue
            chosen.append(vec)
            echelon.append(normalize(reduced))
            recurse()
            chosen.pop()
            echelon.pop()

    recurse()
    return count


def _count_unitary(
    f: PrimePowerField,
    m: int,
    q: int,
    det_one: bool,
    unitriangular: bool,
) -> int:
    """Count matrices preserving the antidiagonal hermitian form.

    Conjugation is the Frobenius x -> x^q on GF(q^2).  Columns are
    chosen one at a time; the partial-isometry constraints
    <c_i, c_j> = J_ij for all i <= j <= t prune the search early.
    """
    conj = [f.pow(a, q) for a in range(f.size)]

    def herm(u: Sequence[int], v: Sequence[int]) -> int:
        total = 0
        for k in range(m):
            total = f.add(total, f.mul(conj[u[k]], v[m - 1 - k]))
        return total

    def target(i: int, j: int) -> int:
        return 1 if i + j == m - 1 else 0

    if unitriangular:
        def candidates(t: int) -> list[tuple[int, ...]]:
            free = list(product(range(f.size), repeat=t))
            return [head + (1,) + (0,) * (m - t - 1) for head in free]
    else:
        all_vectors = list(product(range(f.size), repeat=m))

        def candidates(t: int) -> list[tuple[int, ...]]:
            return all_vectors

    count = 0
    chosen: list[tuple[int, ...]] = []

    def recurse(t: int) -> None:
        nonlocal count
        if t == m:
            if not det_one or _det(f, chosen) == 1:
                count += 1
            return
        for vec in candidates(t):
            ok = True
            for i in range(t):
                if herm(chosen[i], vec) != target(i, t):
                    ok = False
                    break
            if ok and herm(vec, vec) != target(t, t):
                ok = False
            if ok:
                chosen.append(vec)
                recurse(t + 1)
                chosen.pop()

    recurse(0)
    return count


def brute_force_order(
    family: GroupFamily, m: int, q: int, cap: int = DEFAULT_BRUTE_CAP
) -> GroupOrder:
    """Exact order by enumeration; the independent oracle for the formulas.

    Refuses when the raw matrix space, q^(m^2) over the ground field
    (q^2 in the unitary cases, the modulus N for SL2_ZN), exceeds `cap`.
    """
    if cap < 1:
        raise ValidationError("cap must be positive")
    family = GroupFamily(family)
    if family is GroupFamily.SL2_ZN:
        if m != 2:
            raise ValidationError("SL2_ZN is only defined for m = 2")
        if q < 2:
            raise ValidationError(f"modulus must be >= 2, got {q}")
        space = q**4
        if space > cap:
            raise ResourceLimitError(
                f"raw search space {space} exceeds the cap {cap}", space=space, cap=cap
            )
        n = q
        count = sum(
            1
            for a, b, c, d in product(range(n), repeat=4)
            if (a * d - b * c) % n == 1
        )
        return GroupOrder(family, 2, n, count, Method.BRUTE_FORCE)

    if m < 2:
        raise ValidationError(f"matrix size must be >= 2, got {m}")
    p, e = prime_power_base(q)
    if family is GroupFamily.SL:
        space = q ** (m * m)
        if space > cap:
            raise ResourceLimitError(
                f"raw search space {space} exceeds the cap {cap}", space=space, cap=cap
            )
        count = _count_sl(field(p, e), m)
        return GroupOrder(family, m, q, count, Method.BRUTE_FORCE)

    space = (q * q) ** (m * m)
    if space > cap:
        raise ResourceLimitError(
            f"raw search space {space} exceeds the cap {cap}", space=space, cap=cap
        )
    f2 = field(p, 2 * e)
    det_one = family is GroupFamily.SU
    unitriangular = family is GroupFamily.UNITRIANGULAR_U
    count = _count_unitary(f2, m, q, det_one, unitriangular)
    return GroupOrder(family, m, q, count, Method.BRUTE_FORCE)


# ---------------------------------------------------------------------------
# Congruence-tower growth data


def cusp_index_proxy(n: int, q: int) -> int:
    """Index of the Heisenberg-type parabolic image in SU(n+1, F_q).

    The cusp stabilizer image has order q^(2n - 1); the index is
    |SU(n+1, q)| / q^(2n-1).  For n = 2 this equals (q^2 - 1)(q^3 + 1).
    """
    if n not in (2, 3):
        raise ValidationError(f"only n = 2 and n = 3 are modeled, got {n}")
    if not is_prime(q):
        raise ValidationError(f"q must be prime, got {q}")
    total = su_order(n + 1, q).order
    return _exact_ratio(total, q ** (2 * n - 1), "cusp_index_proxy")


@dataclass(frozen=True)
class DTowerDatum:
    """Per-prime congruence-level data: volume, b1, and cusp proxies."""

    q: int
    vol_proxy: int
    b1_proxy: int
    cusp_proxy: int

    def __post_init__(self):
        if min(self.q, self.vol_proxy, self.b1_proxy, self.cusp_proxy) < 1:
            raise ValidationError("tower datum entries must all be positive")


def d_tower_series(n: int, g: int, primes: Sequence[int]) -> list[DTowerDatum]:
    """Congruence-tower proxies over a list of distinct primes.

    vol is |SU(n+1, F_q)| (the covering degree up to a constant), b1 is
    2 + (2g - 2) * |PSL_2(F_q)| (the retraction-target curve cover), and
    cusps is vol / q^(2n-1) (one modeled cusp; constants do not affect
    exponents).
    """
    if n not in (2, 3):
        raise ValidationError(f"only n = 2 and n = 3 are modeled, got {n}")
    if g < 2:
        raise ValidationError(f"retraction target has genus >= 2, got {g}")
    seen = set()
    out = []
    for q in primes:
        if q in seen:
            raise ValidationError(f"primes must be distinct, {q} repeats")
        seen.add(q)
        if not is_prime(q):
            raise ValidationError(f"{q} is not prime")
        vol = su_order(n + 1, q).order
        out.append(
            DTowerDatum(
                q=q,
                vol_proxy=vol,
                b1_proxy=2 + (2 * g - 2) * psl2_order(q),
                cusp_proxy=cusp_index_proxy(n, q),
            )
        )
    return out
