"""Exact rational arithmetic for weight tuples.

A weight tuple is an ordered list of rationals mu = (mu_1, ..., mu_k),
each strictly between 0 and 1 and summing to exactly 2, with k >= 4.
Such a tuple of length n + 3 parametrises an n-dimensional moduli
construction; the integrality test here asks, for every index pair with
mu_i + mu_j < 1, whether (1 - mu_i - mu_j)^-1 is an integer, with a
half-integral relaxation allowed at pairs of equal weights.

All arithmetic in this module is exact (`fractions.Fraction`); there is
no floating point here.  Every function is pure and safe to call
concurrently.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterator, Optional, Sequence

from .errors import ResourceLimitError, ValidationError

#: Refuse `enumerate_tuples` searches whose raw candidate count exceeds this.
DEFAULT_ENUMERATION_CAP = 5_000_000


def parse_fraction(text: str) -> Fraction:
    """Parse an exact rational from a 'p/q' (or integer) string."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"cannot parse exact rational from {text!r}") from exc


@dataclass(frozen=True)
class WeightTuple:
    """An ordered tuple of exact rational weights.

    Invariants, enforced at construction:

    * length at least 4,
    * every weight strictly between 0 and 1,
    * the weights sum to exactly 2.
    """

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        ws = tuple(Fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", ws)
        if len(ws) < 4:
            raise ValidationError(
                f"weight tuple must have length >= 4, got length {len(ws)}"
            )
        for idx, w in enumerate(ws):
            if not (0 < w < 1):
                raise ValidationError(
                    f"weight {w} at index {idx} is not strictly between 0 and 1"
                )
        total = sum(ws)
        if total != 2:
            raise ValidationError(f"weights must sum to exactly 2, got {total}")

    @classmethod
    def parse(cls, text: str) -> "WeightTuple":
        """Build a tuple from a comma-separated list like '2/6,2/6,3/6,4/6,1/6'."""
        parts = [p for p in text.split(",") if p.strip()]
        return cls(tuple(parse_fraction(p) for p in parts))

    @property
    def ambient_dimension(self) -> int:
        """n for a tuple of length n + 3."""
        return len(self.weights) - 3

    def sorted(self) -> "WeightTuple":
        """Canonical form: weights in ascending order."""
        return WeightTuple(tuple(sorted(self.weights)))

    def as_strings(self) -> list[str]:
        return [str(w) for w in self.weights]

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.weights)

    def __getitem__(self, i: int) -> Fraction:
        return self.weights[i]


class IntVerdict(str, enum.Enum):
    INT = "INT"
    HALF_INT = "HALF_INT"
    FAIL = "FAIL"


@dataclass(frozen=True)
class PairWitness:
    """An index pair {i, j} together with the offending value (1 - mu_i - mu_j)^-1."""

    i: int
    j: int
    value: Fraction


@dataclass(frozen=True)
class IntStatus:
    """Result of the integrality test on a weight tuple.

    `half_witnesses` lists the pairs that needed the half-integral
    relaxation; `fail_witnesses` lists the pairs that admit no such
    excuse.  INT means both lists are empty.
    """

    verdict: IntVerdict
    half_witnesses: tuple[PairWitness, ...] = ()
    fail_witnesses: tuple[PairWitness, ...] = ()

    def __post_init__(self):
        if self.verdict is IntVerdict.INT and self.half_witnesses:
            raise ValidationError("INT verdict cannot carry half-integral witnesses")
        if self.verdict is IntVerdict.FAIL and not self.fail_witnesses:
            raise ValidationError("FAIL verdict requires at least one witness")


def check_int(mu: WeightTuple) -> IntStatus:
    """Classify a weight tuple as INT, HALF_INT, or FAIL.

    For every unordered pair {i, j} with mu_i + mu_j < 1 the exact value
    v = (1 - mu_i - mu_j)^-1 is evaluated.  Pairs with mu_i + mu_j >= 1
    are skipped.  Non-integral v is tolerated only when mu_i = mu_j and
    v is a half-integer; such pairs are recorded as half-integral
    witnesses.  Any other non-integral value is a failure witness.
    """
    half: list[PairWitness] = []
    fail: list[PairWitness] = []
    for i, j in combinations(range(len(mu)), 2):
        pair_sum = mu[i] + mu[j]
        if pair_sum >= 1:
            continue
        value = 1 / (1 - pair_sum)
        if value.denominator == 1:
            continue
        if mu[i] == mu[j] and value.denominator == 2:
            half.append(PairWitness(i, j, value))
        else:
            fail.append(PairWitness(i, j, value))
    if fail:
        verdict = IntVerdict.FAIL
    elif half:
        verdict = IntVerdict.HALF_INT
    else:
        verdict = IntVerdict.INT
    return IntStatus(verdict, tuple(half), tuple(fail))


@dataclass(frozen=True)
class ContractionPartition:
    """A partition of the index set {0, ..., k-1} of a source tuple.

    Stored in canonical form: each block ascending, blocks ordered by
    their smallest element.  Indices are 0-based.
    """

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        canonical = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        object.__setattr__(self, "blocks", canonical)
        seen: set[int] = set()
        for block in canonical:
            if not block:
                raise ValidationError("partition blocks must be nonempty")
            for idx in block:
                if idx in seen:
                    raise ValidationError(f"index {idx} appears in two blocks")
                seen.add(idx)

    def indices(self) -> set[int]:
        return {i for block in self.blocks for i in block}

    def block_sums(self, mu: WeightTuple) -> tuple[Fraction, ...]:
        return tuple(sum(mu[i] for i in block) for block in self.blocks)

    @property
    def is_identity(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    @classmethod
    def identity(cls, k: int) -> "ContractionPartition":
        return cls(tuple((i,) for i in range(k)))

    def validate_for(self, mu: WeightTuple) -> None:
        """Check this partition is admissible for `mu`.

        Blocks must cover the index set of `mu` exactly, and every block
        of size >= 2 must have weight sum strictly below 1.
        """
        if self.indices() != set(range(len(mu))):
            raise ValidationError(
                f"partition covers indices {sorted(self.indices())}, "
                f"expected 0..{len(mu) - 1}"
            )
        for block in self.blocks:
            if len(block) >= 2:
                total = sum(mu[i] for i in block)
                if total >= 1:
                    raise ValidationError(
                        f"block {block} has weight sum {total}; merged blocks "
                        "must sum strictly below 1"
                    )


def contract(mu: WeightTuple, partition: ContractionPartition) -> WeightTuple:
    """Contract `mu` along `partition`: block sums, sorted ascending.

    Each merged block of size >= 2 must sum strictly below 1, otherwise
    the contraction is inadmissible and a `ValidationError` names the
    block.  The result is again a valid weight tuple (the total weight 2
    is preserved).
    """
    partition.validate_for(mu)
    return WeightTuple(tuple(sorted(partition.block_sums(mu))))


def _partitions_into(indices: Sequence[int], k: int, max_sum: Fraction,
                     mu: WeightTuple) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Yield all partitions of `indices` into exactly `k` nonempty blocks.

    Prunes any block whose running weight sum exceeds `max_sum` (block
    sums must land in the target multiset, all of whose entries are at
    most `max_sum`).
    """
    n = len(indices)
    blocks: list[list[int]] = []
    sums: list[Fraction] = []

    def recurse(pos: int) -> Iterator[tuple[tuple[int, ...], ...]]:
        if pos == n:
            if len(blocks) == k:
                yield tuple(tuple(b) for b in blocks)
            return
        idx = indices[pos]
        w = mu[idx]
        # Place into an existing block.
        for b, block in enumerate(blocks):
            if sums[b] + w <= max_sum:
                block.append(idx)
                sums[b] += w
                yield from recurse(pos + 1)
                block.pop()
                sums[b] -= w
        # Or open a new block, if room remains.
        if len(blocks) < k and w <= max_sum:
            blocks.append([idx])
            sums.append(w)
            yield from recurse(pos + 1)
            blocks.pop()
            sums.pop()

    yield from recurse(0)


def find_contraction(mu: WeightTuple, nu: WeightTuple) -> Optional[ContractionPartition]:
    """Search for a partition of `mu` contracting onto `nu`.

    Exhaustive backtracking over partitions of mu's indices into
    len(nu) blocks whose multiset of block sums equals the multiset of
    nu's weights, with every merged block summing strictly below 1.
    Returns the lexicographically least valid partition (in canonical
    block order), or None if no partition works.
    """
    if len(nu) > len(mu):
        raise ValidationError(
            f"target tuple is longer than the source ({len(nu)} > {len(mu)})"
        )
    target = sorted(nu.weights)
    max_sum = target[-1]
    best: Optional[tuple[tuple[int, ...], ...]] = None
    for raw in _partitions_into(range(len(mu)), len(nu), max_sum, mu):
        part = ContractionPartition(raw)
        if sorted(part.block_sums(mu)) != target:
            continue
        if any(len(b) >= 2 and sum(mu[i] for i in b) >= 1 for b in part.blocks):
            continue
        if best is None or part.blocks < best:
            best = part.blocks
    return None if best is None else ContractionPartition(best)


def enumeration_space(length: int, max_denominator: int) -> int:
    """Raw candidate count for `enumerate_tuples`: multisets of size
    `length` drawn from the max_denominator - 1 admissible numerators."""
    return comb(max_denominator - 1 + length - 1, length)


def enumerate_tuples(
    length: int,
    max_denominator: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> list[tuple[WeightTuple, IntStatus]]:
    """All sorted weight tuples with denominators dividing `max_denominator`
    whose verdict is INT or HALF_INT.

    Tuples are emitted in ascending lexicographic order of their
    numerator vectors, deduplicated up to reordering (only the sorted
    form is generated).  Refuses to run when the raw search space
    exceeds `cap`.
    """
    if length < 4:
        raise ValidationError(f"length must be >= 4, got {length}")
    if max_denominator < 2:
        raise ValidationError(f"max denominator must be >= 2, got {max_denominator}")
    space = enumeration_space(length, max_denominator)
    if space > cap:
        raise ResourceLimitError(
            f"raw search space {space} exceeds the configured cap {cap}",
            space=space,
            cap=cap,
        )

    d = max_denominator
    results: list[tuple[WeightTuple, IntStatus]] = []
    numerators: list[int] = []

    def recurse(start: int, remaining: int, slots: int) -> None:
        if slots == 0:
            if remaining == 0:
                mu = WeightTuple(tuple(Fraction(a, d) for a in numerators))
                status = check_int(mu)
                if status.verdict is not IntVerdict.FAIL:
                    results.append((mu, status))
            return
        # Nondecreasing continuation: feasibility bounds for the tail sum.
        if remaining < start * slots or remaining > (d - 1) * slots:
            return
        for a in range(start, d):
            if a * slots > remaining:
                break
            numerators.append(a)
            recurse(a, remaining - a, slots - 1)
            numerators.pop()

    recurse(1, 2 * d, length)
    return results
