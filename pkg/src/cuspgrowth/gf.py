"""Small table-driven finite fields GF(p^n) for brute-force counting.

Elements are encoded as integers 0 .. p^n - 1, the base-p digits being
polynomial coefficients in little-endian order.  The modulus is the
least irreducible monic polynomial of degree n under that encoding, so
field construction is deterministic.  Only meant for tiny fields; the
multiplication table is materialized up front.
"""

from __future__ import annotations

from functools import lru_cache

from .errors import ValidationError

_MAX_TABLE_ELEMENTS = 1 << 10  # mul table is quadratic in field size


def _poly_from_code(code: int, p: int, degree: int) -> tuple[int, ...]:
    coeffs = []
    for _ in range(degree):
        coeffs.append(code % p)
        code //= p
    return tuple(coeffs)


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def _poly_mod(a: list[int], modulus: tuple[int, ...], p: int) -> tuple[int, ...]:
    # modulus is monic of degree n (length n + 1, leading coefficient 1)
    n = len(modulus) - 1
    a = list(a)
    for i in range(len(a) - 1, n - 1, -1):
        c = a[i] % p
        if c:
            for j in range(n + 1):
                a[i - n + j] = (a[i - n + j] - c * modulus[j]) % p
    out = [x % p for x in a[:n]]
    while len(out) < n:
        out.append(0)
    return tuple(out)


def _is_irreducible(coeffs: tuple[int, ...], p: int) -> bool:
    """Irreducibility of the monic polynomial x^n + sum coeffs[i] x^i
    over Z/p, by trial division by all monic polynomials of degree
    1 .. n // 2."""
    n = len(coeffs)
    modulus = coeffs + (1,)
    if coeffs[0] == 0:
        return False  # divisible by x
    for deg in range(1, n // 2 + 1):
        for code in range(p**deg):
            divisor = _poly_from_code(code, p, deg) + (1,)
            if _poly_divides(divisor, modulus, p):
                return False
    return True


def _poly_divides(divisor: tuple[int, ...], poly: tuple[int, ...], p: int) -> bool:
    rem = list(poly)
    d = len(divisor) - 1
    for i in range(len(rem) - 1, d - 1, -1):
        c = rem[i] % p
        if c:
            for j in range(d + 1):
                rem[i - d + j] = (rem[i - d + j] - c * divisor[j]) % p
    return all(x % p == 0 for x in rem[:d])


class PrimePowerField:
    """GF(p^n) with precomputed multiplication and inversion tables."""

    def __init__(self, p: int, n: int):
        if n < 1:
            raise ValidationError(f"extension degree must be >= 1, got {n}")
        size = p**n
        if size > _MAX_TABLE_ELEMENTS:
            raise ValidationError(
                f"field GF({p}^{n}) of size {size} is too large for table-driven "
                f"arithmetic (limit {_MAX_TABLE_ELEMENTS})"
            )
        self.p = p
        self.n = n
        self.size = size
        self.modulus_coeffs = self._least_irreducible(p, n)
        self._mul = [[0] * size for _ in range(size)]
        modulus = self.modulus_coeffs + (1,)
        polys = [_poly_from_code(code, p, n) for code in range(size)]
        for a in range(size):
            for b in range(a, size):
                prod = list(_poly_mul(polys[a], polys[b], p))
                red = _poly_mod(prod, modulus, p)
                code = 0
                for c in reversed(red):
                    code = code * p + c
                self._mul[a][b] = code
                self._mul[b][a] = code
        self._inv = [0] * size
        for a in range(1, size):
            row = self._mul[a]
            for b in range(1, size):
                if row[b] == 1:
                    self._inv[a] = b
                    break

    @staticmethod
    def _least_irreducible(p: int, n: int) -> tuple[int, ...]:
        if n == 1:
            return (0,)  # modulus x, i.e. the prime field itself
        for code in range(p**n):
            coeffs = _poly_from_code(code, p, n)
            if _is_irreducible(coeffs, p):
                return coeffs
        raise AssertionError("no irreducible polynomial found")  # unreachable

    # Elements are ints; 0 and 1 are the additive and multiplicative units.

    def add(self, a: int, b: int) -> int:
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.n):
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        out = 0
        mult = 1
        for _ in range(self.n):
            out += ((-a) % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in a finite field")
        return self._inv[a]

    def pow(self, a: int, e: int) -> int:
        result = 1
        base = a
        while e > 0:
            if e & 1:
                result = self._mul[result][base]
            base = self._mul[base][base]
            e >>= 1
        return result


@lru_cache(maxsize=None)
def field(p: int, n: int) -> PrimePowerField:
    """Cached field constructor; fields are immutable once built."""
    return PrimePowerField(p, n)
