"""GF(2^t) arithmetic and a systematic [N, N-4, 5] Reed-Solomon code.

Field elements are ints in ``[0, 2**t)``; addition is XOR.  Codeword
position ``i`` holds the coefficient of ``x**(N-1-i)``, so the message sits
in the first ``N-4`` positions and the parity in the last four.  The
generator polynomial has roots ``alpha**1 .. alpha**4``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Sequence

from .errors import DecodeFailure, ParameterError

# Primitive polynomials, bit i = coefficient of x**i.
PRIMITIVE_POLYS = {
    3: 0b1011,                 # x^3 + x + 1
    4: 0b10011,                # x^4 + x + 1
    5: 0b100101,               # x^5 + x^2 + 1
    6: 0b1000011,              # x^6 + x + 1
    7: 0b10000011,             # x^7 + x + 1
    8: 0b100011101,            # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,           # x^9 + x^4 + 1
    10: 0b10000001001,         # x^10 + x^3 + 1
    11: 0b100000000101,        # x^11 + x^2 + 1
    12: 0b1000001010011,       # x^12 + x^6 + x^4 + x + 1
    13: 0b10000000011011,      # x^13 + x^4 + x^3 + x + 1
    14: 0b100010001000011,     # x^14 + x^10 + x^6 + x + 1
    15: 0b1000000000000011,    # x^15 + x + 1
    16: 0b10001000000001011,   # x^16 + x^12 + x^3 + x + 1
}

NSYM = 4


def clmul(a: int, b: int) -> int:
    """Carry-less product of two bit-polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, p: int) -> int:
    dp = p.bit_length() - 1
    while a.bit_length() - 1 >= dp:
        a ^= p << (a.bit_length() - 1 - dp)
    return a


class GF:
    """The field GF(2**degree) with log/antilog tables."""

    def __init__(self, degree: int):
        if degree not in PRIMITIVE_POLYS:
            raise ParameterError(f"field degree must be in [3, 16], got {degree}")
        self.degree = degree
        self.poly = PRIMITIVE_POLYS[degree]
        self.size = 1 << degree
        self.order = self.size - 1
        exp = [0] * (2 * self.order)
        log = [0] * self.size
        x = 1
        for i in range(self.order):
            if i and x == 1:
                raise ParameterError(f"polynomial for degree {degree} is not primitive")
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & self.size:
                x ^= self.poly
        exp[self.order:] = exp[:self.order]
        self.exp, self.log = exp, log

    def __repr__(self) -> str:
        return f"GF(2^{self.degree})"

    def _check(self, a: int) -> None:
        if not 0 <= a < self.size:
            raise ParameterError(f"{a} is not an element of {self!r}")

    @staticmethod
    def add(a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero in GF(2^t)")
        if a == 0:
            return 0
        return self.exp[(self.log[a] - self.log[b]) % self.order]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.exp[(self.order - self.log[a]) % self.order]

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n < 0:
                raise ZeroDivisionError("zero has no inverse")
            return 1 if n == 0 else 0
        return self.exp[(self.log[a] * n) % self.order]

    def alpha(self, n: int) -> int:
        return self.exp[n % self.order]

    # Polynomials are lists of coefficients, lowest degree first.

    def poly_eval(self, p: Sequence[int], x: int) -> int:
        y = 0
        for c in reversed(p):
            y = self.mul(y, x) ^ c
        return y

    def poly_mul(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] ^= self.mul(ai, bj)
        return out


@lru_cache(maxsize=None)
def field(degree: int) -> GF:
    return GF(degree)


class ReedSolomon:
    """Systematic RS code of length ``2**t - 1``, dimension ``N - 4``, distance 5."""

    def __init__(self, degree: int):
        self.gf = field(degree)
        self.n = self.gf.order
        self.k = self.n - NSYM
        g = [1]
        for j in range(1, NSYM + 1):
            g = self.gf.poly_mul(g, [self.gf.alpha(j), 1])
        self.generator = g  # lowest degree first, monic

    def __repr__(self) -> str:
        return f"ReedSolomon(N={self.n}, k={self.k})"

    def encode(self, message: Sequence[int]) -> list[int]:
        if len(message) != self.k:
            raise ParameterError(f"message must have {self.k} symbols, got {len(message)}")
        for a in message:
            self.gf._check(a)
        # long division of message(x) * x^4 by the generator, highest degree first
        rem = list(message) + [0] * NSYM
        gen = self.generator[::-1]
        for i in range(self.k):
            coef = rem[i]
            if coef:
                for j in range(1, NSYM + 1):
                    rem[i + j] ^= self.gf.mul(gen[j], coef)
        return list(message) + rem[self.k:]

    def syndromes(self, word: Sequence[int]) -> list[int]:
        """``S_j = c(alpha**j)`` for ``j = 1..4``."""
        gf = self.gf
        out = []
        for j in range(1, NSYM + 1):
            x = gf.alpha(j)
            y = 0
            for c in word:
                y = gf.mul(y, x) ^ c
            out.append(y)
        return out

    def is_codeword(self, word: Sequence[int]) -> bool:
        return len(word) == self.n and not any(self.syndromes(word))

    def _locator(self, pos: int) -> int:
        return self.gf.alpha(self.n - 1 - pos)

    def correct(self, received: Sequence[int], erasures: Iterable[int] = ()) -> list[int]:
        """Correct errors and erasures; returns the full codeword.

        Succeeds whenever ``2 * errors + erasures <= 4``.  Raises
        :class:`DecodeFailure` when the pattern is detectably beyond that.
        """
        gf = self.gf
        word = list(received)
        if len(word) != self.n:
            raise ParameterError(f"received word must have {self.n} symbols")
        erasures = sorted(set(erasures))
        if len(erasures) > NSYM:
            raise ParameterError("at most 4 erasures are supported")
        if any(not 0 <= e < self.n for e in erasures):
            raise ParameterError("erasure position out of range")
        for a in word:
            gf._check(a)
        synd = self.syndromes(word)
        if not any(synd):
            return word
        f = len(erasures)

        # Berlekamp-Massey seeded with the erasure locator.
        gamma = [1]
        for e in erasures:
            gamma = gf.poly_mul(gamma, [1, self._locator(e)])
        lam, prev, L = gamma[:], gamma[:], f
        for r in range(f + 1, NSYM + 1):
            delta = 0
            for j, c in enumerate(lam):
                if j < r:
                    delta ^= gf.mul(c, synd[r - 1 - j])
            shifted = [0] + prev
            if delta == 0:
                prev = shifted
                continue
            new = lam + [0] * (len(shifted) - len(lam))
            for j, c in enumerate(shifted):
                new[j] ^= gf.mul(delta, c)
            if 2 * L <= r + f - 1:
                prev = [gf.div(c, delta) for c in lam]
                L = r + f - L
            else:
                prev = shifted
            lam = new
        while len(lam) > 1 and lam[-1] == 0:
            lam.pop()
        if len(lam) - 1 != L or 2 * (L - f) + f > NSYM:
            raise DecodeFailure("error pattern beyond correction capability")

        positions = [
            i for i in range(self.n) if gf.poly_eval(lam, gf.inv(self._locator(i))) == 0
        ]
        if len(positions) != L:
            raise DecodeFailure("error locator does not split over the code positions")

        # Forney: e = omega(X^-1) / lambda'(X^-1)
        s_poly = synd
        omega = gf.poly_mul(s_poly, lam)[:NSYM]
        dlam = [lam[j] if j % 2 == 1 else 0 for j in range(1, len(lam))]
        for i in positions:
            xinv = gf.inv(self._locator(i))
            den = gf.poly_eval(dlam, xinv)
            if den == 0:
                raise DecodeFailure("degenerate error locator")
            word[i] ^= gf.div(gf.poly_eval(omega, xinv), den)
        if any(self.syndromes(word)):
            raise DecodeFailure("correction did not yield a codeword")
        return word

    def decode(self, received: Sequence[int], erasures: Iterable[int] = ()) -> list[int]:
        """Message symbols of the corrected codeword."""
        return self.correct(received, erasures)[:self.k]


def rs_encode(message: Sequence[int], degree: int) -> list[int]:
    return ReedSolomon(degree).encode(message)


def rs_decode(received: Sequence[int], degree: int, erasures: Iterable[int] = ()) -> list[int]:
    return ReedSolomon(degree).decode(received, erasures)
