"""Arithmetic in prime fields F_p for odd primes below 2**31.

Field elements are plain Python ints holding the canonical residue in
``[0, p)``; the modulus lives on a :class:`PrimeField` context.
"""
from __future__ import annotations

from functools import lru_cache

from sympy import isprime

MAX_MODULUS = 2**31 - 1
DEFAULT_MODULUS = 101


class FieldError(ValueError):
    pass


@lru_cache(maxsize=None)
def _check_modulus(p: int) -> int:
    if not isinstance(p, int) or isinstance(p, bool):
        raise FieldError(f"modulus must be an int, got {p!r}")
    if p == 2:
        raise FieldError("p = 2 is not supported (odd primes only)")
    if p < 3 or p > MAX_MODULUS:
        raise FieldError(f"modulus {p} outside supported range [3, 2**31 - 1]")
    if not isprime(p):
        raise FieldError(f"modulus {p} is not prime")
    return p


class PrimeField:
    """The field F_p. Construction validates that ``p`` is an odd prime."""

    __slots__ = ("p",)

    def __init__(self, p: int = DEFAULT_MODULUS):
        self.p = _check_modulus(p)

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    def normalize(self, x: int) -> int:
        return x % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("division by zero")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p

    def is_element(self, x: object) -> bool:
        return isinstance(x, int) and 0 <= x < self.p


def normalize(x: int, p: int) -> int:
    """Canonical representative of ``x`` modulo the prime ``p``."""
    return PrimeField(p).normalize(x)


def inv(a: int, p: int) -> int:
    return PrimeField(p).inv(a)
