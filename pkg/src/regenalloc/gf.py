"""Finite-field arithmetic for the coding simulator: GF(256) and GF(2)."""
from __future__ import annotations


class GF256:
    """Byte field via log/antilog tables, primitive polynomial x^8+x^4+x^3+x^2+1."""

    order = 256
    _PRIMITIVE = 0x11D

    def __init__(self) -> None:
        self.exp_table = [0] * 510
        self.log_table = [0] * 256
        x = 1
        for i in range(255):
            self.exp_table[i] = x
            self.log_table[x] = i
            x <<= 1
            if x & 0x100:
                x ^= self._PRIMITIVE
        for i in range(255, 510):
            self.exp_table[i] = self.exp_table[i - 255]

    def add(self, a: int, b: int) -> int:
        return a ^ b

    sub = add

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp_table[self.log_table[a] + self.log_table[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self.exp_table[255 - self.log_table[a]]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))


class GF2:
    """The two-element field; addition is xor, multiplication is and."""

    order = 2

    def add(self, a: int, b: int) -> int:
        return a ^ b

    sub = add

    def mul(self, a: int, b: int) -> int:
        return a & b

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return 1

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))


GF256_FIELD = GF256()
GF2_FIELD = GF2()

FIELDS = {"gf256": GF256_FIELD, "gf2": GF2_FIELD}
