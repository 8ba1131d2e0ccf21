"""Pure-Python field backend: canonical residues modulo a validated prime.

Elements are immutable, live in [0, p), and never mix across moduli.  The
modulus is chosen at runtime; tiny test primes and the 255-bit secure prime
share one code path on Python integers.
"""

from __future__ import annotations

from ..errors import LengthMismatch, ModulusMismatch, ZeroInverse
from . import counting
from .primality import is_prime

WIDE_BYTES = 64


class Prime:
    """A validated odd prime modulus; the element factory for its field."""

    __slots__ = ("value", "bit_length", "byte_length", "_accept_bound", "zero", "one")

    def __init__(self, value: int):
        if not isinstance(value, int):
            raise TypeError("prime modulus must be an int")
        if value < 3 or value % 2 == 0:
            raise ValueError(f"modulus must be an odd prime >= 3, got {value}")
        if not is_prime(value):
            raise ValueError(f"modulus {value} is not prime")
        self.value = value
        self.bit_length = value.bit_length()
        self.byte_length = (self.bit_length + 7) // 8
        # Largest multiple of p representable in byte_length bytes; draws at or
        # above it are rejected so accepted draws are exactly uniform mod p.
        self._accept_bound = ((1 << (8 * self.byte_length)) // value) * value
        self.zero = _element(0, self)
        self.one = _element(1, self)

    def elt(self, value: int) -> "FieldElement":
        return _element(value % self.value, self)

    def sample(self, rng) -> "FieldElement":
        """Uniform element, by rejection sampling on fixed-width byte draws."""
        width = self.byte_length
        bound = self._accept_bound
        while True:
            draw = int.from_bytes(rng.take(width), "big")
            if draw < bound:
                return _element(draw % self.value, self)

    def sample_unit(self, rng) -> "FieldElement":
        """Uniform nonzero element."""
        while True:
            x = self.sample(rng)
            if x.residue:
                return x

    def reduce_wide(self, data: bytes) -> "FieldElement":
        """Reduce a 64-byte big-endian integer; the hash-to-field back end."""
        if len(data) != WIDE_BYTES:
            raise LengthMismatch(f"reduce_wide needs {WIDE_BYTES} bytes, got {len(data)}")
        return _element(int.from_bytes(data, "big") % self.value, self)

    def from_bytes(self, data: bytes) -> "FieldElement":
        """Decode one fixed-width canonical element."""
        if len(data) != self.byte_length:
            raise LengthMismatch(
                f"element of F_{self.value} is {self.byte_length} bytes, got {len(data)}"
            )
        value = int.from_bytes(data, "big")
        if value >= self.value:
            raise ValueError(f"non-canonical residue {value} for modulus {self.value}")
        return _element(value, self)

    def __eq__(self, other):
        if type(other) is not Prime:
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash(self.value)

    def __repr__(self):
        return f"Prime({self.value})"


class FieldElement:
    """An immutable residue in [0, p)."""

    __slots__ = ("residue", "prime")

    def __init__(self, residue: int, prime: Prime):
        self.residue = residue % prime.value
        self.prime = prime

    def __add__(self, other):
        if type(other) is not FieldElement:
            return NotImplemented
        p = self.prime
        if p is not other.prime and p.value != other.prime.value:
            raise ModulusMismatch(f"{p.value} vs {other.prime.value}")
        return _element((self.residue + other.residue) % p.value, p)

    def __sub__(self, other):
        if type(other) is not FieldElement:
            return NotImplemented
        p = self.prime
        if p is not other.prime and p.value != other.prime.value:
            raise ModulusMismatch(f"{p.value} vs {other.prime.value}")
        return _element((self.residue - other.residue) % p.value, p)

    def __mul__(self, other):
        if type(other) is not FieldElement:
            return NotImplemented
        p = self.prime
        if p is not other.prime and p.value != other.prime.value:
            raise ModulusMismatch(f"{p.value} vs {other.prime.value}")
        if counting.enabled:
            counting.bump_mul()
        return _element(self.residue * other.residue % p.value, p)

    def __truediv__(self, other):
        if type(other) is not FieldElement:
            return NotImplemented
        return self * other.inv()

    def __neg__(self):
        p = self.prime
        return _element(-self.residue % p.value, p)

    def inv(self) -> "FieldElement":
        """Multiplicative inverse (Fermat exponentiation)."""
        p = self.prime
        if self.residue == 0:
            raise ZeroInverse(f"0 has no inverse mod {p.value}")
        if counting.enabled:
            counting.bump_inv()
        return _element(pow(self.residue, p.value - 2, p.value), p)

    def __eq__(self, other):
        if type(other) is not FieldElement:
            return NotImplemented
        return self.residue == other.residue and self.prime.value == other.prime.value

    def __hash__(self):
        return hash((self.residue, self.prime.value))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def to_bytes(self) -> bytes:
        return self.residue.to_bytes(self.prime.byte_length, "big")

    def hex(self) -> str:
        return self.to_bytes().hex()

    def __repr__(self):
        return f"FieldElement({self.residue}, p={self.prime.value})"


def _element(residue: int, prime: Prime) -> FieldElement:
    # Internal fast path: residue already canonical.
    elt = FieldElement.__new__(FieldElement)
    elt.residue = residue
    elt.prime = prime
    return elt
