"""Bit strings with big-endian fixed-width fields and instrumented cursors.

A :class:`BitString` is an immutable value (an int holding the bits plus a
length); :class:`BitWriter` builds one, :class:`BitCursor` reads one and keeps
count of how many payload bits it has inspected.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class EncodingError(ValueError):
    pass


class DecodingError(ValueError):
    pass


def ceil_log2(x: int) -> int:
    """Smallest w with 2**w >= x (0 for x <= 1)."""
    if x <= 1:
        return 0
    return (x - 1).bit_length()


@dataclass(frozen=True)
class BitString:
    value: int = 0
    length: int = 0

    def __post_init__(self):
        if self.length < 0 or self.value < 0 or self.value >> self.length:
            raise EncodingError("value does not fit in length")

    def __len__(self) -> int:
        return self.length

    def __str__(self) -> str:
        if self.length == 0:
            return ""
        return format(self.value, "0{}b".format(self.length))

    @classmethod
    def from_str(cls, bits: str) -> "BitString":
        bits = bits.replace(" ", "")
        return cls(int(bits, 2) if bits else 0, len(bits))

    def __add__(self, other: "BitString") -> "BitString":
        return BitString((self.value << other.length) | other.value, self.length + other.length)

    def bit(self, pos: int) -> int:
        return (self.value >> (self.length - 1 - pos)) & 1

    def slice(self, start: int, stop: int) -> "BitString":
        width = stop - start
        return BitString((self.value >> (self.length - stop)) & ((1 << width) - 1), width)

    def to_bytes(self) -> bytes:
        """Pack into bytes, zero-padding the last byte on the right."""
        nbytes = (self.length + 7) // 8
        pad = nbytes * 8 - self.length
        return (self.value << pad).to_bytes(nbytes, "big")

    @classmethod
    def from_bools(cls, flags) -> "BitString":
        """First flag becomes the most significant (leftmost) bit."""
        arr = np.asarray(flags, dtype=bool)
        if arr.size == 0:
            return cls(0, 0)
        packed = np.packbits(arr, bitorder="big").tobytes()
        return cls(int.from_bytes(packed, "big") >> (len(packed) * 8 - arr.size), arr.size)

    @classmethod
    def from_bytes(cls, data: bytes, length: int) -> "BitString":
        if length > len(data) * 8:
            raise DecodingError("bit length exceeds payload")
        pad = len(data) * 8 - length
        return cls(int.from_bytes(data, "big") >> pad, length)

    def cursor(self, position: int = 0) -> "BitCursor":
        return BitCursor(self, position)


class BitWriter:
    """Accumulates fields; :meth:`seal` returns the immutable result."""

    def __init__(self):
        self._value = 0
        self._length = 0

    def __len__(self):
        return self._length

    def append_uint(self, value: int, width: int) -> "BitWriter":
        if width < 0 or value < 0 or value >> width:
            raise EncodingError("value {} does not fit in {} bits".format(value, width))
        self._value = (self._value << width) | value
        self._length += width
        return self

    def append_bits(self, bits: BitString) -> "BitWriter":
        self._value = (self._value << bits.length) | bits.value
        self._length += bits.length
        return self

    def append_flags(self, flags) -> "BitWriter":
        for f in flags:
            self.append_uint(1 if f else 0, 1)
        return self

    def seal(self) -> BitString:
        return BitString(self._value, self._length)


def append_uint(b: BitString, value: int, width: int) -> BitString:
    """Return ``b`` extended by ``value`` written big-endian in ``width`` bits."""
    if width < 0 or value < 0 or value >> width:
        raise EncodingError("value {} does not fit in {} bits".format(value, width))
    return BitString((b.value << width) | value, b.length + width)


class BitCursor:
    """Read position into a BitString; ``inspected`` counts payload bits read.

    Seeking is free, only reads are charged.
    """

    __slots__ = ("bits", "position", "inspected")

    def __init__(self, bits: BitString, position: int = 0):
        self.bits = bits
        self.position = position
        self.inspected = 0

    def seek(self, position: int) -> "BitCursor":
        if not 0 <= position <= self.bits.length:
            raise DecodingError("seek outside bit string")
        self.position = position
        return self

    def read_uint(self, width: int) -> int:
        end = self.position + width
        if end > self.bits.length or width < 0:
            raise DecodingError("read of {} bits at {} overruns length {}".format(
                width, self.position, self.bits.length))
        value = (self.bits.value >> (self.bits.length - end)) & ((1 << width) - 1)
        self.position = end
        self.inspected += width
        return value

    def read_at(self, position: int, width: int) -> int:
        self.position = position
        return self.read_uint(width)


def read_uint(c: BitCursor, width: int) -> int:
    return c.read_uint(width)
