"""ORLB label container.

Layout (little-endian)::

    b"ORLB" | version (u8 = 1) | profile (u8: 0 tradeoff, 1 fast, 2 reach) | n (u32)
    | global bit length (u64) | global payload, zero-padded to whole bytes
    | n times: [component id (u32), reach only] | bit length (u64) | payload
"""
from __future__ import annotations

import struct
from dataclasses import dataclass

from ..bitio import BitString
from .layout import LabelFormatError

MAGIC = b"ORLB"
VERSION = 1
PROFILE_BYTES = {"tradeoff": 0, "fast": 1, "reach": 2}
PROFILE_FROM_BYTE = {v: k for k, v in PROFILE_BYTES.items()}


@dataclass(frozen=True)
class Container:
    profile: str
    global_bits: BitString
    labels: tuple
    component_ids: tuple | None = None

    @property
    def n(self) -> int:
        return len(self.labels)


def dump(c: Container) -> bytes:
    if c.profile not in PROFILE_BYTES:
        raise ValueError("unknown profile {!r}".format(c.profile))
    reach = c.profile == "reach"
    if reach and (c.component_ids is None or len(c.component_ids) != len(c.labels)):
        raise ValueError("reach container needs one component id per vertex")
    parts = [MAGIC, struct.pack("<BBI", VERSION, PROFILE_BYTES[c.profile], len(c.labels))]
    parts.append(struct.pack("<Q", c.global_bits.length))
    parts.append(c.global_bits.to_bytes())
    for v, bits in enumerate(c.labels):
        if reach:
            parts.append(struct.pack("<I", c.component_ids[v]))
        parts.append(struct.pack("<Q", bits.length))
        parts.append(bits.to_bytes())
    return b"".join(parts)


class _Reader:
    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take(self, size: int) -> bytes:
        if self.pos + size > len(self.data):
            raise LabelFormatError("container truncated")
        chunk = self.data[self.pos:self.pos + size]
        self.pos += size
        return chunk

    def unpack(self, fmt: str):
        return struct.unpack(fmt, self.take(struct.calcsize(fmt)))

    def bits(self) -> BitString:
        (length,) = self.unpack("<Q")
        return BitString.from_bytes(self.take((length + 7) // 8), length)


def load(data: bytes) -> Container:
    r = _Reader(data)
    if r.take(4) != MAGIC:
        raise LabelFormatError("not an ORLB container")
    version, profile_byte, n = r.unpack("<BBI")
    if version != VERSION:
        raise LabelFormatError("unsupported container version {}".format(version))
    if profile_byte not in PROFILE_FROM_BYTE:
        raise LabelFormatError("unknown profile byte {}".format(profile_byte))
    profile = PROFILE_FROM_BYTE[profile_byte]
    global_bits = r.bits()
    labels, comp = [], []
    for _ in range(n):
        if profile == "reach":
            comp.append(r.unpack("<I")[0])
        labels.append(r.bits())
    if r.pos != len(data):
        raise LabelFormatError("trailing bytes after the last label")
    return Container(profile, global_bits, tuple(labels), tuple(comp) if profile == "reach" else None)


def write_file(path, c: Container) -> None:
    with open(path, "wb") as fh:
        fh.write(dump(c))


def read_file(path) -> Container:
    with open(path, "rb") as fh:
        return load(fh.read())
