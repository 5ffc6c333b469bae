"""Bit-exact reading and writing of PGM images (binary P5, ASCII P2).

The reader accepts any header layout the netpbm conventions allow:
tokens separated by arbitrary whitespace, with ``#`` comments running to
end of line.  The writer always emits one canonical layout so output
files can be compared byte for byte:

    <magic>\\n
    <width> <height>\\n
    <maxval>\\n
    samples

P5 samples are raw bytes, big-endian 2-byte words when maxval > 255.
P2 samples are ASCII, one image row per text line, wrapped so no line
exceeds 70 characters.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .image import RawImage

MAX_MAXVAL = 65535

_WHITESPACE = b" \t\n\r\x0b\x0c"


class PgmParseError(ValueError):
    """Malformed PGM input; ``offset`` locates the offending byte."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


@dataclass(frozen=True)
class PnmHeader:
    magic: str
    width: int
    height: int
    maxval: int


class _Scanner:
    """Token scanner over the header portion of a PGM byte stream."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def skip_separators(self) -> None:
        data, n = self.data, len(self.data)
        while self.pos < n:
            c = data[self.pos : self.pos + 1]
            if c == b"#":
                eol = data.find(b"\n", self.pos)
                self.pos = n if eol == -1 else eol + 1
            elif c in _WHITESPACE:
                self.pos += 1
            else:
                return

    def next_token(self, what: str) -> tuple[bytes, int]:
        self.skip_separators()
        if self.pos >= len(self.data):
            raise PgmParseError(f"unexpected end of data while reading {what}", len(self.data))
        start = self.pos
        while self.pos < len(self.data):
            c = self.data[self.pos : self.pos + 1]
            if c in _WHITESPACE or c == b"#":
                break
            self.pos += 1
        return self.data[start : self.pos], start

    def next_int(self, what: str, lo: int, hi: int) -> int:
        token, start = self.next_token(what)
        if not token.isdigit():
            raise PgmParseError(f"{what} is not an unsigned integer: {token!r}", start)
        value = int(token)
        if not lo <= value <= hi:
            raise PgmParseError(f"{what} {value} outside [{lo}, {hi}]", start)
        return value


def parse_pgm(data: bytes) -> tuple[PnmHeader, RawImage]:
    """Parse a PGM byte stream, returning its header and pixel data."""
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise PgmParseError(f"unsupported magic {magic!r}, expected P2 or P5", 0)
    if len(data) < 3 or data[2:3] not in _WHITESPACE and data[2:3] != b"#":
        raise PgmParseError("magic must be followed by whitespace", 2)

    scanner = _Scanner(data)
    scanner.pos = 2
    width = scanner.next_int("width", 1, 2**31 - 1)
    height = scanner.next_int("height", 1, 2**31 - 1)
    maxval = scanner.next_int("maxval", 1, MAX_MAXVAL)
    header = PnmHeader(magic.decode("ascii"), width, height, maxval)
    count = width * height

    if magic == b"P5":
        # Exactly one whitespace byte separates the header from the raster.
        if scanner.pos >= len(data) or data[scanner.pos : scanner.pos + 1] not in _WHITESPACE:
            raise PgmParseError("maxval must be followed by a whitespace byte", scanner.pos)
        start = scanner.pos + 1
        bytes_per_sample = 2 if maxval > 255 else 1
        end = start + count * bytes_per_sample
        if len(data) < end:
            raise PgmParseError(
                f"raster truncated: expected {count * bytes_per_sample} bytes, "
                f"got {len(data) - start}",
                len(data),
            )
        dtype = ">u2" if bytes_per_sample == 2 else np.uint8
        samples = np.frombuffer(data[start:end], dtype=dtype).astype(np.int64)
        over = np.nonzero(samples > maxval)[0]
        if over.size:
            i = int(over[0])
            raise PgmParseError(
                f"sample {samples[i]} exceeds maxval {maxval}",
                start + i * bytes_per_sample,
            )
    else:
        samples = np.empty(count, dtype=np.int64)
        for i in range(count):
            samples[i] = scanner.next_int(f"sample {i}", 0, maxval)

    pixels = samples.reshape(height, width)
    return header, RawImage(pixels, maxval)


def read_pgm(data: bytes) -> RawImage:
    """Parse a PGM byte stream, discarding the header details."""
    return parse_pgm(data)[1]


def write_pgm(img: RawImage, magic: str = "P5") -> bytes:
    """Serialize a RawImage in the canonical layout for ``magic``."""
    if magic not in ("P2", "P5"):
        raise ValueError(f"magic must be 'P2' or 'P5', got {magic!r}")
    if img.maxval > MAX_MAXVAL:
        raise ValueError(f"maxval {img.maxval} exceeds the PGM limit {MAX_MAXVAL}")
    header = f"{magic}\n{img.width} {img.height}\n{img.maxval}\n".encode("ascii")
    if magic == "P5":
        dtype = ">u2" if img.maxval > 255 else np.uint8
        return header + img.pixels.astype(dtype).tobytes()
    lines = []
    for row in img.pixels:
        line = ""
        for token in map(str, row.tolist()):
            if not line:
                line = token
            elif len(line) + 1 + len(token) <= 70:
                line += " " + token
            else:
                lines.append(line)
                line = token
        lines.append(line)
    return header + ("\n".join(lines) + "\n").encode("ascii")
