"""Core image value type, grayscale conversion, and the PNM/PNG codecs.

Images are immutable rasters of float64 intensities in [0, 1]. Grayscale
rasters store a (height, width) array, RGB rasters (height, width, 3).
PGM/PPM (P2, P3, P5, P6) is the canonical, hand-writable fixture format;
PNG (8-bit gray/RGB, non-interlaced) is a convenience codec.
"""

from __future__ import annotations

import struct
import zlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ParseError, UnsupportedFormat

# Classic broadcast luminance weights; they sum to 1 so grayscale values of
# in-range RGB never need clamping.
LUMA_WEIGHTS = (0.299, 0.587, 0.114)

_WHITESPACE = frozenset(b" \t\n\r\x0b\x0c")


@dataclass(frozen=True, eq=False)
class Raster:
    """Immutable image of normalized intensities.

    The wrapped array is copied, converted to float64 and locked, so a
    Raster can be shared freely across threads. All samples must already
    lie in [0, 1]; operations that can leave the range clamp before
    constructing their result.
    """

    pixels: np.ndarray

    def __post_init__(self):
        px = np.array(self.pixels, dtype=np.float64, copy=True)
        if not (px.ndim == 2 or (px.ndim == 3 and px.shape[2] == 3)):
            raise ValueError(f"expected (h, w) or (h, w, 3) array, got shape {px.shape}")
        if px.shape[0] < 1 or px.shape[1] < 1:
            raise ValueError("image dimensions must be positive")
        if not np.all(np.isfinite(px)):
            raise ValueError("image contains non-finite samples")
        if px.min() < 0.0 or px.max() > 1.0:
            raise ValueError("samples outside [0, 1]; clamp before construction")
        px.flags.writeable = False
        object.__setattr__(self, "pixels", px)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @property
    def channels(self) -> int:
        return 1 if self.pixels.ndim == 2 else 3

    @property
    def is_gray(self) -> bool:
        return self.pixels.ndim == 2

    @classmethod
    def filled(cls, width: int, height: int, value: float = 0.0, channels: int = 1) -> "Raster":
        shape = (height, width) if channels == 1 else (height, width, 3)
        return cls(np.full(shape, value, dtype=np.float64))


@dataclass(frozen=True, eq=False)
class BitMask:
    """Boolean per-pixel mask; True marks pixels to be replaced."""

    bits: np.ndarray

    def __post_init__(self):
        b = np.array(self.bits, dtype=bool, copy=True)
        if b.ndim != 2:
            raise ValueError(f"expected (h, w) boolean array, got shape {b.shape}")
        b.flags.writeable = False
        object.__setattr__(self, "bits", b)

    @property
    def width(self) -> int:
        return self.bits.shape[1]

    @property
    def height(self) -> int:
        return self.bits.shape[0]

    @property
    def count(self) -> int:
        """Number of set (invalid) pixels."""
        return int(self.bits.sum())

    def matches(self, img: Raster) -> bool:
        return (self.height, self.width) == (img.height, img.width)


def clipped(pixels: np.ndarray) -> Raster:
    """Wrap an array as a Raster, clamping samples into [0, 1]."""
    return Raster(np.clip(pixels, 0.0, 1.0))


def to_grayscale(img: Raster) -> Raster:
    """Convert to single-channel luminance; grayscale input is returned as is."""
    if img.is_gray:
        return img
    gray = img.pixels @ np.array(LUMA_WEIGHTS)
    return clipped(gray)


# ---------------------------------------------------------------------------
# PNM (PGM / PPM)
# ---------------------------------------------------------------------------

class _Scanner:
    """Byte-level scanner over a PNM header; tracks offsets for errors."""

    def __init__(self, buf: bytes):
        self.buf = buf
        self.pos = 0

    def _skip_filler(self) -> None:
        buf, n = self.buf, len(self.buf)
        while self.pos < n:
            c = buf[self.pos]
            if c in _WHITESPACE:
                self.pos += 1
            elif c == ord("#"):
                while self.pos < n and buf[self.pos] not in (0x0A, 0x0D):
                    self.pos += 1
            else:
                return

    def token(self) -> bytes:
        self._skip_filler()
        start = self.pos
        buf, n = self.buf, len(self.buf)
        while self.pos < n and buf[self.pos] not in _WHITESPACE and buf[self.pos] != ord("#"):
            self.pos += 1
        if self.pos == start:
            raise ParseError("unexpected end of header", offset=start)
        return buf[start:self.pos]

    def int_token(self, what: str) -> int:
        start = self.pos
        tok = self.token()
        try:
            return int(tok)
        except ValueError:
            raise ParseError(f"invalid {what} {tok!r}", offset=start) from None

    def single_whitespace(self) -> None:
        if self.pos >= len(self.buf) or self.buf[self.pos] not in _WHITESPACE:
            raise ParseError("expected whitespace before pixel data", offset=self.pos)
        self.pos += 1


def load_pnm(data: bytes) -> Raster:
    """Decode a PGM (P2/P5) or PPM (P3/P6) byte stream.

    Stored integers are normalized by the declared maxval, which must be
    255 or 65535. Header comments starting with '#' are skipped.
    """
    magic = bytes(data[:2])
    if magic in (b"P1", b"P4"):
        raise UnsupportedFormat(f"bitmap format {magic.decode()} is not supported")
    if magic not in (b"P2", b"P3", b"P5", b"P6"):
        raise ParseError(f"not a PNM stream (magic {magic!r})", offset=0)
    channels = 3 if magic in (b"P3", b"P6") else 1
    binary = magic in (b"P5", b"P6")

    sc = _Scanner(data)
    sc.pos = 2
    width = sc.int_token("width")
    height = sc.int_token("height")
    if width <= 0 or height <= 0:
        raise ParseError(f"invalid dimensions {width}x{height}", offset=sc.pos)
    maxval = sc.int_token("maxval")
    if maxval not in (255, 65535):
        raise UnsupportedFormat(f"maxval {maxval} not supported (use 255 or 65535)")

    count = width * height * channels
    if binary:
        sc.single_whitespace()
        dtype = ">u2" if maxval == 65535 else np.uint8
        itemsize = 2 if maxval == 65535 else 1
        need = count * itemsize
        payload = data[sc.pos:sc.pos + need]
        if len(payload) < need:
            raise ParseError(
                f"truncated pixel data: expected {need} bytes, found {len(payload)}",
                offset=len(data),
            )
        values = np.frombuffer(payload, dtype=dtype).astype(np.float64)
    else:
        values = np.empty(count, dtype=np.float64)
        for i in range(count):
            at = sc.pos
            try:
                v = sc.int_token("sample")
            except ParseError:
                raise ParseError(
                    f"truncated pixel data: expected {count} samples, found {i}",
                    offset=len(data),
                ) from None
            if v < 0 or v > maxval:
                raise ParseError(f"sample {v} outside [0, {maxval}]", offset=at)
            values[i] = v

    values /= maxval
    shape = (height, width) if channels == 1 else (height, width, 3)
    return Raster(values.reshape(shape))


def save_pnm(img: Raster, binary: bool = True) -> bytes:
    """Encode as PGM/PPM with maxval 255; sample v stores as floor(255 v + 0.5)."""
    q = quantize8(img.pixels)
    if img.is_gray:
        magic = b"P5" if binary else b"P2"
    else:
        magic = b"P6" if binary else b"P3"
    header = b"%s\n%d %d\n255\n" % (magic, img.width, img.height)
    if binary:
        return header + q.tobytes()
    flat = q.reshape(img.height, -1)
    body = b"\n".join(b" ".join(b"%d" % v for v in row) for row in flat)
    return header + body + b"\n"


def quantize8(pixels: np.ndarray) -> np.ndarray:
    """Quantize [0, 1] intensities to uint8 with round-half-up."""
    return np.floor(pixels * 255.0 + 0.5).astype(np.uint8)


# ---------------------------------------------------------------------------
# PNG (8-bit gray / RGB, non-interlaced)
# ---------------------------------------------------------------------------

_PNG_SIG = b"\x89PNG\r\n\x1a\n"


def _png_chunk(tag: bytes, payload: bytes) -> bytes:
    return (
        struct.pack(">I", len(payload))
        + tag
        + payload
        + struct.pack(">I", zlib.crc32(tag + payload))
    )


def save_png(img: Raster) -> bytes:
    """Encode as an 8-bit non-interlaced PNG (color type 0 or 2)."""
    q = quantize8(img.pixels)
    color_type = 0 if img.is_gray else 2
    ihdr = struct.pack(">IIBBBBB", img.width, img.height, 8, color_type, 0, 0, 0)
    rows = q.reshape(img.height, -1)
    raw = b"".join(b"\x00" + row.tobytes() for row in rows)
    return (
        _PNG_SIG
        + _png_chunk(b"IHDR", ihdr)
        + _png_chunk(b"IDAT", zlib.compress(raw, 9))
        + _png_chunk(b"IEND", b"")
    )


def _paeth(a: int, b: int, c: int) -> int:
    p = a + b - c
    pa, pb, pc = abs(p - a), abs(p - b), abs(p - c)
    if pa <= pb and pa <= pc:
        return a
    if pb <= pc:
        return b
    return c


def _unfilter(raw: bytes, width: int, height: int, bpp: int) -> np.ndarray:
    stride = width * bpp
    if len(raw) < height * (stride + 1):
        raise ParseError("truncated PNG pixel data", offset=len(raw))
    out = np.zeros((height, stride), dtype=np.uint8)
    pos = 0
    for y in range(height):
        ftype = raw[pos]
        line = bytearray(raw[pos + 1:pos + 1 + stride])
        pos += stride + 1
        prev = out[y - 1] if y > 0 else np.zeros(stride, dtype=np.uint8)
        if ftype == 0:
            pass
        elif ftype == 1:  # Sub
            for i in range(bpp, stride):
                line[i] = (line[i] + line[i - bpp]) & 0xFF
        elif ftype == 2:  # Up
            for i in range(stride):
                line[i] = (line[i] + prev[i]) & 0xFF
        elif ftype == 3:  # Average
            for i in range(stride):
                left = line[i - bpp] if i >= bpp else 0
                line[i] = (line[i] + (left + int(prev[i])) // 2) & 0xFF
        elif ftype == 4:  # Paeth
            for i in range(stride):
                left = line[i - bpp] if i >= bpp else 0
                up_left = int(out[y - 1, i - bpp]) if (i >= bpp and y > 0) else 0
                line[i] = (line[i] + _paeth(left, int(prev[i]), up_left)) & 0xFF
        else:
            raise ParseError(f"unknown PNG filter type {ftype}", offset=pos)
        out[y] = np.frombuffer(bytes(line), dtype=np.uint8)
    return out


def load_png(data: bytes) -> Raster:
    """Decode an 8-bit non-interlaced gray or RGB PNG."""
    if data[:8] != _PNG_SIG:
        raise ParseError("not a PNG stream", offset=0)
    pos = 8
    ihdr = None
    idat = bytearray()
    while pos + 8 <= len(data):
        (length,) = struct.unpack(">I", data[pos:pos + 4])
        tag = data[pos + 4:pos + 8]
        payload = data[pos + 8:pos + 8 + length]
        crc_at = pos + 8 + length
        if len(payload) < length or crc_at + 4 > len(data):
            raise ParseError("truncated PNG chunk", offset=pos)
        (crc,) = struct.unpack(">I", data[crc_at:crc_at + 4])
        if crc != zlib.crc32(tag + payload):
            raise ParseError(f"CRC mismatch in {tag.decode('latin1')} chunk", offset=crc_at)
        pos = crc_at + 4
        if tag == b"IHDR":
            ihdr = struct.unpack(">IIBBBBB", payload)
        elif tag == b"IDAT":
            idat.extend(payload)
        elif tag == b"IEND":
            break
    if ihdr is None:
        raise ParseError("missing IHDR chunk", offset=8)
    width, height, depth, color_type, compression, filt, interlace = ihdr
    if depth != 8 or color_type not in (0, 2):
        raise UnsupportedFormat(
            f"only 8-bit gray/RGB PNG is supported (depth {depth}, color type {color_type})"
        )
    if compression != 0 or filt != 0 or interlace != 0:
        raise UnsupportedFormat("nonstandard compression/filter methods and interlacing are not supported")
    try:
        raw = zlib.decompress(bytes(idat))
    except zlib.error as exc:
        raise ParseError(f"corrupt PNG pixel stream: {exc}") from None
    bpp = 1 if color_type == 0 else 3
    rows = _unfilter(raw, width, height, bpp)
    values = rows.astype(np.float64) / 255.0
    shape = (height, width) if bpp == 1 else (height, width, 3)
    return Raster(values.reshape(shape))


# ---------------------------------------------------------------------------
# Path-level convenience
# ---------------------------------------------------------------------------

def read_image(path: str | Path) -> Raster:
    """Load a raster, choosing the codec from the file extension."""
    path = Path(path)
    data = path.read_bytes()
    if path.suffix.lower() == ".png":
        return load_png(data)
    return load_pnm(data)


def write_image(path: str | Path, img: Raster, binary: bool = True) -> None:
    """Save a raster, choosing the codec from the file extension."""
    path = Path(path)
    if path.suffix.lower() == ".png":
        path.write_bytes(save_png(img))
    else:
        path.write_bytes(save_pnm(img, binary=binary))
