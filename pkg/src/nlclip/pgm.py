"""Reading and writing of PGM (P2 ASCII / P5 binary) grayscale images."""

from __future__ import annotations

import os

import numpy as np

from .image import Image

__all__ = ["PGMError", "read_pgm", "write_pgm", "load_pgm", "save_pgm"]

_WHITESPACE = b" \t\n\r\v\f"


class PGMError(ValueError):
    """Malformed PGM data; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte offset {offset})")
        self.offset = offset


def _next_token(buf: bytes, pos: int) -> tuple[bytes, int, int]:
    """Return ``(token, token_start, position_after_token)``, skipping comments."""
    n = len(buf)
    while pos < n:
        c = buf[pos : pos + 1]
        if c in _WHITESPACE:
            pos += 1
        elif c == b"#":
            while pos < n and buf[pos : pos + 1] not in b"\r\n":
                pos += 1
        else:
            break
    if pos >= n:
        raise PGMError("unexpected end of header", pos)
    start = pos
    while pos < n and buf[pos : pos + 1] not in _WHITESPACE and buf[pos : pos + 1] != b"#":
        pos += 1
    return buf[start:pos], start, pos


def _header_int(buf: bytes, pos: int, what: str) -> tuple[int, int, int]:
    tok, start, pos = _next_token(buf, pos)
    if not tok.isdigit():
        raise PGMError(f"invalid {what} {tok!r}", start)
    return int(tok), start, pos


def read_pgm(data: bytes) -> Image:
    """Parse PGM bytes into an :class:`Image` with amplitudes ``v / maxval``.

    Both the binary (``P5``, 8- or 16-bit big-endian) and the plain ASCII
    (``P2``) variants are accepted.
    """
    buf = bytes(data)
    if len(buf) < 2:
        raise PGMError("missing magic number", 0)
    magic = buf[:2]
    if magic not in (b"P2", b"P5"):
        raise PGMError(f"unsupported magic number {magic!r}", 0)
    pos = 2
    width, start, pos = _header_int(buf, pos, "width")
    if width < 1:
        raise PGMError("width must be positive", start)
    height, start, pos = _header_int(buf, pos, "height")
    if height < 1:
        raise PGMError("height must be positive", start)
    maxval, start, pos = _header_int(buf, pos, "maxval")
    if maxval < 1 or maxval > 65535:
        raise PGMError(f"maxval must be in 1..65535, got {maxval}", start)

    count = width * height
    if magic == b"P5":
        # exactly one whitespace byte separates the header from the raster
        if pos >= len(buf) or buf[pos : pos + 1] not in _WHITESPACE:
            raise PGMError("missing whitespace after maxval", pos)
        pos += 1
        dtype = np.dtype(">u2") if maxval > 255 else np.dtype("u1")
        need = count * dtype.itemsize
        if len(buf) - pos < need:
            raise PGMError(
                f"truncated payload: expected {need} bytes, found {len(buf) - pos}", len(buf)
            )
        samples = np.frombuffer(buf, dtype=dtype, count=count, offset=pos).astype(np.int64)

        def sample_offset(k):
            return pos + k * dtype.itemsize

    else:
        samples = np.empty(count, dtype=np.int64)
        starts = np.empty(count, dtype=np.int64)

        def sample_offset(k):
            return int(starts[k])

        for k in range(count):
            try:
                value, start, pos = _header_int(buf, pos, "sample")
            except PGMError as exc:
                if exc.offset >= len(buf):
                    raise PGMError(
                        f"truncated payload: expected {count} samples, found {k}", len(buf)
                    ) from None
                raise
            samples[k] = value
            starts[k] = start

    bad = np.flatnonzero(samples > maxval)
    if bad.size:
        k = int(bad[0])
        raise PGMError(f"sample {samples[k]} exceeds maxval {maxval}", sample_offset(k))
    return Image(samples.reshape(height, width) / maxval)


def write_pgm(img: Image) -> bytes:
    """Encode ``img`` as 8-bit binary PGM (``P5``, maxval 255).

    Amplitudes are scaled by 255 and rounded half away from zero.
    """
    scaled = np.floor(img.data * 255.0 + 0.5)
    payload = np.clip(scaled, 0, 255).astype(np.uint8).tobytes()
    header = f"P5\n{img.width} {img.height}\n255\n".encode("ascii")
    return header + payload


def load_pgm(path: str | os.PathLike) -> Image:
    with open(path, "rb") as fh:
        return read_pgm(fh.read())


def save_pgm(img: Image, path: str | os.PathLike) -> None:
    with open(path, "wb") as fh:
        fh.write(write_pgm(img))
