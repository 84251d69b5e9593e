"""Bit strings and the self-delimiting length frame.

Bit strings are plain ``str`` objects over the characters ``'0'`` and ``'1'``.
The frame for a payload ``x`` of length ``c`` is::

    0^L 1 B x      with L = floor(log2(c + 1)), B = bin(c + 1) without its leading 1

so the empty string frames to ``"1"`` and the code family is prefix-free for
every ``c >= 0``.
"""

from __future__ import annotations

from .errors import DomainError, TruncatedFrame

BitString = str

_BITS = frozenset("01")


def check_bits(x: str) -> BitString:
    """Return ``x`` unchanged if it only contains '0'/'1', else raise."""
    if not _BITS.issuperset(x):
        raise DomainError(f"not a bit string: {x[:32]!r}")
    return x


def bytes_to_bits(data: bytes) -> BitString:
    """Expand each byte into 8 bits, most significant first."""
    return "".join(format(b, "08b") for b in data)


def sd_len(c: int) -> int:
    """Length of the frame around a payload of ``c`` bits."""
    if c < 0:
        raise DomainError("payload length must be non-negative")
    return c + 2 * ((c + 1).bit_length() - 1) + 1


def encode_sd(x: BitString) -> BitString:
    c1 = len(x) + 1
    width = c1.bit_length() - 1
    return "0" * width + "1" + format(c1, "b")[1:] + x


def decode_sd(stream: BitString) -> tuple[BitString, BitString]:
    """Split ``stream`` into (payload, rest) at the end of its leading frame.

    Raises TruncatedFrame if the stream ends inside the zero run, the length
    bits or the payload.
    """
    width = stream.find("1")
    if width < 0:
        raise TruncatedFrame("stream ends inside the zero run")
    start = 2 * width + 1
    if start > len(stream):
        raise TruncatedFrame("stream ends inside the length bits")
    c = int(stream[width:start], 2) - 1
    end = start + c
    if end > len(stream):
        raise TruncatedFrame(f"frame promises {c} payload bits, {len(stream) - start} present")
    return stream[start:end], stream[end:]
