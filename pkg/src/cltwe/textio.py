"""Line-oriented reader shared by the text artifact formats.

All formats are ASCII, one record per line, ``\\n`` terminated. The reader
tracks byte offsets so errors can point at the damaged spot.
"""

import re

from .errors import FormatError

_HEX = re.compile(r"0|[1-9a-f][0-9a-f]*")
_DEC = re.compile(r"0|[1-9][0-9]*")


def to_hex(x: int) -> str:
    if x < 0:
        raise ValueError("only non-negative integers are hex-encoded")
    return format(x, "x")


class LineReader:
    def __init__(self, data):
        if isinstance(data, str):
            data = data.encode()
        try:
            self.text = data.decode("ascii")
        except UnicodeDecodeError as exc:
            raise FormatError("non-ASCII byte", offset=exc.start) from None
        self.pos = 0
        self.lineno = 0

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def next(self, section: str):
        """Return ``(line, offset)``; a missing or unterminated line is an error."""
        if self.at_end():
            raise FormatError(f"truncated: missing {section}", offset=self.pos)
        end = self.text.find("\n", self.pos)
        if end < 0:
            raise FormatError(f"truncated: unterminated line in {section}", offset=self.pos)
        line, offset = self.text[self.pos:end], self.pos
        self.pos = end + 1
        self.lineno += 1
        return line, offset

    def expect(self, literal: str, section: str) -> None:
        line, off = self.next(section)
        if line != literal:
            raise FormatError(f"expected {literal!r} in {section}, got {line[:20]!r}", offset=off)

    def keyval(self, key: str, kind: str = "dec") -> int:
        line, off = self.next(key)
        prefix = key + "="
        if not line.startswith(prefix):
            raise FormatError(f"expected '{prefix}...'", offset=off)
        return parse_int(line[len(prefix):], kind, off + len(prefix))

    def finish(self) -> None:
        if not self.at_end():
            raise FormatError("trailing data after END", offset=self.pos)


def parse_int(token: str, kind: str, offset: int) -> int:
    pattern, base = (_HEX, 16) if kind == "hex" else (_DEC, 10)
    if not pattern.fullmatch(token):
        raise FormatError(f"bad {kind} number {token[:20]!r}", offset=offset)
    return int(token, base)


def split_record(line: str, offset: int, tag: str, nfields: int):
    parts = line.split(" ")
    if len(parts) != nfields or parts[0] != tag:
        raise FormatError(f"expected a '{tag}' record with {nfields} fields", offset=offset)
    return parts
