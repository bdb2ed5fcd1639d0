"""The shared input channel between sender and machine."""

from __future__ import annotations

ENDMARKER = "◇"
SYMBOLS = ("0", "1", ENDMARKER)


def clean_bits(text: str, allow_endmarker: bool = False) -> str:
    """Strip whitespace from an ASCII bit string and validate it."""
    bits = "".join(text.split())
    allowed = "01" + (ENDMARKER if allow_endmarker else "")
    bad = set(bits) - set(allowed)
    if bad:
        raise ValueError(f"not a bit string: unexpected {''.join(sorted(bad))!r}")
    return bits


class Pipe:
    """Bits the sender still holds plus a count of what the machine consumed.

    ``consumed`` only grows and ``remaining`` only shrinks from the front.
    The full history is kept so lazily shared input lists can look back.
    """

    __slots__ = ("_symbols", "consumed")

    def __init__(self, symbols: str = "", consumed: int = 0):
        self._symbols = symbols
        self.consumed = consumed

    @property
    def remaining(self) -> str:
        return self._symbols[self.consumed:]

    @property
    def history(self) -> str:
        return self._symbols[:self.consumed]

    def empty(self) -> bool:
        return self.consumed >= len(self._symbols)

    def read(self) -> str | None:
        """Take the next symbol, or ``None`` when the machine would block."""
        if self.consumed >= len(self._symbols):
            return None
        sym = self._symbols[self.consumed]
        self.consumed += 1
        return sym

    def symbol_at(self, pos: int) -> str | None:
        """Symbol ``pos`` of the stream, reading it if it is the next one."""
        if pos < self.consumed:
            return self._symbols[pos]
        if pos == self.consumed:
            return self.read()
        raise IndexError("input stream positions must be read in order")

    def copy(self) -> Pipe:
        return Pipe(self._symbols, self.consumed)

    def __repr__(self):
        return f"Pipe(consumed={self.consumed}, remaining={self.remaining!r})"
