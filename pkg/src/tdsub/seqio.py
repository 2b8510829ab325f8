"""Line-oriented text formats for sequences and messages."""

from __future__ import annotations

from typing import Iterable, Sequence, TextIO

from .errors import ParameterError
from .words import Word, word_str

DNA = "ACGT"
_DIGITS = "0123456789abcdef"


class FormatError(ParameterError):
    def __init__(self, msg: str, line: int, col: int | None = None):
        where = f"line {line}" + (f", column {col}" if col is not None else "")
        super().__init__(f"{where}: {msg}")
        self.line, self.col = line, col


def render_word(w: Iterable[int], dna: bool = False) -> str:
    if dna:
        return "".join(DNA[s] for s in w)
    return word_str(w)


def parse_word(text: str, q: int, dna: bool = False, line: int = 1) -> Word:
    if dna and q != 4:
        raise ParameterError("DNA letters require q = 4")
    alphabet = DNA if dna else _DIGITS[:q]
    out = []
    for col, ch in enumerate(text.strip(), 1):
        k = alphabet.find(ch.upper() if dna else ch.lower())
        if k < 0:
            raise FormatError(f"invalid symbol {ch!r} for q={q}", line, col)
        out.append(k)
    return tuple(out)


def read_sequences(stream: TextIO, q: int, dna: bool = False) -> list[Word]:
    return [
        parse_word(line, q, dna, lineno)
        for lineno, line in enumerate(stream, 1)
        if line.strip()
    ]


def write_sequences(stream: TextIO, words: Iterable[Word], dna: bool = False) -> None:
    for w in words:
        stream.write(render_word(w, dna) + "\n")


def format_message(symbols: Sequence[int], degree: int) -> str:
    width = (degree + 3) // 4
    return " ".join(f"{s:0{width}x}" for s in symbols)


def parse_message(text: str, degree: int, k: int, line: int = 1) -> list[int]:
    """Whitespace-separated hex field symbols; exactly ``k`` of them."""
    out = []
    for tok in text.split():
        try:
            v = int(tok, 16)
        except ValueError:
            raise FormatError(f"{tok!r} is not a hex number", line) from None
        if not 0 <= v < (1 << degree):
            raise FormatError(f"symbol {tok} outside GF(2^{degree})", line)
        out.append(v)
    if len(out) != k:
        raise FormatError(f"expected {k} symbols, found {len(out)}", line)
    return out


def read_messages(stream: TextIO, degree: int, k: int) -> list[list[int]]:
    return [
        parse_message(line, degree, k, lineno)
        for lineno, line in enumerate(stream, 1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
