import re
from typing import Iterable, Iterator

from cutsmith.exceptions import GraphParseError

COMMENT_PATTERN = r"#.*$"


def ceil_log2(value: int) -> int:
    """
    Smallest integer e with 2**e >= value. Every logarithm in the toolkit is taken
    this way.

    :param value: A positive integer.
    :return: ceil(log2(value)), 0 for value 1.
    """
    if value < 1:
        raise ValueError(f"ceil_log2 needs a positive integer, got {value}")
    return (value - 1).bit_length()


def content_lines(
    text: str, patterns: str | Iterable[str] = COMMENT_PATTERN
) -> Iterator[tuple[int, list[str]]]:
    """
    Strip comments from a piece of text and yield the whitespace separated tokens
    of every non-empty line together with its 1-based line number.

    :param text: The text to tokenize.
    :param patterns: The raw string pattern(s) removed from every line before
                     tokenizing.
    :return: Iterator of (line_number, tokens).
    """
    # If only a string is passed in then create a list with only
    # that string in it
    if isinstance(patterns, str):
        patterns = [patterns]
    compiled = [re.compile(pattern) for pattern in patterns]

    for line_number, line in enumerate(text.splitlines(), start=1):
        for pattern in compiled:
            line = pattern.sub("", line)
        tokens = line.split()
        if tokens:
            yield line_number, tokens


def decode_text(text: str | bytes) -> str:
    """
    File contents as text. Bytes are decoded as UTF-8.

    :raises GraphParseError: If the bytes are not valid UTF-8, pointing at the line
                             holding the first bad byte.
    """
    if isinstance(text, str):
        return text
    try:
        return text.decode("utf-8")
    except UnicodeDecodeError as e:
        line_number = text[: e.start].count(b"\n") + 1
        raise GraphParseError(
            f"invalid UTF-8 byte 0x{text[e.start]:02x}", line_number
        ) from e


def parse_terminal_file(text: str | bytes) -> list[int]:
    """
    Parse a terminal file: one vertex id per line, comments start with '#'.

    :param text: Contents of the terminal file.
    :return: The vertex ids in file order.
    """
    terminals = []
    for line_number, tokens in content_lines(decode_text(text)):
        if len(tokens) != 1:
            raise GraphParseError("expected a single vertex id", line_number)
        try:
            terminals.append(int(tokens[0]))
        except ValueError as e:
            raise GraphParseError(
                f"'{tokens[0]}' is not a vertex id", line_number
            ) from e

    return terminals
