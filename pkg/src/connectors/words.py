"""k-ary words, the adjacent-pair connector statistics, and brute-force distributions."""
from __future__ import annotations

import enum
import itertools
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

from .algebra import Poly

DEFAULT_ENUM_CAP = 10**8
ENUM_CAP_ENV = "CONNECTOR_ENUM_CAP"


class InvalidWord(ValueError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position


class EnumerationTooLarge(RuntimeError):
    pass


@dataclass(frozen=True)
class Word:
    """A word over the alphabet {1..k}; letters are 1-based, length may be 0."""

    letters: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise InvalidWord(f"alphabet size must be positive, got {self.k}")
        object.__setattr__(self, "letters", tuple(self.letters))
        for pos, letter in enumerate(self.letters, start=1):
            if not 1 <= letter <= self.k:
                raise InvalidWord(
                    f"letter {letter} at position {pos} is outside 1..{self.k}", pos
                )

    def __len__(self) -> int:
        return len(self.letters)

    def reversed(self) -> "Word":
        return Word(self.letters[::-1], self.k)

    @classmethod
    def parse(cls, text: str, k: int) -> "Word":
        """Parse ``"143114"`` (letters 1-9 only) or ``"10,3"`` (comma separated)."""
        text = text.strip()
        if not text:
            return cls((), k)
        tokens = text.split(",") if "," in text else list(text)
        letters = []
        for pos, tok in enumerate(tokens, start=1):
            tok = tok.strip()
            if not tok.isdigit():
                raise InvalidWord(f"cannot parse letter {tok!r} at position {pos}", pos)
            letters.append(int(tok))
        return cls(tuple(letters), k)

    def __str__(self) -> str:
        if self.k <= 9:
            return "".join(map(str, self.letters))
        return ",".join(map(str, self.letters))


class Kind(enum.Enum):
    SUM_EQUALS = "eq"
    SUM_GREATER = "gt"


@dataclass(frozen=True)
class ConnectorStat:
    """Counts adjacent pairs whose sum equals (or exceeds) ``threshold``."""

    kind: Kind
    threshold: int

    def __post_init__(self) -> None:
        if self.threshold < 1:
            raise ValueError(f"threshold must be >= 1, got {self.threshold}")

    def holds(self, a: int, b: int) -> bool:
        s = a + b
        if self.kind is Kind.SUM_EQUALS:
            return s == self.threshold
        return s > self.threshold

    @property
    def name(self) -> str:
        return "kcon" if self.kind is Kind.SUM_EQUALS else "gkcon"


def kcon(k: int) -> ConnectorStat:
    return ConnectorStat(Kind.SUM_EQUALS, k)


def gkcon(k: int) -> ConnectorStat:
    return ConnectorStat(Kind.SUM_GREATER, k)


def stat_by_name(name: str, threshold: int) -> ConnectorStat:
    try:
        kind = {"kcon": Kind.SUM_EQUALS, "gkcon": Kind.SUM_GREATER}[name]
    except KeyError:
        raise ValueError(f"unknown statistic {name!r}; expected kcon or gkcon") from None
    return ConnectorStat(kind, threshold)


def stat_count(w: Word, s: ConnectorStat) -> int:
    return sum(s.holds(a, b) for a, b in zip(w.letters, w.letters[1:]))


def default_enum_cap() -> int:
    raw = os.environ.get(ENUM_CAP_ENV)
    return int(raw) if raw else DEFAULT_ENUM_CAP


def check_enum_cap(n: int, k: int, cap: int | None = None) -> None:
    cap = default_enum_cap() if cap is None else cap
    if k**n > cap:
        raise EnumerationTooLarge(
            f"enumeration too large: {k}^{n} = {k**n} words exceeds cap {cap}"
        )


def enumerate_words(n: int, k: int, cap: int | None = None) -> Iterator[Word]:
    """All ``k**n`` words of length n in lexicographic order."""
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    check_enum_cap(n, k, cap)
    for letters in itertools.product(range(1, k + 1), repeat=n):
        yield Word(letters, k)


def _pair_table(k: int, s: ConnectorStat) -> list[list[int]]:
    return [[int(a and b and s.holds(a, b)) for b in range(k + 1)] for a in range(k + 1)]


def _histogram(n: int, k: int, s: ConnectorStat, first: Sequence[int]) -> Counter:
    # Words are enumerated as plain tuples here; wrapping each in Word costs ~3x.
    tbl = _pair_table(k, s)
    hist: Counter = Counter()
    alphabet = range(1, k + 1)
    for a0 in first:
        for tail in itertools.product(alphabet, repeat=n - 1):
            w = (a0,) + tail
            hist[sum(map(lambda a, b: tbl[a][b], w, tail))] += 1
    return hist


def brute_distribution(
    n: int, k: int, s: ConnectorStat, cap: int | None = None, workers: int = 1
) -> Poly:
    """Sum of ``q**stat(w)`` over every word of length n, by exhaustive enumeration.

    With ``workers > 1`` the words are split by first letter across processes;
    the merged histogram is identical to the sequential one.
    """
    if n < 0 or k < 1:
        raise ValueError("need n >= 0 and k >= 1")
    check_enum_cap(n, k, cap)
    if n == 0:
        return Poly.const(1)
    letters = list(range(1, k + 1))
    if workers > 1 and k > 1:
        chunks = [letters[i::workers] for i in range(min(workers, k))]
        hist: Counter = Counter()
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            for part in pool.map(_histogram, *zip(*[(n, k, s, c) for c in chunks])):
                hist.update(part)
    else:
        hist = _histogram(n, k, s, letters)
    coeffs = [0] * (max(hist) + 1)
    for value, count in hist.items():
        coeffs[value] = count
    return Poly(coeffs)
