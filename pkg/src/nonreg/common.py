"""Shared value types: word helpers, measure profiles and tri-state verdicts."""

from __future__ import annotations

import io
import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Optional

DEFAULT_ENUMERATION_CAP = 2 ** 20


class AlphabetError(ValueError):
    """A word uses letters outside the device's alphabet."""


class EnumerationBudgetExceeded(RuntimeError):
    """Exhaustive enumeration would exceed the configured word budget."""


def check_word(word: str, alphabet: Iterable[str]) -> None:
    allowed = set(alphabet)
    bad = sorted(set(word) - allowed)
    if bad:
        raise AlphabetError(f"word {word!r} uses letters {bad} outside alphabet {sorted(allowed)}")


def words_of_length(alphabet: Iterable[str], n: int) -> Iterator[str]:
    letters = sorted(alphabet)
    for letters_tuple in itertools.product(letters, repeat=n):
        yield "".join(letters_tuple)


def words_up_to(alphabet: Iterable[str], max_len: int) -> Iterator[str]:
    """All words of length <= max_len in shortlex order."""
    for n in range(max_len + 1):
        yield from words_of_length(alphabet, n)


def shortlex_key(word: str) -> tuple[int, str]:
    return (len(word), word)


def render_word(word: str) -> str:
    return word if word else "_"


def parse_word(text: str) -> str:
    text = text.strip()
    return "" if text in ("", "_") else text


@dataclass
class Profile:
    """Per-length maxima of a measure: ``entries[n]`` for 1 <= n <= exhaustive_up_to."""

    entries: dict[int, int] = field(default_factory=dict)
    exhaustive_up_to: int = 0

    def __getitem__(self, n: int) -> int:
        return self.entries[n]

    def values(self) -> list[int]:
        return [self.entries[n] for n in sorted(self.entries)]

    def scaled(self, k: int) -> "Profile":
        return Profile({n: k * v for n, v in self.entries.items()}, self.exhaustive_up_to)

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("n,value\n")
        for n in sorted(self.entries):
            out.write(f"{n},{self.entries[n]}\n")
        return out.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "Profile":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines or lines[0] != "n,value":
            raise ValueError("profile CSV must start with header 'n,value'")
        entries = {}
        for ln in lines[1:]:
            n, v = ln.split(",")
            entries[int(n)] = int(v)
        return cls(entries, max(entries, default=0))


def enumerated_profile(
    measure: Callable[[str], Optional[int]],
    alphabet: Iterable[str],
    n_max: int,
    cap: int = DEFAULT_ENUMERATION_CAP,
) -> Profile:
    """Profile by brute enumeration of every word of each length; absent counts as 0."""
    letters = sorted(alphabet)
    if n_max < 1:
        raise ValueError("n_max must be positive")
    if len(letters) ** n_max > cap:
        raise EnumerationBudgetExceeded(
            f"{len(letters)}^{n_max} words exceed the enumeration cap {cap}"
        )
    entries = {}
    for n in range(1, n_max + 1):
        best = 0
        for w in words_of_length(letters, n):
            value = measure(w)
            if value is not None and value > best:
                best = value
        entries[n] = best
    return Profile(entries, n_max)


@dataclass(frozen=True)
class Bounded:
    """No counterexample exists; ``up_to`` is the verified length, None when exhaustive."""

    up_to: Optional[int] = None


@dataclass(frozen=True)
class Counterexample:
    word: str


@dataclass(frozen=True)
class Unknown:
    reason: str
