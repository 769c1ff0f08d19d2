"""
Words over the alphabet {1, ..., N}.

Letters are 1-based, as in the usual multi-index notation s_J for the
Cuntz algebra; ranks are 0-based.  Two words of the same length are
rotation-equivalent when one is a cyclic shift of the other; the
canonical representative of a class is its lexicographically least
rotation (the base-N value order restricted to a fixed length).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Sequence

from .errors import UsageError


@dataclass(frozen=True)
class Word:
    """A nonempty finite sequence of letters in [1, N]."""

    letters: tuple[int, ...]
    N: int

    def __post_init__(self):
        letters = tuple(int(j) for j in self.letters)
        object.__setattr__(self, "letters", letters)
        if self.N < 2:
            raise UsageError(f"alphabet size must be >= 2, got {self.N}")
        if not letters:
            raise UsageError("a word must have at least one letter")
        for j in letters:
            if not 1 <= j <= self.N:
                raise UsageError(f"letter {j} outside [1, {self.N}] in {letters}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[int]:
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __str__(self) -> str:
        return format_letters(self.letters, self.N)


@dataclass(frozen=True, order=True)
class RotationClassRep:
    """The minimal rotation of a word together with its least period."""

    word: Word
    period: int

    @property
    def letters(self) -> tuple[int, ...]:
        return self.word.letters

    @property
    def is_periodic(self) -> bool:
        return self.period < len(self.word)

    def __len__(self) -> int:
        return len(self.word)

    def __str__(self) -> str:
        return str(self.word)


def as_word(J, N: int | None = None) -> Word:
    """Coerce a Word, a letter sequence or a digit string into a Word."""
    if isinstance(J, Word):
        if N is not None and J.N != N:
            raise UsageError(f"word {J} is over N={J.N}, expected N={N}")
        return J
    if N is None:
        raise UsageError("alphabet size required to build a word from raw letters")
    if isinstance(J, str):
        return parse_word(J, N)
    return Word(tuple(J), N)


def format_letters(letters: Sequence[int], N: int) -> str:
    if N <= 9:
        return "".join(str(j) for j in letters)
    return ",".join(str(j) for j in letters)


def parse_word(text: str, N: int) -> Word:
    """Parse "113223" (N <= 9) or "1,10,2" (any N) into a Word."""
    text = text.strip()
    if not text:
        raise UsageError("empty word")
    if "," in text:
        parts = [p.strip() for p in text.split(",")]
    elif N <= 9:
        parts = list(text)
    else:
        parts = [text]
    try:
        letters = tuple(int(p) for p in parts)
    except ValueError:
        raise UsageError(f"cannot parse word {text!r}") from None
    return Word(letters, N)


def _rot(letters: tuple, t: int) -> tuple:
    t %= len(letters)
    return letters[t:] + letters[:t]


def rotate(J: Word, t: int) -> Word:
    """Cyclic shift by t: (j_1..j_k) -> (j_{1+t}, ..., j_k, j_1, ..., j_t)."""
    return Word(_rot(J.letters, t), J.N)


def precedes(J1: Word, J2: Word) -> bool:
    """True iff J1 is not larger than J2 in base-N value."""
    if len(J1) != len(J2):
        raise UsageError(f"cannot compare words of lengths {len(J1)} and {len(J2)}")
    if J1.N != J2.N:
        raise UsageError(f"cannot compare words over N={J1.N} and N={J2.N}")
    return J1.letters <= J2.letters


def least_period(letters: tuple) -> int:
    k = len(letters)
    for p in range(1, k + 1):
        if k % p == 0 and letters[p:] + letters[:p] == letters:
            return p
    return k  # pragma: no cover


def min_rotation(letters: tuple) -> tuple:
    """Lexicographically least rotation of a raw letter tuple."""
    return min(letters[t:] + letters[:t] for t in range(len(letters)))


def canonical_rotation(J: Word) -> RotationClassRep:
    return RotationClassRep(Word(min_rotation(J.letters), J.N), least_period(J.letters))


def is_minimal(J: Word) -> bool:
    return min_rotation(J.letters) == J.letters


def minimal_words(N: int, k: int) -> list[RotationClassRep]:
    """One representative per rotation class of {1..N}^k, in increasing order.

    Periodic words such as (1,1) are included.
    """
    if N < 2:
        raise UsageError(f"N must be >= 2, got {N}")
    if k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    reps = []
    for letters in product(range(1, N + 1), repeat=k):
        if min_rotation(letters) == letters:
            reps.append(RotationClassRep(Word(letters, N), least_period(letters)))
    return reps


def minimal_words_upto(N: int, L: int) -> list[RotationClassRep]:
    reps: list[RotationClassRep] = []
    for k in range(1, L + 1):
        reps.extend(minimal_words(N, k))
    return reps


def rank_letters(letters: Iterable[int], N: int) -> int:
    r = 0
    for j in letters:
        r = r * N + (j - 1)
    return r


def unrank_letters(N: int, length: int, r: int) -> tuple[int, ...]:
    out = []
    for _ in range(length):
        r, d = divmod(r, N)
        out.append(d + 1)
    return tuple(reversed(out))


def rank_word(J: Word) -> int:
    """Lexicographic rank of J among words of its length; (1,...,1) has rank 0."""
    return rank_letters(J.letters, J.N)


def unrank_word(N: int, length: int, r: int) -> Word:
    if length < 1:
        raise UsageError(f"length must be >= 1, got {length}")
    if not 0 <= r < N**length:
        raise UsageError(f"rank {r} outside [0, {N**length})")
    return Word(unrank_letters(N, length, r), N)


def all_words(N: int, length: int) -> list[tuple[int, ...]]:
    """Raw letter tuples of the given length in lexicographic order (length 0 allowed)."""
    return list(product(range(1, N + 1), repeat=length))
