"""
Bijections sigma of {1..N}^l and the permutative endomorphisms they define.

A table is stored densely by lexicographic rank: ``forward[rank(J)]`` is
``rank(sigma(J))``.  The endomorphism is

    psi_sigma(s_i) = u_sigma s_i,   u_sigma = sum_J s_{sigma(J)} s_J^*,

which expands to psi_sigma(s_i) = sum_{J'} s_{sigma(i,J')} s_{J'}^* over
all J' of length l-1.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Iterator, Sequence

from .errors import GuardError, UsageError, ValidationError
from .words import all_words, format_letters, rank_letters, unrank_letters

# largest N^l enumerated without an override, and the hard ceiling
DEFAULT_MAX_CENSUS = 9
HARD_MAX_CENSUS = 10


@dataclass(frozen=True)
class PermutationTable:
    N: int
    l: int
    forward: tuple[int, ...]
    inverse: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.N < 2:
            raise UsageError(f"N must be >= 2, got {self.N}")
        if self.l < 1:
            raise UsageError(f"l must be >= 1, got {self.l}")
        fwd = tuple(self.forward)
        m = self.N**self.l
        if len(fwd) != m:
            raise ValidationError(f"table has {len(fwd)} entries, expected {m}")
        inv = [-1] * m
        for s, t in enumerate(fwd):
            if not 0 <= t < m:
                raise ValidationError(f"rank {t} out of range for N={self.N}, l={self.l}")
            if inv[t] != -1:
                raise ValidationError(
                    "duplicate target word " + format_letters(unrank_letters(self.N, self.l, t), self.N)
                )
            inv[t] = s
        object.__setattr__(self, "forward", fwd)
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def size(self) -> int:
        return len(self.forward)

    def __call__(self, J: Sequence[int]) -> tuple[int, ...]:
        """Apply sigma to a raw letter tuple of length l."""
        if len(J) != self.l:
            raise UsageError(f"sigma acts on words of length {self.l}, got {tuple(J)}")
        return unrank_letters(self.N, self.l, self.forward[rank_letters(J, self.N)])

    def apply_inverse(self, J: Sequence[int]) -> tuple[int, ...]:
        if len(J) != self.l:
            raise UsageError(f"sigma acts on words of length {self.l}, got {tuple(J)}")
        return unrank_letters(self.N, self.l, self.inverse[rank_letters(J, self.N)])

    def items(self) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
        """(J, sigma(J)) pairs in lexicographic order of J."""
        return [
            (unrank_letters(self.N, self.l, s), unrank_letters(self.N, self.l, t))
            for s, t in enumerate(self.forward)
        ]

    def is_identity(self) -> bool:
        return all(s == t for s, t in enumerate(self.forward))


def identity(N: int, l: int) -> PermutationTable:
    return PermutationTable(N, l, tuple(range(N**l)))


def from_entries(N: int, l: int, pairs: Iterable[tuple[Sequence[int], Sequence[int]]]) -> PermutationTable:
    """Build and validate a table from explicit (J, sigma(J)) pairs."""
    m = N**l
    fwd = [-1] * m
    seen_targets: dict[int, tuple] = {}
    count = 0
    for src, tgt in pairs:
        src, tgt = tuple(src), tuple(tgt)
        for w in (src, tgt):
            if len(w) != l:
                raise ValidationError(f"word {format_letters(w, N)} has length {len(w)}, expected {l}")
            if any(not 1 <= j <= N for j in w):
                raise ValidationError(f"word {format_letters(w, N)} has a letter outside [1, {N}]")
        s, t = rank_letters(src, N), rank_letters(tgt, N)
        if fwd[s] != -1:
            raise ValidationError(f"duplicate source word {format_letters(src, N)}")
        if t in seen_targets:
            raise ValidationError(
                f"duplicate target word {format_letters(tgt, N)} "
                f"(from {format_letters(seen_targets[t], N)} and {format_letters(src, N)})"
            )
        fwd[s] = t
        seen_targets[t] = src
        count += 1
    if count != m:
        missing = [format_letters(unrank_letters(N, l, s), N) for s in range(m) if fwd[s] == -1]
        raise ValidationError(f"expected {m} pairs, got {count}; missing source words: {', '.join(missing)}")
    return PermutationTable(N, l, tuple(fwd))


def inverse(sigma: PermutationTable) -> PermutationTable:
    return PermutationTable(sigma.N, sigma.l, sigma.inverse)


def census_bound() -> int:
    """The active N^l bound: PE_MAX_CENSUS if set, else the default."""
    raw = os.environ.get("PE_MAX_CENSUS")
    if raw is None:
        return DEFAULT_MAX_CENSUS
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"PE_MAX_CENSUS must be an integer, got {raw!r}") from None


def check_enumerable(N: int, l: int, max_size: int | None = None) -> int:
    m = N**l
    bound = census_bound() if max_size is None else max_size
    if m > HARD_MAX_CENSUS:
        raise GuardError(f"N^l = {m}: enumerating {m}! tables is refused (hard limit N^l <= {HARD_MAX_CENSUS})")
    if m > bound:
        raise GuardError(
            f"N^l = {m} exceeds the enumeration bound {bound} ({math.factorial(m)} tables); "
            f"set PE_MAX_CENSUS to override"
        )
    return m


def unrank_permutation(m: int, r: int) -> tuple[int, ...]:
    """The r-th permutation of range(m) in lexicographic order."""
    items = list(range(m))
    out = []
    for i in range(m, 0, -1):
        f = math.factorial(i - 1)
        q, r = divmod(r, f)
        out.append(items.pop(q))
    return tuple(out)


def rank_permutation(p: Sequence[int]) -> int:
    items = sorted(p)
    r = 0
    for i, x in enumerate(p):
        q = items.index(x)
        r += q * math.factorial(len(p) - 1 - i)
        items.pop(q)
    return r


def _lex_blocks(m: int, start: int, stop: int) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Split the rank range [start, stop) into aligned (prefix, remaining) blocks.

    Each block is every permutation beginning with ``prefix``, in
    lexicographic order, so it can be streamed by itertools.permutations.
    """
    r = start
    while r < stop:
        # longest suffix length s such that r is aligned to s! and the block fits
        s = m
        while s > 0 and (r % math.factorial(s) or r + math.factorial(s) > stop):
            s -= 1
        p = unrank_permutation(m, r)
        yield p[: m - s], tuple(sorted(p[m - s:]))
        r += math.factorial(s)


def iter_forward(N: int, l: int, start: int = 0, stop: int | None = None,
                 max_size: int | None = None) -> Iterator[tuple[int, ...]]:
    """Raw forward tuples of all tables with rank in [start, stop), lexicographically."""
    m = check_enumerable(N, l, max_size)
    total = math.factorial(m)
    stop = total if stop is None else stop
    if not 0 <= start <= stop <= total:
        raise UsageError(f"rank range [{start}, {stop}) outside [0, {total}]")
    for prefix, rest in _lex_blocks(m, start, stop):
        if not prefix:
            yield from permutations(rest)
        else:
            for tail in permutations(rest):
                yield prefix + tail


def iter_all(N: int, l: int, start: int = 0, stop: int | None = None,
             max_size: int | None = None) -> Iterator[PermutationTable]:
    """Every sigma in S_{N,l} exactly once, in lexicographic successor order."""
    for fwd in iter_forward(N, l, start, stop, max_size):
        yield PermutationTable(N, l, fwd)


def random_table(N: int, l: int, seed) -> PermutationTable:
    fwd = list(range(N**l))
    random.Random(seed).shuffle(fwd)
    return PermutationTable(N, l, tuple(fwd))


def direct_sum(parts: Sequence[PermutationTable]) -> PermutationTable:
    """The table tau in S_{N,l+1} with psi_tau(x) = sum_i s_i psi_{sigma_i}(x) s_i^*.

    tau(j, i, J') = (i, sigma_i(j, J')) for letters j, i and |J'| = l-1.
    """
    if not parts:
        raise UsageError("direct_sum needs N parts")
    N, l = parts[0].N, parts[0].l
    if len(parts) != N:
        raise UsageError(f"direct_sum over O_{N} needs exactly {N} parts, got {len(parts)}")
    for p in parts:
        if (p.N, p.l) != (N, l):
            raise UsageError(f"mixed parts: (N, l) = ({N}, {l}) and ({p.N}, {p.l})")
    pairs = []
    for j in range(1, N + 1):
        for i in range(1, N + 1):
            for tail in all_words(N, l - 1):
                pairs.append(((j, i) + tail, (i,) + parts[i - 1]((j,) + tail)))
    return from_entries(N, l + 1, pairs)


@dataclass(frozen=True)
class EndoFormula:
    """psi_sigma(s_i) as a sum of terms s_head s_tail^*, one tuple of terms per generator."""

    N: int
    l: int
    terms: tuple[tuple[tuple[tuple[int, ...], tuple[int, ...]], ...], ...]

    def format_term(self, head, tail) -> str:
        h = format_letters(head, self.N)
        if not tail:
            return f"s_{{{h}}}"
        return f"s_{{{h},{format_letters(tail, self.N)}}}"

    def format_generator(self, i: int) -> str:
        return " + ".join(self.format_term(h, t) for h, t in self.terms[i - 1])

    def lines(self, name: str = "ψ_σ") -> list[str]:
        return [f"{name}(s_{i}) = {self.format_generator(i)}" for i in range(1, self.N + 1)]

    def __str__(self) -> str:
        return "\n".join(self.lines())


def endo_formula(sigma: PermutationTable) -> EndoFormula:
    terms = []
    for i in range(1, sigma.N + 1):
        terms.append(tuple((sigma((i,) + tail), tail) for tail in all_words(sigma.N, sigma.l - 1)))
    return EndoFormula(sigma.N, sigma.l, tuple(terms))
