"""
The semi-Mealy machine of a permutation table and branching laws.

For sigma in S_{N,l} the machine has one state q_K per word K of length
l-1.  Reading letter a_i in state q_K, write (j, K') = sigma^{-1}(K, i);
the machine emits b_j and moves to q_{K'}.  For l = 1 there is a single
state q_0 and the output is b_{sigma^{-1}(i)}.

The branching law of P(J) under psi_sigma is read off the cycles of the
map q -> delta(q, x) with x = a_J: each cycle through p with return
time r contributes the summand whose word is the output of x^r from p.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from typing import Sequence, Union

from .errors import UsageError
from .perms import PermutationTable
from .words import (
    RotationClassRep,
    Word,
    as_word,
    canonical_rotation,
    format_letters,
    minimal_words_upto,
    unrank_letters,
)


@dataclass(frozen=True)
class MealyMachine:
    N: int
    l: int
    delta: tuple[tuple[int, ...], ...]   # delta[q][i-1] -> state index
    output: tuple[tuple[int, ...], ...]  # output[q][i-1] -> letter in [1, N]

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def state_word(self, q: int) -> tuple[int, ...]:
        return unrank_letters(self.N, self.l - 1, q)

    def state_name(self, q: int) -> str:
        if self.l == 1:
            return "q0"
        return "q" + format_letters(self.state_word(q), self.N).replace(",", "_")

    def step(self, q: int, i: int) -> tuple[int, int]:
        return self.delta[q][i - 1], self.output[q][i - 1]

    def transition_counts(self) -> list[list[int]]:
        """counts[q][q'] = number of input letters taking q to q'."""
        n = self.n_states
        counts = [[0] * n for _ in range(n)]
        for q in range(n):
            for q2 in self.delta[q]:
                counts[q][q2] += 1
        return counts

    def in_degrees(self) -> list[int]:
        deg = [0] * self.n_states
        for row in self.delta:
            for q2 in row:
                deg[q2] += 1
        return deg


def build_machine(sigma: PermutationTable) -> MealyMachine:
    N = sigma.N
    n = N ** (sigma.l - 1)
    inv = sigma.inverse
    delta, output = [], []
    for q in range(n):
        d_row, o_row = [], []
        for i in range(N):
            u = inv[q * N + i]
            o_row.append(u // n + 1)
            d_row.append(u % n)
        delta.append(tuple(d_row))
        output.append(tuple(o_row))
    return MealyMachine(N, sigma.l, tuple(delta), tuple(output))


def _check_state(machine: MealyMachine, q: int):
    if not 0 <= q < machine.n_states:
        raise UsageError(f"state {q} outside [0, {machine.n_states})")


def run(machine: MealyMachine, start: int, x) -> tuple[int, Word]:
    """Feed the input word x from state ``start``; return (end state, output word)."""
    _check_state(machine, start)
    x = as_word(x, machine.N)
    q, out = start, []
    delta, output = machine.delta, machine.output
    for i in x.letters:
        out.append(output[q][i - 1])
        q = delta[q][i - 1]
    return q, Word(tuple(out), machine.N)


@dataclass(frozen=True)
class Orbit:
    representative: int
    return_time: int
    states: tuple[int, ...]  # representative, T(rep), T^2(rep), ...


@dataclass(frozen=True)
class CycleDecomposition:
    input_word: Word
    orbits: tuple[Orbit, ...]

    @property
    def cyclic_states(self) -> int:
        return sum(o.return_time for o in self.orbits)


def cycle_decomposition(machine: MealyMachine, J) -> CycleDecomposition:
    """Cycles of the self-map T(q) = delta(q, a_J) on the state set."""
    J = as_word(J, machine.N)
    n = machine.n_states
    T = [run(machine, q, J)[0] for q in range(n)]

    # 0 = unvisited, 1 = on current path, 2 = done
    color = [0] * n
    orbits = []
    for q0 in range(n):
        if color[q0]:
            continue
        path, q = [], q0
        while color[q] == 0:
            color[q] = 1
            path.append(q)
            q = T[q]
        if color[q] == 1:
            cyc = path[path.index(q):]
            rep = min(cyc)
            k = cyc.index(rep)
            cyc = cyc[k:] + cyc[:k]
            orbits.append(Orbit(rep, len(cyc), tuple(cyc)))
        for p in path:
            color[p] = 2
    orbits.sort(key=lambda o: o.representative)
    return CycleDecomposition(J, tuple(orbits))


def _summand_key(rep: RotationClassRep):
    return (len(rep), rep.letters)


@dataclass(frozen=True)
class BranchingLaw:
    input_word: Word
    input: RotationClassRep
    summands: tuple[RotationClassRep, ...]
    sigma: PermutationTable | None = field(default=None, compare=False, repr=False)

    @property
    def multiset(self) -> tuple[tuple[int, ...], ...]:
        return tuple(s.letters for s in self.summands)

    @property
    def periodic_input(self) -> bool:
        return self.input.is_periodic

    def __str__(self) -> str:
        rhs = " ⊕ ".join(f"P({s})" for s in self.summands)
        return f"P({self.input_word}) ∘ ψ_σ = {rhs}"


def branching(source: Union[PermutationTable, MealyMachine], J) -> BranchingLaw:
    """Decompose P(J) composed with psi_sigma into permutative summands."""
    if isinstance(source, PermutationTable):
        machine, sigma = build_machine(source), source
    else:
        machine, sigma = source, None
    J = as_word(J, machine.N)
    decomp = cycle_decomposition(machine, J)
    summands = []
    for orbit in decomp.orbits:
        _, out = run(machine, orbit.representative, Word(J.letters * orbit.return_time, J.N))
        summands.append(canonical_rotation(out))
    summands.sort(key=_summand_key)
    return BranchingLaw(J, canonical_rotation(J), tuple(summands), sigma)


@dataclass(frozen=True)
class SectorSignature:
    """Branching laws of every minimal input of length <= depth."""

    N: int
    depth: int
    laws: tuple[tuple[tuple[int, ...], tuple[tuple[int, ...], ...]], ...]

    def as_dict(self) -> dict:
        return dict(self.laws)

    def serialize(self) -> str:
        parts = []
        for key, summands in self.laws:
            rhs = "+".join(format_letters(s, self.N) for s in summands)
            parts.append(f"{format_letters(key, self.N)}:{rhs}")
        return ";".join(parts)

    def digest(self) -> str:
        return hashlib.sha256(self.serialize().encode()).hexdigest()[:16]

    def first_difference(self, other: "SectorSignature"):
        """The first input whose branching differs, or None."""
        theirs = other.as_dict()
        for key, summands in self.laws:
            if theirs.get(key) != summands:
                return key
        return None


def signature(source: Union[PermutationTable, MealyMachine], depth: int) -> SectorSignature:
    if depth < 1:
        raise UsageError(f"signature depth must be >= 1, got {depth}")
    machine = build_machine(source) if isinstance(source, PermutationTable) else source
    laws = []
    for rep in minimal_words_upto(machine.N, depth):
        laws.append((rep.letters, branching(machine, rep.word).multiset))
    return SectorSignature(machine.N, depth, tuple(laws))

