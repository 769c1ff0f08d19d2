"""
Adjacency matrices of Mealy diagrams and their conjugation invariants.

A_sigma has entry a_{JK} = #{(n, m) : sigma(n, K) = (J, m)}, which is the
number of machine edges q_J -> q_K.  The k-th cycle index counts closed
k-walks (parallel edges distinguished, vertex repeats allowed) up to
cyclic rotation; by Burnside over Z_k,

    c_k = (1/k) * sum_{d | k} phi(k/d) * Tr(A^d).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence, Union

from .errors import GuardError, UsageError
from .mealy import MealyMachine
from .perms import PermutationTable

MAX_CANONICAL_DIM = 8
ORACLE_MAX_K = 8
ORACLE_MAX_DIM = 6

Rows = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class AdjacencyMatrix:
    rows: Rows
    degree: int

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise UsageError("adjacency matrix must be square")
        if any(x < 0 for r in rows for x in r):
            raise UsageError("adjacency entries must be nonnegative")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], degree: int | None = None) -> "AdjacencyMatrix":
        rows = tuple(tuple(r) for r in rows)
        if degree is None:
            degree = sum(rows[0]) if rows else 0
        return cls(rows, degree)

    @property
    def n(self) -> int:
        return len(self.rows)

    def is_regular(self) -> bool:
        d = self.degree
        return all(sum(r) == d for r in self.rows) and all(
            sum(r[j] for r in self.rows) == d for j in range(self.n)
        )

    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.rows[i][i] for i in range(self.n))

    def diagonal_signature(self) -> tuple[int, ...]:
        return tuple(sorted(self.diagonal(), reverse=True))

    def conjugate(self, p: Sequence[int]) -> "AdjacencyMatrix":
        """The matrix B with B[i][j] = A[p[i]][p[j]] (relabel vertex p[i] as i)."""
        return AdjacencyMatrix(tuple(tuple(self.rows[pi][pj] for pj in p) for pi in p), self.degree)

    def to_json(self, N: int | None = None) -> str:
        return json.dumps({"n": self.n, "N": self.degree if N is None else N, "rows": [list(r) for r in self.rows]})


def adjacency(sigma: PermutationTable) -> AdjacencyMatrix:
    """A_sigma straight from the defining count over sigma's entries."""
    N = sigma.N
    n = N ** (sigma.l - 1)
    a = [[0] * n for _ in range(n)]
    for s, t in enumerate(sigma.forward):
        # source (n, K): K = last l-1 letters; target (J, m): J = first l-1
        K, J = s % n, t // N
        a[J][K] += 1
    return AdjacencyMatrix(tuple(tuple(r) for r in a), N)


def machine_adjacency(machine: MealyMachine) -> AdjacencyMatrix:
    return AdjacencyMatrix(tuple(tuple(r) for r in machine.transition_counts()), machine.N)


def _matmul(X: Rows, Y: Rows) -> Rows:
    cols = list(zip(*Y))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in cols) for row in X)


def trace_powers(A: AdjacencyMatrix, k: int) -> list[int]:
    """[Tr A^1, ..., Tr A^k]."""
    out, P = [], A.rows
    for d in range(1, k + 1):
        if d > 1:
            P = _matmul(P, A.rows)
        out.append(sum(P[i][i] for i in range(A.n)))
    return out


def _phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def cycle_index(A: AdjacencyMatrix, k: int) -> int:
    if k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    tr = trace_powers(A, k)
    total = sum(_phi(k // d) * tr[d - 1] for d in range(1, k + 1) if k % d == 0)
    assert total % k == 0
    return total // k


def cycle_indices(A: AdjacencyMatrix, max_k: int = 4) -> tuple[int, ...]:
    return tuple(cycle_index(A, k) for k in range(1, max_k + 1))


def cycle_index_oracle(A: AdjacencyMatrix, k: int) -> int:
    """Count rotation classes of closed k-walks by listing every one of them."""
    if k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    if k > ORACLE_MAX_K or A.n > ORACLE_MAX_DIM:
        raise GuardError(f"oracle limited to k <= {ORACLE_MAX_K}, n <= {ORACLE_MAX_DIM}")
    edges = []  # (tail, head), one entry per parallel edge
    for u, row in enumerate(A.rows):
        for v, mult in enumerate(row):
            edges.extend([(u, v)] * mult)
    out_edges = [[e for e, (u, _) in enumerate(edges) if u == v] for v in range(A.n)]

    classes = set()

    def extend(walk):
        if len(walk) == k:
            if edges[walk[-1]][1] == edges[walk[0]][0]:
                w = tuple(walk)
                classes.add(min(w[t:] + w[:t] for t in range(k)))
            return
        for e in out_edges[edges[walk[-1]][1]]:
            walk.append(e)
            extend(walk)
            walk.pop()

    for e in range(len(edges)):
        extend([e])
    return len(classes)


@dataclass(frozen=True)
class GraphClass:
    canonical: AdjacencyMatrix
    cycle_indices: tuple[int, ...]
    diagonal_signature: tuple[int, ...]

    def sort_key(self):
        return (self.diagonal_signature, self.cycle_indices, self.canonical.rows)


@lru_cache(maxsize=None)
def _canonical_rows(rows: Rows) -> tuple[Rows, tuple[int, ...]]:
    n = len(rows)
    best, best_p = None, None
    for p in permutations(range(n)):
        cand = tuple(tuple(rows[pi][pj] for pj in p) for pi in p)
        if best is None or cand < best:
            best, best_p = cand, p
    return best, best_p


def canonical_form(A: AdjacencyMatrix, max_k: int = 4) -> GraphClass:
    """The row-major least of all simultaneous row/column permutations of A."""
    if A.n > MAX_CANONICAL_DIM:
        raise GuardError(f"canonical form limited to n <= {MAX_CANONICAL_DIM}, got {A.n}")
    rows, _ = _canonical_rows(A.rows)
    return GraphClass(AdjacencyMatrix(rows, A.degree), cycle_indices(A, max_k), A.diagonal_signature())


def is_isomorphic(A: AdjacencyMatrix, B: AdjacencyMatrix):
    """(True, p) with B = A.conjugate(p) if the graphs are isomorphic, else (False, None)."""
    if A.n != B.n:
        raise UsageError(f"dimension mismatch: {A.n} vs {B.n}")
    if A.diagonal_signature() != B.diagonal_signature() or cycle_indices(A) != cycle_indices(B):
        return False, None
    ca, pa = _canonical_rows(A.rows)
    cb, pb = _canonical_rows(B.rows)
    if ca != cb:
        return False, None
    # canonical = A.conjugate(pa) = B.conjugate(pb)  =>  B = A.conjugate(pa o pb^-1)
    inv_pb = [0] * len(pb)
    for i, x in enumerate(pb):
        inv_pb[x] = i
    witness = tuple(pa[inv_pb[i]] for i in range(len(pb)))
    return True, witness


def to_dot(obj: Union[MealyMachine, AdjacencyMatrix], name: str = "g") -> str:
    """Graphviz text for a machine (labeled edges) or a matrix (plain multi-edges)."""
    lines = [f"digraph {name} {{"]
    if isinstance(obj, MealyMachine):
        for q in range(obj.n_states):
            lines.append(f'  {obj.state_name(q)};')
        for q in range(obj.n_states):
            for i in range(1, obj.N + 1):
                q2, b = obj.step(q, i)
                lines.append(f'  {obj.state_name(q)} -> {obj.state_name(q2)} [label="a_{i}/b_{b}"];')
    else:
        for v in range(obj.n):
            lines.append(f"  v{v + 1};")
        for u, row in enumerate(obj.rows):
            for v, mult in enumerate(row):
                for _ in range(mult):
                    lines.append(f"  v{u + 1} -> v{v + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"
