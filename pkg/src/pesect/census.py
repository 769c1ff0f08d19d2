"""
Exhaustive classification of S_{N,l} by graph class and by branching signature.

The hot loop never builds matrices: every cell (J, K) of A_sigma gets a
digit position in base N+1 (entries are at most N), so the whole matrix
is the integer sum of one precomputed weight per (source, target) pair.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from operator import getitem
from typing import Iterable, Sequence

from .errors import GuardError, UsageError
from .fixtures import FIXTURES, FixtureRow
from .graphs import AdjacencyMatrix, GraphClass, adjacency, canonical_form
from .mealy import SectorSignature, signature
from .perms import PermutationTable, check_enumerable, iter_forward, rank_permutation

MAX_K = 4


def _weights(N: int, l: int) -> list[list[int]]:
    n = N ** (l - 1)
    m = N**l
    base = N + 1
    return [[base ** ((t // N) * n + s % n) for t in range(m)] for s in range(m)]


def decode_key(key: int, N: int, l: int) -> AdjacencyMatrix:
    n = N ** (l - 1)
    base = N + 1
    flat = []
    for _ in range(n * n):
        key, d = divmod(key, base)
        flat.append(d)
    return AdjacencyMatrix(tuple(tuple(flat[J * n:(J + 1) * n]) for J in range(n)), N)


def matrix_key(sigma: PermutationTable) -> int:
    return sum(map(getitem, _weights(sigma.N, sigma.l), sigma.forward))


def _count_range(args) -> tuple[dict, dict]:
    """Worker: raw-matrix counts (and first rank seen) for ranks [start, stop)."""
    N, l, start, stop, max_size = args
    W = _weights(N, l)
    counts: dict[int, int] = {}
    first: dict[int, int] = {}
    rank = start
    for fwd in iter_forward(N, l, start, stop, max_size):
        key = sum(map(getitem, W, fwd))
        c = counts.get(key)
        if c is None:
            counts[key] = 1
            first[key] = rank
        else:
            counts[key] = c + 1
        rank += 1
    return counts, first


def _split(total: int, parts: int) -> list[tuple[int, int]]:
    step = -(-total // parts)
    return [(a, min(a + step, total)) for a in range(0, total, step)]


def count_matrices(N: int, l: int, jobs: int = 1, max_size: int | None = None) -> tuple[dict, dict]:
    """Merged raw-matrix counts over all of S_{N,l}; identical for any ``jobs``."""
    m = check_enumerable(N, l, max_size)
    total = math.factorial(m)
    if jobs <= 1:
        return _count_range((N, l, 0, total, max_size))
    import multiprocessing

    ranges = _split(total, jobs * 4)
    with multiprocessing.Pool(jobs) as pool:
        partials = pool.map(_count_range, [(N, l, a, b, max_size) for a, b in ranges])
    counts: dict[int, int] = {}
    first: dict[int, int] = {}
    for part_counts, part_first in partials:  # ranges are in increasing order
        for key, c in part_counts.items():
            counts[key] = counts.get(key, 0) + c
            if key not in first:
                first[key] = part_first[key]
    return counts, first


@dataclass(frozen=True)
class CensusRow:
    class_id: int
    graph_class: GraphClass
    count: int
    normalized: int
    example_rank: int
    label: str = ""

    @property
    def cycle_indices(self) -> tuple[int, ...]:
        return self.graph_class.cycle_indices

    @property
    def diagonal_signature(self) -> tuple[int, ...]:
        return self.graph_class.diagonal_signature


@dataclass(frozen=True)
class CensusTable:
    N: int
    l: int
    rows: tuple[CensusRow, ...]
    total: int

    @property
    def divisor(self) -> int:
        return math.factorial(self.N) ** (self.N ** (self.l - 1))

    def row_by_label(self, label: str) -> CensusRow:
        for row in self.rows:
            if row.label == label:
                return row
        raise UsageError(f"no class labelled {label!r} in census ({self.N}, {self.l})")


def _label_rows(N: int, l: int, classes: list[tuple[GraphClass, int]]) -> list[str]:
    fixture = FIXTURES.get((N, l))
    labels = [""] * len(classes)
    if fixture is None:
        return labels
    for fx in fixture:
        hits = [i for i, (gc, _) in enumerate(classes) if _fixture_matches(fx, gc)]
        if len(hits) == 1:
            labels[hits[0]] = fx.label
    return labels


def _fixture_matches(fx: FixtureRow, gc: GraphClass) -> bool:
    c = gc.cycle_indices
    if (gc.diagonal_signature, c[0], c[1]) != (fx.diagonal, fx.c1, fx.c2):
        return False
    return all(c[k - 1] == v for k, v in fx.extra.items())


def run_census(N: int, l: int, jobs: int = 1, max_size: int | None = None) -> CensusTable:
    """Group every sigma in S_{N,l} by the isomorphism class of its Mealy diagram."""
    counts, first = count_matrices(N, l, jobs, max_size)
    merged: dict = {}
    for key in sorted(counts):
        gc = canonical_form(decode_key(key, N, l), MAX_K)
        entry = merged.setdefault(gc.canonical.rows, [gc, 0, first[key]])
        entry[1] += counts[key]
        entry[2] = min(entry[2], first[key])
    ordered = sorted(
        merged.values(),
        key=lambda e: (-e[0].cycle_indices[0], -e[0].cycle_indices[1], e[0].canonical.rows),
    )
    divisor = math.factorial(N) ** (N ** (l - 1))
    labels = _label_rows(N, l, [(e[0], e[1]) for e in ordered])
    rows = []
    for idx, ((gc, count, ex), label) in enumerate(zip(ordered, labels), 1):
        if count % divisor:
            raise AssertionError(f"class count {count} not divisible by {divisor}")
        rows.append(CensusRow(idx, gc, count, count // divisor, ex, label))
    return CensusTable(N, l, tuple(rows), sum(counts.values()))


def _fmt_tuple(t) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


def table_to_csv(table: CensusTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["class_id", "diagonal_signature", "c1", "c2", "c3", "c4", "count", "count_normalized"])
    for row in table.rows:
        w.writerow([row.class_id, _fmt_tuple(row.diagonal_signature), *row.cycle_indices[:4],
                    row.count, row.normalized])
    return buf.getvalue()


def table_to_json(table: CensusTable) -> str:
    return json.dumps({
        "N": table.N,
        "l": table.l,
        "total": table.total,
        "divisor": table.divisor,
        "rows": [
            {
                "class_id": r.class_id,
                "label": r.label,
                "diagonal_signature": list(r.diagonal_signature),
                "c1": r.cycle_indices[0], "c2": r.cycle_indices[1],
                "c3": r.cycle_indices[2], "c4": r.cycle_indices[3],
                "count": r.count,
                "count_normalized": r.normalized,
                "canonical": [list(x) for x in r.graph_class.canonical.rows],
            }
            for r in table.rows
        ],
    }, indent=2) + "\n"


def format_table(table: CensusTable) -> str:
    head = f"{'id':>3}  {'label':<12} {'c1':>3} {'c2':>3} {'c3':>4} {'c4':>4} {'count':>7} {'/' + str(table.divisor):>7}"
    lines = [head]
    for r in table.rows:
        c = r.cycle_indices
        label = r.label or _fmt_tuple(r.diagonal_signature)
        lines.append(f"{r.class_id:>3}  {label:<12} {c[0]:>3} {c[1]:>3} {c[2]:>4} {c[3]:>4} {r.count:>7} {r.normalized:>7}")
    lines.append(f"total {table.total} = {table.N ** table.l}!  ({len(table.rows)} classes)")
    return "\n".join(lines)


@dataclass
class FixtureReport:
    N: int
    l: int
    results: list = field(default_factory=list)  # (label, expected, got, ok)
    unmatched_classes: list = field(default_factory=list)
    total_ok: bool = True

    @property
    def matched(self) -> int:
        return sum(1 for r in self.results if r[3])

    @property
    def ok(self) -> bool:
        return self.matched == len(self.results) and not self.unmatched_classes and self.total_ok

    def lines(self) -> list[str]:
        out = []
        for label, expected, got, ok in self.results:
            out.append(f"{'ok  ' if ok else 'FAIL'} {label:<12} expected {expected}  got {got}")
        for cid in self.unmatched_classes:
            out.append(f"FAIL class {cid} has no reference row")
        if not self.total_ok:
            out.append("FAIL total does not equal (N^l)!")
        out.append(f"{self.matched}/{len(self.results)} rows match reference table E({self.N},{self.l})")
        return out


def verify_against_fixture(table: CensusTable, fixture: Sequence[FixtureRow] | None = None) -> FixtureReport | None:
    """Row-by-row comparison with a reference table; None if there is none for (N, l)."""
    if fixture is None:
        fixture = FIXTURES.get((table.N, table.l))
        if fixture is None:
            return None
    report = FixtureReport(table.N, table.l)
    used = set()
    for fx in fixture:
        expected = (fx.diagonal, fx.c1, fx.c2, fx.normalized, dict(fx.extra))
        hits = [r for r in table.rows
                if (r.diagonal_signature, r.cycle_indices[0], r.cycle_indices[1]) == (fx.diagonal, fx.c1, fx.c2)
                and r.class_id not in used]
        if len(hits) > 1:
            hits = [r for r in hits if all(r.cycle_indices[k - 1] == v for k, v in fx.extra.items())] or hits
        if len(hits) != 1:
            report.results.append((fx.label, expected, f"{len(hits)} candidate classes", False))
            continue
        r = hits[0]
        used.add(r.class_id)
        got = (r.diagonal_signature, r.cycle_indices[0], r.cycle_indices[1], r.normalized,
               {k: r.cycle_indices[k - 1] for k in fx.extra})
        report.results.append((fx.label, expected, got, got == expected))
    report.unmatched_classes = [r.class_id for r in table.rows if r.class_id not in used]
    report.total_ok = table.total == math.factorial(table.N**table.l)
    return report


@dataclass
class CompletenessReport:
    N: int
    l: int
    n_classes: int
    collisions: dict  # prefix length p -> {(c1..cp): [class ids]} with >1 member
    minimal_complete_prefix: int | None

    def lines(self) -> list[str]:
        names = ["c1", "c2", "c3", "c4"]
        out = [f"{self.n_classes} graph classes for (N, l) = ({self.N}, {self.l})"]
        for p in sorted(self.collisions):
            inv = "(" + ",".join(names[:p]) + ")"
            col = self.collisions[p]
            if col:
                shown = ", ".join(f"{_fmt_tuple(k)} x{len(v)}" for k, v in sorted(col.items()))
                out.append(f"{inv}: {len(col)} collisions: {shown}")
            else:
                out.append(f"{inv}: complete")
        if self.minimal_complete_prefix is None:
            out.append("(c1..c4) does not separate all classes")
        return out


def completeness_check(table: CensusTable, max_k: int = MAX_K) -> CompletenessReport:
    """Which prefixes (c1..cp) of the cycle indices separate all graph classes."""
    collisions = {}
    minimal = None
    for p in range(1, max_k + 1):
        groups: dict = {}
        for r in table.rows:
            groups.setdefault(r.cycle_indices[:p], []).append(r.class_id)
        collisions[p] = {k: v for k, v in groups.items() if len(v) > 1}
        if minimal is None and not collisions[p]:
            minimal = p
    return CompletenessReport(table.N, table.l, len(table.rows), collisions, minimal)


@dataclass(frozen=True)
class SignatureBlock:
    digest: str
    members: tuple[int, ...]  # lexicographic ranks of the sigmas
    signature: SectorSignature

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class SignaturePartition:
    N: int
    l: int
    depth: int
    blocks: tuple[SignatureBlock, ...]

    @property
    def total(self) -> int:
        return sum(b.size for b in self.blocks)


UNFILTERED_MAX = 4
MAX_SIGNATURE_WORK = 5 * 10**7


def _signature_work(N: int, l: int, depth: int, n_sigma: int) -> int:
    from .words import minimal_words_upto

    per_sigma = sum(len(rep) for rep in minimal_words_upto(N, depth)) * N ** (l - 1) * N ** (l - 1)
    return n_sigma * per_sigma


def partition_by_signature(
    N: int,
    l: int,
    depth: int,
    members: Iterable[PermutationTable] | None = None,
    graph_class: AdjacencyMatrix | None = None,
    force: bool = False,
) -> SignaturePartition:
    """Group sigmas by their branching signature to the given depth.

    With neither ``members`` nor ``graph_class`` every sigma in S_{N,l} is
    used, which is only allowed for N^l <= 4 unless ``force`` is set.
    """
    if members is not None:
        tables = [(rank_permutation(s.forward), s) for s in members]
        for _, s in tables:
            if (s.N, s.l) != (N, l):
                raise UsageError(f"member table has (N, l) = ({s.N}, {s.l}), expected ({N}, {l})")
    else:
        m = check_enumerable(N, l)
        if graph_class is None and m > UNFILTERED_MAX and not force:
            est = _signature_work(N, l, depth, math.factorial(m))
            raise GuardError(
                f"unfiltered signature partition of S_{{{N},{l}}} at depth {depth} needs ~{est:.2e} steps; "
                f"restrict to a graph class or force it"
            )
        tables = []
        if graph_class is None:
            for rank, fwd in enumerate(iter_forward(N, l)):
                tables.append((rank, PermutationTable(N, l, fwd)))
        else:
            target = canonical_form(graph_class).canonical.rows
            W = _weights(N, l)
            verdict: dict[int, bool] = {}
            for rank, fwd in enumerate(iter_forward(N, l)):
                key = sum(map(getitem, W, fwd))
                hit = verdict.get(key)
                if hit is None:
                    hit = verdict[key] = canonical_form(decode_key(key, N, l)).canonical.rows == target
                if hit:
                    tables.append((rank, PermutationTable(N, l, fwd)))
    if not force:
        est = _signature_work(N, l, depth, len(tables))
        if est > MAX_SIGNATURE_WORK:
            raise GuardError(f"signature partition needs ~{est:.2e} steps (limit {MAX_SIGNATURE_WORK:.0e})")

    groups: dict = {}
    for rank, sigma in sorted(tables, key=lambda x: x[0]):
        sig = signature(sigma, depth)
        groups.setdefault(sig.laws, (sig, []))[1].append(rank)
    blocks = [SignatureBlock(sig.digest(), tuple(ranks), sig) for sig, ranks in groups.values()]
    if len({b.digest for b in blocks}) != len(blocks):
        raise AssertionError("signature digest collision between distinct signatures")
    return SignaturePartition(N, l, depth, tuple(blocks))
