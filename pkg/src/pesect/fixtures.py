"""Reference class tables for S_{3,2} and S_{2,3}.

Each row: (label, diagonal signature, c1, c2, count / (N!)^(N^(l-1)), extra)
where ``extra`` maps higher cycle indices (3 -> c3, 4 -> c4) to values
given for a few rows.
"""

from __future__ import annotations

from typing import NamedTuple


class FixtureRow(NamedTuple):
    label: str
    diagonal: tuple[int, ...]
    c1: int
    c2: int
    normalized: int
    extra: dict


def _rows(entries):
    out = []
    for label, c1, c2, norm, *extra in entries:
        diag = tuple(int(ch) for ch in label[1:label.index(")")].split(","))
        out.append(FixtureRow(label, diag, c1, c2, norm, extra[0] if extra else {}))
    return tuple(out)


E32 = _rows([
    ("(3,3,3)", 9, 18, 1),
    ("(3,2,2)", 7, 13, 27),
    ("(3,1,1)", 5, 12, 27),
    ("(3,0,0)", 3, 15, 3),
    ("(2,2,2)", 6, 9, 54),
    ("(2,2,1)", 5, 9, 162),
    ("(2,1,1)", 4, 7, 324),
    ("(2,1,0)", 3, 9, 162),
    ("(2,0,0)", 2, 9, 54),
    ("(1,1,1)a", 3, 3, 54),
    ("(1,1,1)b", 3, 6, 216),
    ("(1,1,0)", 2, 6, 324),
    ("(1,0,0)a", 1, 4, 54),
    ("(1,0,0)b", 1, 7, 162),
    ("(0,0,0)a", 0, 0, 2),
    ("(0,0,0)b", 0, 6, 54),
])

E23 = _rows([
    ("(2,2,2,2)", 8, 12, 1),
    ("(2,2,1,1)", 6, 9, 24),
    ("(2,2,0,0)", 4, 10, 6),
    ("(2,1,1,1)", 5, 6, 64),
    ("(2,1,1,0)", 4, 7, 96),
    ("(2,1,0,0)", 3, 6, 96),
    ("(2,0,0,0)a", 2, 6, 32),
    ("(2,0,0,0)b", 2, 3, 8, {3: 12}),
    ("(1,1,1,1)a", 4, 4, 96),
    ("(1,1,1,1)b", 4, 6, 48),
    ("(1,1,1,0)", 3, 4, 384),
    ("(1,1,0,0)a", 2, 7, 24),
    ("(1,1,0,0)b", 2, 4, 192),
    ("(1,1,0,0)c", 2, 5, 192),
    ("(1,1,0,0)d", 2, 2, 48),
    ("(1,1,0,0)e", 2, 3, 96, {3: 4}),
    ("(1,0,0,0)a", 1, 3, 384),
    ("(1,0,0,0)b", 1, 1, 96),
    ("(1,0,0,0)c", 1, 4, 192),
    ("(0,0,0,0)a", 0, 0, 6),
    ("(0,0,0,0)b", 0, 4, 96, {3: 0, 4: 14}),
    ("(0,0,0,0)c", 0, 4, 48, {3: 0, 4: 12}),
    ("(0,0,0,0)d", 0, 1, 192),
    ("(0,0,0,0)e", 0, 2, 96),
    ("(0,0,0,0)f", 0, 8, 3),
])

FIXTURES = {(3, 2): E32, (2, 3): E23}

# class counts of S_{N,l} up to unitary equivalence, where known
EQUIVALENCE_CLASS_COUNTS = {(2, 2): 16}
# the same for the subset of S_{3,2} whose graph has diagonal (3,3,3)
E32_333_CLASS_COUNT = 56
