"""Reading and writing sigma tables.

Text form::

    # optional comments
    N=3 l=2
    11 -> 23
    12 -> 31
    ...

JSON form: ``{"N": 3, "l": 2, "map": [[[1, 1], [2, 3]], ...]}``.
"""

from __future__ import annotations

import json
import re
from pathlib import Path

from .errors import ValidationError
from .perms import PermutationTable, from_entries
from .words import format_letters, parse_word

_HEADER = re.compile(r"^\s*N\s*=\s*(\d+)\s+l\s*=\s*(\d+)\s*$")


def parse_sigma_text(text: str) -> PermutationTable:
    N = l = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if N is None:
            m = _HEADER.match(line)
            if not m:
                raise ValidationError(f"line {lineno}: expected header 'N=<int> l=<int>', got {line!r}")
            N, l = int(m.group(1)), int(m.group(2))
            continue
        if "->" not in line:
            raise ValidationError(f"line {lineno}: expected '<word> -> <word>', got {line!r}")
        lhs, rhs = (part.strip() for part in line.split("->", 1))
        try:
            pairs.append((parse_word(lhs, N).letters, parse_word(rhs, N).letters))
        except ValueError as e:
            raise ValidationError(f"line {lineno}: {e}") from None
    if N is None:
        raise ValidationError("missing header 'N=<int> l=<int>'")
    return from_entries(N, l, pairs)


def parse_sigma_json(text: str) -> PermutationTable:
    try:
        obj = json.loads(text)
        N, l, pairs = int(obj["N"]), int(obj["l"]), obj["map"]
    except (ValueError, KeyError, TypeError) as e:
        raise ValidationError(f"malformed sigma JSON: {e}") from None
    return from_entries(N, l, [(tuple(a), tuple(b)) for a, b in pairs])


def loads_sigma(text: str) -> PermutationTable:
    if text.lstrip().startswith("{"):
        return parse_sigma_json(text)
    return parse_sigma_text(text)


def load_sigma(path) -> PermutationTable:
    try:
        text = Path(path).read_text()
    except OSError as e:
        raise ValidationError(f"cannot read sigma file {path}: {e}") from None
    try:
        return loads_sigma(text)
    except ValidationError as e:
        raise ValidationError(f"{path}: {e}") from None


def dumps_sigma_text(sigma: PermutationTable) -> str:
    lines = [f"N={sigma.N} l={sigma.l}"]
    for src, tgt in sigma.items():
        lines.append(f"{format_letters(src, sigma.N)} -> {format_letters(tgt, sigma.N)}")
    return "\n".join(lines) + "\n"


def dumps_sigma_json(sigma: PermutationTable) -> str:
    return json.dumps({"N": sigma.N, "l": sigma.l, "map": [[list(a), list(b)] for a, b in sigma.items()]})
