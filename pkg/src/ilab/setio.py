"""Set-file formats shared by the circle and sets subcommands.

Two interchangeable on-disk representations of a subset of [1, N]:

* plain: one integer per line (comments with '#'), N supplied by the caller;
* DFSET1: a run-length bitmap with the header line "DFSET1 <N>" followed by
  one "<start> <length>" pair per line for each maximal run of consecutive
  members.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Optional, Union

MAGIC = "DFSET1"


def runs_of(members: Iterable[int]) -> list[tuple[int, int]]:
    out = []
    prev = None
    start = None
    for m in sorted(set(members)):
        if prev is None or m != prev + 1:
            if start is not None:
                out.append((start, prev - start + 1))
            start = m
        prev = m
    if start is not None:
        out.append((start, prev - start + 1))
    return out


def save_dfset(path: Union[str, Path], members: Iterable[int], N: int) -> None:
    lines = [f"{MAGIC} {N}"]
    lines += [f"{s} {l}" for s, l in runs_of(members)]
    Path(path).write_text("\n".join(lines) + "\n")


def load_set(path: Union[str, Path]) -> tuple[list[int], Optional[int]]:
    """Returns (sorted members, N or None when the plain format carries no N)."""
    text = Path(path).read_text()
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        return [], None
    if lines[0].startswith(MAGIC):
        head = lines[0].split()
        if len(head) != 2:
            raise ValueError("malformed DFSET1 header")
        N = int(head[1])
        members: list[int] = []
        for ln in lines[1:]:
            parts = ln.split()
            if len(parts) != 2:
                raise ValueError(f"malformed DFSET1 run: {ln!r}")
            start, length = int(parts[0]), int(parts[1])
            members.extend(range(start, start + length))
        return sorted(set(members)), N
    return sorted({int(ln) for ln in lines}), None
