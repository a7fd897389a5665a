"""
Reading and writing the .grp / .sub text formats

.grp:  ``degree n`` on the first content line, then one ``gen (..)(..)``
       per generator in 1-based disjoint-cycle notation (``gen ()`` is the
       identity). Blank lines and ``#`` comments are ignored.
.sub:  ``gen`` lines only; the degree comes from the ambient group.
Inline subgroup strings separate generators with commas outside brackets.
"""

import re
from pathlib import Path
from typing import List, Optional, Union

from src.core.exceptions import GroupFormatError, PermutationError
from src.perm.group import GroupHandle, SubgroupRef, generate_group
from src.perm.permutation import Permutation

_CYCLE = re.compile(r"\(([^()]*)\)")
_CYCLES_ONLY = re.compile(r"^(\s*\([^()]*\)\s*)+$")


def parse_permutation(text: str, degree: int) -> Permutation:
    """Parse ``(1 2 3)(4 5)`` (points separated by blanks or commas)"""
    text = text.strip()
    if not _CYCLES_ONLY.match(text):
        raise GroupFormatError(f"not in cycle notation: {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        tokens = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        try:
            cycles.append([int(t) for t in tokens])
        except ValueError:
            raise GroupFormatError(f"non-integer point in cycle ({body})") from None
    try:
        return Permutation.from_cycles([c for c in cycles if c], degree)
    except PermutationError as e:
        raise GroupFormatError(str(e)) from e


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _parse_gen_line(number: int, line: str, degree: int) -> Permutation:
    keyword, *rest = line.split(None, 1)
    rest = rest[0] if rest else ""
    if keyword != "gen":
        raise GroupFormatError(f"line {number}: expected 'gen', got {keyword!r}")
    try:
        return parse_permutation(rest, degree)
    except GroupFormatError as e:
        raise GroupFormatError(f"line {number}: {e}") from e


def parse_grp(text: str, name: Optional[str] = None) -> GroupHandle:
    degree = None
    gens: List[Permutation] = []
    for number, line in _content_lines(text):
        if degree is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "degree":
                raise GroupFormatError(f"line {number}: expected 'degree n'")
            try:
                degree = int(parts[1])
            except ValueError:
                raise GroupFormatError(f"line {number}: degree is not an integer") from None
            if degree < 1:
                raise GroupFormatError(f"line {number}: degree must be positive")
            continue
        gens.append(_parse_gen_line(number, line, degree))
    if degree is None:
        raise GroupFormatError("missing 'degree' line")
    return generate_group(degree, gens, name=name)


def load_grp(path: Union[str, Path]) -> GroupHandle:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise GroupFormatError(f"cannot read {path}: {e}") from e
    return parse_grp(text, name=path.stem)


def dump_group(G: GroupHandle) -> str:
    lines = [f"# {G.name}, order {G.order}", f"degree {G.degree}"]
    for g in G.generators:
        lines.append(f"gen {g}")
    return "\n".join(lines) + "\n"


def write_grp(G: GroupHandle, path: Union[str, Path]) -> None:
    Path(path).write_text(dump_group(G), encoding="utf-8")


def split_generators(text: str) -> List[str]:
    """Split an inline list on commas that sit outside brackets"""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p.strip() for p in parts if p.strip()]


def parse_subgroup(G: GroupHandle, text: str) -> SubgroupRef:
    """Inline generator list such as ``"(1 2 3),(4 5)"``; empty text gives the trivial subgroup"""
    gens = [parse_permutation(s, G.degree) for s in split_generators(text)]
    return G.subgroup(gens)


def parse_sub(G: GroupHandle, text: str) -> SubgroupRef:
    gens = [_parse_gen_line(number, line, G.degree) for number, line in _content_lines(text)]
    return G.subgroup(gens)


def load_sub(G: GroupHandle, path: Union[str, Path]) -> SubgroupRef:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise GroupFormatError(f"cannot read {path}: {e}") from e
    return parse_sub(G, text)
