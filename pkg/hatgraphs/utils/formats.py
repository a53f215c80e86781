"""
Text formats read and written by the command line.

  .grp   ``degree d`` then one generator per line, in cycle notation or as
         ``images: i1 ... id``
  .pres  ``gens n`` then one relator per line, e.g. ``a1 a6 a1 a6 a3'``
  .ccs   a concentric witness: ``degree``, ``n``, the generators, then the
         shift map as ``x -> y`` lines over canonical element indices of B
  .wri   a wreath instance: ``group`` (path to a .grp file), ``a``, one
         ``h`` line per h_i and ``m``
  .gph   ``vertices n`` then one 1-based ``u v`` edge per line

``#`` starts a comment everywhere. Writers emit the canonical form, so
writing what was read reproduces the written bytes.
"""
from __future__ import annotations

import re
from collections.abc import Iterator, Sequence
from pathlib import Path
from typing import NamedTuple

from pydantic import ValidationError

from hatgraphs.core.concentric import ConcentricSequence, check_concentric
from hatgraphs.core.graphs import Graph
from hatgraphs.core.groups import PermutationGroup
from hatgraphs.core.permutations import Permutation
from hatgraphs.core.presentations import FinitePresentation, Word
from hatgraphs.exceptions import FormatError, HatError

_CYCLES = re.compile(r"^(\(\s*\d*(?:\s+\d+)*\s*\))+$")
_CYCLE = re.compile(r"\(([^()]*)\)")
_LETTER = re.compile(r"^a(\d+)('?)$")


def _lines(text: str) -> Iterator[tuple[int, str]]:
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield line_no, line


def _header(lines: Iterator[tuple[int, str]], keyword: str, path: str | None) -> int:
    try:
        line_no, line = next(lines)
    except StopIteration:
        raise FormatError(f"missing '{keyword}' line", path) from None
    parts = line.split()
    if len(parts) != 2 or parts[0] != keyword or not parts[1].isdigit():
        raise FormatError(f"expected '{keyword} <int>', got {line!r}", path, line_no)
    return int(parts[1])


def parse_permutation(text: str, degree: int, path: str | None = None, line_no: int | None = None) -> Permutation:
    text = text.strip()
    try:
        if text.startswith("images:"):
            images = [int(token) for token in text[len("images:") :].split()]
            if len(images) != degree:
                raise FormatError(f"{len(images)} images for degree {degree}", path, line_no)
            return Permutation.from_images(images)
        compact = re.sub(r"\s+", " ", text)
        if not _CYCLES.match(compact.replace(") (", ")(")):
            raise FormatError(f"not a permutation: {text!r}", path, line_no)
        cycles = [tuple(int(p) for p in body.split()) for body in _CYCLE.findall(compact)]
        return Permutation.from_cycles([c for c in cycles if c], degree)
    except (HatError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc), path, line_no) from exc


# Groups


def parse_group(text: str, path: str | None = None) -> PermutationGroup:
    lines = _lines(text)
    degree = _header(lines, "degree", path)
    if degree < 1:
        raise FormatError("degree must be positive", path)
    generators = [parse_permutation(line, degree, path, line_no) for line_no, line in lines]
    return PermutationGroup(generators, degree)


def write_group(generators: Sequence[Permutation], degree: int) -> str:
    return f"degree {degree}\n" + "".join(g.cycle_string() + "\n" for g in generators)


def read_group(path: Path) -> PermutationGroup:
    return parse_group(path.read_text(), str(path))


# Presentations


def parse_word(text: str, generator_count: int, path: str | None = None, line_no: int | None = None) -> Word:
    word = []
    for token in text.split():
        match = _LETTER.match(token)
        if match is None:
            raise FormatError(f"bad letter {token!r}", path, line_no)
        index = int(match.group(1))
        if not 1 <= index <= generator_count:
            raise FormatError(f"generator a{index} outside a1..a{generator_count}", path, line_no)
        word.append(-index if match.group(2) else index)
    return tuple(word)


def format_word(word: Word) -> str:
    return " ".join(f"a{abs(letter)}" + ("'" if letter < 0 else "") for letter in word)


def parse_presentation(text: str, path: str | None = None) -> FinitePresentation:
    lines = _lines(text)
    count = _header(lines, "gens", path)
    relators = [parse_word(line, count, path, line_no) for line_no, line in lines]
    try:
        return FinitePresentation(generator_count=count, relators=tuple(relators))
    except ValidationError as exc:
        raise FormatError(str(exc), path) from exc


def write_presentation(presentation: FinitePresentation) -> str:
    body = "".join(format_word(relator) + "\n" for relator in presentation.relators)
    return f"gens {presentation.generator_count}\n" + body


# Concentric witnesses


def write_ccs(sequence: ConcentricSequence) -> str:
    group = sequence.group
    lines = [f"degree {sequence.degree}", f"n {sequence.n}"]
    lines += [g.cycle_string() for g in sequence.gens]
    lines += [f"{group.index(b) + 1} -> {group.index(sequence.phi[b]) + 1}" for b in sequence.b_set.ordered()]
    return "\n".join(lines) + "\n"


def parse_ccs(text: str, path: str | None = None) -> ConcentricSequence:
    """Read a witness and re-derive it; the stored shift map must agree with the recomputed one."""
    lines = _lines(text)
    degree = _header(lines, "degree", path)
    n = _header(lines, "n", path)
    gens = []
    for _ in range(n):
        try:
            line_no, line = next(lines)
        except StopIteration:
            raise FormatError(f"expected {n} generators", path) from None
        gens.append(parse_permutation(line, degree, path, line_no))
    sequence = check_concentric(gens)
    if not isinstance(sequence, ConcentricSequence):
        raise FormatError(f"generators are not concentric: {sequence.message}", path)
    ordered = sequence.group.ordered()
    stored = 0
    for line_no, line in lines:
        match = re.fullmatch(r"(\d+)\s*->\s*(\d+)", line)
        if match is None:
            raise FormatError(f"expected 'x -> y', got {line!r}", path, line_no)
        x, y = (int(match.group(k)) - 1 for k in (1, 2))
        if not (0 <= x < len(ordered) and 0 <= y < len(ordered)):
            raise FormatError("element index out of range", path, line_no)
        if sequence.phi.get(ordered[x]) != ordered[y]:
            raise FormatError(f"shift map disagrees at element {x + 1}", path, line_no)
        stored += 1
    if stored and stored != len(sequence.b_set):
        raise FormatError(f"{stored} shift-map lines for |B| = {len(sequence.b_set)}", path)
    return sequence


def read_ccs(path: Path) -> ConcentricSequence:
    return parse_ccs(path.read_text(), str(path))


# Wreath instances


class WreathInput(NamedTuple):
    group_path: str
    w: PermutationGroup
    a: Permutation
    h_gens: list[Permutation]
    m: int


def parse_wri(text: str, path: Path | None = None) -> WreathInput:
    name = None if path is None else str(path)
    base = Path(".") if path is None else path.parent
    fields: dict[str, list[tuple[int, str]]] = {}
    for line_no, line in _lines(text):
        key, _, value = line.partition(" ")
        if key not in ("group", "a", "h", "m"):
            raise FormatError(f"unknown field {key!r}", name, line_no)
        fields.setdefault(key, []).append((line_no, value.strip()))
    for key in ("group", "a", "h", "m"):
        if key not in fields:
            raise FormatError(f"missing '{key}' line", name)
    for key in ("group", "a", "m"):
        if len(fields[key]) > 1:
            raise FormatError(f"repeated '{key}' line", name, fields[key][1][0])

    group_path = fields["group"][0][1]
    w = read_group(base / group_path)
    a = parse_permutation(fields["a"][0][1], w.degree, name, fields["a"][0][0])
    h_gens = [parse_permutation(value, w.degree, name, line_no) for line_no, value in fields["h"]]
    m_line, m_text = fields["m"][0]
    if not m_text.isdigit() or int(m_text) < 1:
        raise FormatError(f"m must be a positive integer, got {m_text!r}", name, m_line)
    return WreathInput(group_path, w, a, h_gens, int(m_text))


def write_wri(group_path: str, a: Permutation, h_gens: Sequence[Permutation], m: int) -> str:
    lines = [f"group {group_path}", f"a {a.cycle_string()}"]
    lines += [f"h {h.cycle_string()}" for h in h_gens]
    lines.append(f"m {m}")
    return "\n".join(lines) + "\n"


def read_wri(path: Path) -> WreathInput:
    return parse_wri(path.read_text(), path)


# Graphs


def parse_graph(text: str, path: str | None = None) -> Graph:
    lines = _lines(text)
    count = _header(lines, "vertices", path)
    edges = []
    for line_no, line in lines:
        parts = line.split()
        if len(parts) != 2 or not all(part.isdigit() for part in parts):
            raise FormatError(f"expected 'u v', got {line!r}", path, line_no)
        u, v = (int(part) for part in parts)
        if not (1 <= u <= count and 1 <= v <= count):
            raise FormatError(f"edge {u} {v} outside 1..{count}", path, line_no)
        if u == v:
            raise FormatError(f"loop at vertex {u}", path, line_no)
        edges.append((u - 1, v - 1))
    return Graph.from_edges(count, edges)


def write_graph(graph: Graph) -> str:
    return f"vertices {graph.vertex_count}\n" + "".join(f"{u + 1} {v + 1}\n" for u, v in graph.edges())


def read_graph(path: Path) -> Graph:
    return parse_graph(path.read_text(), str(path))
