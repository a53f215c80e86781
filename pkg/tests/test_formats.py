import pytest

from hatgraphs.core.concentric import catalog
from hatgraphs.exceptions import FormatError
from hatgraphs.utils.formats import (
    format_word,
    parse_ccs,
    parse_graph,
    parse_group,
    parse_permutation,
    parse_presentation,
    parse_word,
    parse_wri,
    write_ccs,
    write_graph,
    write_group,
    write_presentation,
    write_wri,
)
from tests.helpers import cycle_graph, perm

A4 = "degree 4\n(1 2 3)\n(2 3 4)\n"


def test_permutation_notations():
    assert parse_permutation("(1 2 3)(4 5)", 5) == perm("(1 2 3)(4 5)", 5)
    assert parse_permutation("( 1 2 ) ( 3 4 )", 4) == perm("(1 2)(3 4)", 4)
    assert parse_permutation("images: 2 1 3", 3) == perm("(1 2)", 3)
    assert parse_permutation("()", 3).is_identity()


@pytest.mark.parametrize("text", ["1 2 3", "(1 2", "images: 1 2", "(1 9)", "(1 2)(2 3)"])
def test_bad_permutations(text):
    with pytest.raises(FormatError):
        parse_permutation(text, 3)


def test_group_file_with_comments():
    group = parse_group("# the alternating group\ndegree 4\n\n(1 2 3)  # a 3-cycle\nimages: 1 3 4 2\n")
    assert group.degree == 4
    assert group.order() == 12


def test_group_file_writes_canonically():
    group = parse_group(A4)
    assert write_group(group.generators, group.degree) == A4


def test_group_file_errors_carry_line_numbers():
    with pytest.raises(FormatError, match="g.grp:3"):
        parse_group("degree 4\n(1 2)\n(1 2 3 4 5)\n", "g.grp")
    with pytest.raises(FormatError, match="degree"):
        parse_group("degre 4\n")
    with pytest.raises(FormatError):
        parse_group("")


def test_words():
    assert parse_word("a1 a6 a1 a6 a3'", 7) == (1, 6, 1, 6, -3)
    assert format_word((1, -2)) == "a1 a2'"
    with pytest.raises(FormatError):
        parse_word("a1 b2", 2)
    with pytest.raises(FormatError):
        parse_word("a3", 2)


def test_presentation_file():
    text = "gens 2\na1 a1\na2 a2 a2\na1 a2 a1 a2\n"
    presentation = parse_presentation(text)
    assert presentation.relators == ((1, 1), (2, 2, 2), (1, 2, 1, 2))
    assert write_presentation(presentation) == text


def test_ccs_file(d8_regular):
    text = write_ccs(d8_regular)
    lines = text.splitlines()
    assert lines[:2] == ["degree 8", "n 3"]
    assert len(lines) == 2 + 3 + 4
    again = parse_ccs(text)
    assert again.gens == d8_regular.gens
    assert write_ccs(again) == text


def test_ccs_without_shift_lines_is_rederived(d8_regular):
    header = "\n".join(write_ccs(d8_regular).splitlines()[:5]) + "\n"
    assert parse_ccs(header).phi == d8_regular.phi


def test_ccs_rejects_a_wrong_shift_map(d8_regular):
    lines = write_ccs(d8_regular).splitlines()
    x, _, y = lines[-1].partition(" -> ")
    lines[-1] = f"{x} -> {1 if y != '1' else 2}"
    with pytest.raises(FormatError, match="disagrees"):
        parse_ccs("\n".join(lines))


def test_ccs_rejects_non_concentric_generators():
    with pytest.raises(FormatError, match="not concentric"):
        parse_ccs("degree 3\nn 2\n(1 2)\n(2 3)\n")


def test_wri_file(tmp_path):
    (tmp_path / "a4.grp").write_text(A4)
    text = write_wri("a4.grp", perm("(2 3 4)", 4), [perm("(1 2)(3 4)", 4), perm("(1 3)(2 4)", 4)], 2)
    assert text.splitlines()[0] == "group a4.grp"
    given = parse_wri(text, tmp_path / "instance.wri")
    assert given.group_path == "a4.grp"
    assert given.w.order() == 12
    assert given.a == perm("(2 3 4)", 4)
    assert len(given.h_gens) == 2
    assert given.m == 2


@pytest.mark.parametrize(
    "text, message",
    [
        ("group a4.grp\na (2 3 4)\nh (1 2)(3 4)\n", "missing 'm'"),
        ("group a4.grp\na (2 3 4)\nh (1 2)(3 4)\nm 0\n", "positive"),
        ("group a4.grp\na (2 3 4)\nh (1 2)(3 4)\nm 1\nk 3\n", "unknown field"),
        ("group a4.grp\na (2 3 4)\na (2 4 3)\nh (1 2)(3 4)\nm 1\n", "repeated"),
    ],
)
def test_wri_errors(tmp_path, text, message):
    (tmp_path / "a4.grp").write_text(A4)
    with pytest.raises(FormatError, match=message):
        parse_wri(text, tmp_path / "instance.wri")


def test_graph_file():
    text = write_graph(cycle_graph(4))
    assert text == "vertices 4\n1 2\n1 4\n2 3\n3 4\n"
    assert parse_graph(text) == cycle_graph(4)


@pytest.mark.parametrize("text", ["vertices 3\n1 1\n", "vertices 3\n1 4\n", "vertices 3\n1\n", "edges 3\n"])
def test_graph_errors(text):
    with pytest.raises(FormatError):
        parse_graph(text)


def test_small_carrier_ccs_round_trip():
    sequence = catalog("D8", carrier="small")
    assert parse_ccs(write_ccs(sequence)).gens == sequence.gens
