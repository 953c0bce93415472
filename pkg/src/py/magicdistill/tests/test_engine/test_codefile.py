import pytest

from magicdistill.core.stabilizer import CodeValidationError
from magicdistill.distill.builtins import (
    five_qubit_code,
    parity_code,
    reed_muller_code,
    steane_code,
)
from magicdistill.engine.codefile import (
    code_digest,
    format_code,
    load_code,
    parse_code,
    text_digest,
)
from magicdistill.program.types import ProgramParseError

PARITY_TEXT = """\
# two-qubit parity check
n: 2
gen: +ZZ
Xl: +XX
Zl: +ZI
"""


def test_parse_code():
    code = parse_code(PARITY_TEXT, name="parity")
    assert code == parity_code()
    assert code.name == "parity"


def test_name_line_wins():
    code = parse_code(PARITY_TEXT + "name: pair\n", name="ignored")
    assert code.name == "pair"


@pytest.mark.parametrize(
    "code", [parity_code(), steane_code(), five_qubit_code(), reed_muller_code()]
)
def test_format_round_trip(code):
    assert parse_code(format_code(code)) == code


def test_load_code_names_by_file_stem(tmp_path):
    path = tmp_path / "pair.code"
    path.write_text(PARITY_TEXT)
    code = load_code(path)
    assert code.name == "pair"
    assert code.generators == parity_code().generators


@pytest.mark.parametrize(
    "text, line, match",
    [
        ("", 1, "Missing 'n:' header"),
        ("n: 2\nbogus: 1", 2, "Expected one of"),
        ("n: 2\nn: 2", 2, "given twice"),
        ("n: two", 1, "positive integer"),
        ("gen: +ZZ", 1, "must come first"),
        ("n: 2\ngen: +ZQ", 2, "Invalid Pauli string"),
        ("n: 2\ngen: +ZZZ", 2, "expected 2"),
        ("n: 2\nXl: +XX\nXl: +XX", 3, "given twice"),
        ("n: 2\ngen: +ZZ\nXl: +XX", 3, "Missing logical operator 'Zl'"),
    ],
)
def test_parse_errors(text, line, match):
    with pytest.raises(ProgramParseError, match=match) as info:
        parse_code(text)
    assert info.value.line == line


def test_invalid_code_is_rejected():
    with pytest.raises(CodeValidationError, match="anticommute"):
        parse_code("n: 2\ngen: +ZZ\nXl: +XI\nZl: +ZI\n")


def test_wrong_generator_count():
    with pytest.raises(ValueError, match="needs 1 generators, got 0"):
        parse_code("n: 2\nXl: +XX\nZl: +ZI\n")


def test_digest_is_stable():
    digest = code_digest(parity_code())
    assert digest == text_digest(format_code(parity_code()))
    assert digest.startswith("sha256:")
    assert len(digest) == len("sha256:") + 64
    assert code_digest(steane_code()) != digest
    assert text_digest("abc") == text_digest(b"abc")
