"""Command line: one JSON document per run and the 0/1/2 exit codes"""

import io
import json

import pytest

from symloops.cli import COMMANDS, parse_path_product, run
from symloops.arith import RationalField
from symloops.chevalley import RootA
from symloops.errors import InputFormatError
from symloops.serialization import decode_path, dumps
from tests.test_data import get_test_data


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out=out)
    return code, json.loads(out.getvalue())


@pytest.fixture
def write_doc(tmp_path):
    def write(name):
        path = tmp_path / f"{name}.json"
        path.write_text(dumps(get_test_data(name)))
        return str(path)

    return write


def test_every_subcommand_is_registered():
    assert set(COMMANDS) == {
        "symbol-loop", "verify-loop", "verify-identity", "factor", "lift", "k2-check",
        "tame", "k2m-field", "schur", "simplicial-face", "verify-homotopy", "reproduce",
    }


def test_symbol_loop():
    code, doc = call("symbol-loop", "--group", "sl2", "--root", "1,2", "--u", "2", "--v", "3", "--ring", "Q")
    assert code == 0
    assert doc["schema"] == "symloops/path@1"
    assert decode_path(doc).is_loop


def test_symbol_loop_closed_form_agrees():
    _, product = call("symbol-loop", "--u", "2", "--v", "3")
    _, closed = call("symbol-loop", "--u", "2", "--v", "3", "--closed-form")
    assert product == closed


def test_symbol_loop_sl3_finite_field():
    code, doc = call("symbol-loop", "--group", "sl3", "--root", "3,1", "--u", "2", "--v", "4", "--ring", "Fq:7^1")
    assert code == 0
    assert doc["n"] == 3 and doc["ring"] == "poly:Fq:7^1:T"


def test_verify_loop(write_doc):
    code, doc = call("verify-loop", "--in", write_doc("x_path"))
    assert code == 0
    assert doc["is_path"] and not doc["is_loop"]
    _, doc = call("verify-loop", "--in", write_doc("null_loop"))
    assert doc["is_loop"]


def test_verify_identity():
    code, doc = call("verify-identity", "--lhs", "W(2) W(-2)")
    assert code == 0 and doc["holds"]
    _, doc = call("verify-identity", "--lhs", "C(2,3)", "--rhs", "H(2) H(3) H(6)^-1")
    assert doc["holds"]
    _, doc = call("verify-identity", "--lhs", "H(2) H(3)", "--rhs", "H(3) H(2)")
    assert not doc["holds"]
    assert len(doc["entry"]) == 2


def test_path_product_grammar():
    Q = RationalField()
    assert len(parse_path_product("X(1) W(1/2)^-1 C(2,3)", RootA(1, 2), 2, Q)) == 3
    assert parse_path_product("", RootA(1, 2), 2, Q) == []
    with pytest.raises(InputFormatError):
        parse_path_product("H(2) junk", RootA(1, 2), 2, Q)
    with pytest.raises(InputFormatError):
        parse_path_product("C(2)", RootA(1, 2), 2, Q)


def test_factor(write_doc):
    code, doc = call("factor", "--in", write_doc("diagonal_f5"))
    assert code == 0
    assert doc["schema"] == "symloops/factors@1"
    assert doc["count"] == 6


def test_factor_of_singular_matrix_is_a_domain_error(write_doc):
    code, doc = call("factor", "--in", write_doc("singular"))
    assert code == 2
    assert "determinant" in doc["error"]


def test_lift(write_doc):
    code, doc = call("lift", "--in", write_doc("x_path"))
    assert code == 0
    assert doc["word"]["letters"] == [[1, 2, "3", 1]]
    assert doc["is_k2"] is False


def test_k2_check(write_doc):
    code, doc = call("k2-check", "--in", write_doc("commutator_residue"))
    assert code == 0
    assert doc["projection_is_identity"] is True
    assert doc["reduced_length"] == 5
    _, doc = call("k2-check", "--in", write_doc("single_letter"))
    assert doc["projection_is_identity"] is False


def test_tame():
    code, doc = call("tame", "--a", "2", "--b", "3", "--p", "3")
    assert code == 0
    assert doc["value"] == "2"
    _, doc = call("tame", "--symbols", "2,3;7,-6")
    assert doc["invariants"] == {"2": "1", "3": "2", "7": "1"}


def test_tame_errors():
    assert call("tame", "--a", "2")[0] == 1
    assert call("tame", "--a", "0", "--b", "3", "--p", "3")[0] == 2
    assert call("tame", "--symbols", "2")[0] == 1


def test_k2m_field():
    code, doc = call("k2m-field", "--q", "2")
    assert code == 0
    assert doc["invariant_factors"] == [] and doc["free_rank"] == 0
    assert call("k2m-field", "--q", "6")[0] == 2


def test_schur(write_doc):
    code, doc = call("schur", "--group", "klein")
    assert code == 0
    assert doc["invariant_factors"] == [2]
    assert doc["order"] == 4
    assert "timing" not in doc
    _, doc = call("schur", "--gens", write_doc("klein_generators"), "--timing")
    assert doc["invariant_factors"] == [2]
    assert "seconds" in doc["timing"]


def test_schur_errors():
    assert call("schur")[0] == 1
    assert call("schur", "--group", "dihedral:4")[0] == 1
    code, doc = call("schur", "--group", "sl2:5", "--bound", "50")
    assert code == 2
    assert "order bound" in doc["error"]


def test_simplicial_face(write_doc):
    code, doc = call("simplicial-face", "--in", write_doc("simplex_poly"), "--i", "0")
    assert code == 0
    assert doc["poly"] == [[[], "1"]]
    _, doc = call("simplicial-face", "--in", write_doc("simplex_poly"), "--i", "1")
    assert doc["poly"] == []
    _, doc = call("simplicial-face", "--in", write_doc("witness"), "--i", "0", "--degeneracy")
    assert doc["level"] == 3
    assert call("simplicial-face", "--in", write_doc("simplex_poly"), "--i", "4")[0] == 2


def test_verify_homotopy(write_doc):
    code, doc = call(
        "verify-homotopy",
        "--sigma", write_doc("witness"),
        "--from", write_doc("constant_loop"),
        "--to", write_doc("null_loop"),
    )
    assert code == 0
    assert doc["certified"] is True
    assert len(doc["faces"]) == 3
    _, doc = call(
        "verify-homotopy",
        "--sigma", write_doc("bad_witness"),
        "--from", write_doc("constant_loop"),
        "--to", write_doc("constant_loop"),
    )
    assert doc["certified"] is False


def test_malformed_input():
    assert call("no-such-command")[0] == 1
    assert call("symbol-loop", "--group", "gl2", "--u", "2", "--v", "3")[0] == 1
    assert call("symbol-loop", "--ring", "Z", "--u", "2", "--v", "3")[0] == 1
    assert call("factor", "--in", "/nonexistent/matrix.json")[0] == 1


@pytest.mark.parametrize(
    "command, doc",
    [
        ("k2-check", {"n": "x", "ring": "Q", "letters": []}),
        ("k2-check", {"n": 3, "ring": "Q", "letters": [["a", 2, "1"]]}),
        ("k2-check", {"n": 3, "ring": "Q", "letters": 5}),
        ("k2-check", {"n": 3, "ring": "Q", "letters": [[1, 2, "1", 2]]}),
        ("factor", {"n": 2.5, "ring": "Q", "entries": [["1", "0"], ["0", "1"]]}),
        ("factor", {"n": 2, "ring": "Q", "entries": "identity"}),
        ("factor", {"n": 2, "ring": "Fq:5^1", "entries": [[["a"], [0]], [[0], [1]]]}),
        ("verify-loop", {"n": 2, "ring": "poly:Q:T", "entries": [[[[["x"], "1"]], []], [[], "1"]]}),
        ("verify-loop", {"n": 2, "ring": "poly:Q:T", "entries": [[[[5, "1"]], []], [[], "1"]]}),
        ("k2-check", ["not", "a", "word"]),
    ],
)
def test_malformed_documents(tmp_path, command, doc):
    path = tmp_path / "doc.json"
    path.write_text(dumps(doc))
    code, reply = call(command, "--in", str(path))
    assert code == 1
    assert "error" in reply


def test_domain_errors():
    code, doc = call("symbol-loop", "--u", "0", "--v", "3")
    assert code == 2
    assert "invertible" in doc["error"]
    assert call("symbol-loop", "--group", "sl2", "--root", "1,3", "--u", "2", "--v", "3")[0] == 2


def test_output_is_byte_identical():
    outputs = []
    for _ in range(2):
        out = io.StringIO()
        run(["symbol-loop", "--group", "sl3", "--u", "2", "--v", "5"], out=out)
        outputs.append(out.getvalue())
    assert outputs[0] == outputs[1]


def test_reproduce_quick_subset():
    code, doc = call("reproduce", "--quick", "--only", "tame-symbols", "--only", "milnor-k2", "--seed", "7")
    assert code == 0
    assert doc["passed"] is True
    assert doc["seed"] == 7
    assert [c["criterion"] for c in doc["criteria"]] == ["tame-symbols", "milnor-k2"]
    assert "seconds" not in doc["criteria"][0]
