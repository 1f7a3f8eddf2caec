import pytest

from msow.cli import FAILURE, OK, USAGE, main


@pytest.fixture
def formula_file(tmp_path):
    def make(text):
        p = tmp_path / f"f{abs(hash(text))}.mso"
        p.write_text(text)
        return str(p)

    return make


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_parse(capsys, formula_file):
    rc, out, _ = run(capsys, "parse", formula_file("ex2 X. (all1 x. (x in X <-> a(x))) & ~(P Y. ~(X = Y))"))
    assert rc == OK
    assert "dialect: MSO_P" in out and "sentence: yes" in out


def test_parse_error_location(capsys, formula_file):
    rc, _, err = run(capsys, "parse", formula_file("ex1 x.\n  (a(x) &"))
    assert rc == USAGE and "parse error at 2:" in err


def test_translate(capsys, formula_file, tmp_path):
    path = formula_file("U X. all1 x. (x in X -> a(x))")
    rc, out, err = run(capsys, "translate", path, "--from", "U", "--to", "W")
    assert rc == OK and "U2(" not in out and "W(" in out
    assert "u_to_u2 -> u2_to_w" in err
    target = tmp_path / "out.mso"
    rc, out, _ = run(capsys, "translate", path, "--from", "U", "--to", "U2", "-o", str(target))
    assert rc == OK and "U2(" in target.read_text()
    rc, _, _ = run(capsys, "translate", path, "--from", "U", "--to", "P")
    assert rc == USAGE


def test_translate_output_parses_back(capsys, formula_file):
    path = formula_file("ex2 X. (all1 x. (x in X <-> a(x))) & ~(P Y. ~(X = Y))")
    rc, out, _ = run(capsys, "translate", path, "--from", "P", "--to", "U_FLAT", "--alphabet", "a,b,c")
    assert rc == OK and "UltConstDim" in out
    rc, out2, _ = run(capsys, "parse", formula_file(out))
    assert rc == OK and "dialect: MSO_U" in out2


@pytest.mark.parametrize(
    "X,expected",
    [("proc{name=pow2}", "TRUE"), ("proc{name=multiples;k=10}", "FALSE"), ("proc{name=pidigits}", "FALSE")],
)
def test_eval(capsys, formula_file, X, expected):
    rc, out, _ = run(capsys, "eval", formula_file("W(X)"), "--word", "lasso{stem=;loop=a}", "--assign", f"X = {X}")
    assert rc == OK and out.split()[0] == expected


def test_eval_unbound(capsys, formula_file):
    rc, _, err = run(capsys, "eval", formula_file("W(X)"), "--word", "lasso{stem=;loop=a}")
    assert rc == USAGE and "unbound" in err


def test_diff(capsys, formula_file, tmp_path):
    corpus = tmp_path / "corpus.txt"
    corpus.write_text("word=lasso{stem=;loop=a} X=proc{name=pow2}\nword=lasso{stem=;loop=a} X=proc{name=multiples;k=10}\n")
    rc, out, _ = run(capsys, "diff", formula_file("W(X)"), formula_file("~~W(X)"), "--corpus", str(corpus))
    assert rc == OK and "0 contradictions" in out
    rc, out, _ = run(capsys, "diff", formula_file("W(X)"), formula_file("~W(X)"), "--corpus", str(corpus))
    assert rc == FAILURE and "CONTRADICTION" in out


def test_seq(capsys):
    assert run(capsys, "seq", "betaprime", "--vectors", "[(2,1),(3,2,1),(4,3,2,1),(5,4,3,2,1),(6,5,4,3,2,1)]")[1].strip() == (
        "[(1),(1,2),(1,2,2),(1,2,3,2),(1,2,3,3,2)]"
    )
    rc, out, _ = run(capsys, "seq", "match", "--vectors", "[(1),(1,2),(1,2,2),(1,2,3,2),(1,2,3,3,2)]", "--g", "[1,2,1,4,1]")
    assert out.strip() == "[1,2,1,3,1]"
    rc, out, _ = run(capsys, "seq", "decode", "--R", "finite{0,10}", "--I", "finite{1,2,3,5,6,9}", "-H", "11")
    assert out.strip() == "[(3,2,1)]"
    rc, out, _ = run(capsys, "seq", "isolate", "--I", "finite{4,5,6}", "-H", "10")
    assert "{5}" in out
    rc, out, _ = run(capsys, "seq", "complete", "--I", "finite{1,5}", "-H", "10")
    assert "{1,2,3,5}" in out
    rc, out, _ = run(capsys, "seq", "lemma32", "--vectors", "[(7,1,1,1,9,1,1)]", "--bound", "3")
    assert rc == OK and "[(1,1,1)]" in out
    assert run(capsys, "seq", "match", "--vectors", "[(1)]")[0] == USAGE
    assert run(capsys, "seq", "decode", "--R", "finite{1}", "--I", "finite{1}")[0] == FAILURE


def test_oracle(capsys):
    rc, out, _ = run(capsys, "oracle", "lemma34")
    assert rc == OK and "PASS" in out


def test_bad_arguments(capsys):
    assert run(capsys, "nonsense")[0] == USAGE
    assert run(capsys, "parse", "/no/such/file")[0] == USAGE
