import pytest

from gpwkit.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_corpus_list_and_validate(capsys):
    rc, out, _ = run(capsys, "corpus", "list")
    assert rc == 0 and out.splitlines()[0].startswith("4476 p=11 q=9")
    rc, out, _ = run(capsys, "corpus", "validate")
    assert rc == 0 and out.startswith("ok graphs=4")


def test_corpus_validate_reports_bad_file(capsys, tmp_path):
    bad = tmp_path / "bad.corpus"
    bad.write_text("graph 1 X {\n  vertices: a,b;\n  edges: (a,c);\n}\n")
    rc, _, err = run(capsys, "corpus", "validate", str(bad))
    assert rc == 1 and err


def test_verify_stored_labelling(capsys):
    rc, out, _ = run(capsys, "label", "verify", "--graph", "corpus:4476", "--labelling", "corpus")
    assert rc == 0 and out.startswith("pass")


def test_search_found_and_exhausted(capsys):
    rc, out, _ = run(capsys, "label", "search", "--graph", "P4", "--kind", "graceful")
    assert rc == 0 and out.startswith("labelling graceful")
    # C6 has q = 6, which is 2 mod 4, so no graceful labelling exists
    rc, out, _ = run(capsys, "label", "search", "--graph", "C6", "--kind", "graceful")
    assert rc == 0 and out.strip() == "exhausted"


def test_tbpaw_digits_only(capsys):
    rc, out, _ = run(capsys, "tbpaw", "--graph", "corpus:4476", "--labelling", "corpus", "--algo", "O1")
    assert rc == 0 and out.strip().isdigit()


def test_count(capsys):
    rc, out, _ = run(capsys, "count", "--tbpaw", "q=9")
    assert rc == 0
    assert out.split()[0] == "matrices=362898"
    rc, out, _ = run(capsys, "count", "--spanning-trees", "K5")
    assert out.strip() == "spanning_trees=125"


def test_grow(capsys):
    rc, out, _ = run(capsys, "grow", "--graph", "P3", "--algo", "vcoin_I", "--steps", "2")
    assert rc == 0
    assert out.splitlines()[-1] == "step 2: n_v=27 n_e=26 pred_v=27 pred_e=26"


def test_directed_serialize(capsys):
    rc, out, _ = run(capsys, "directed", "serialize", "--graph", "corpus:4476d1", "--labelling", "corpus",
                     "--kind", "flawed_half_directed_graceful", "--algo", "O1")
    assert rc == 0 and out.strip().startswith("66772910101010987x65421543282")


def test_group_add(capsys):
    rc, out, _ = run(capsys, "group", "add", "--graph", "corpus:4476", "--labelling", "corpus",
                     "--indices", "3", "4", "5")
    assert rc == 0 and "=" in out


def test_output_file(capsys, tmp_path):
    target = tmp_path / "out.txt"
    rc, out, _ = run(capsys, "-o", str(target), "corpus", "list")
    assert rc == 0 and target.read_text().startswith("4476")


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["label", "verify", "--graph", "P4"],
    ["tbpaw", "--graph", "nosuch", "--labelling", "corpus"],
    ["label", "search", "--graph", "P4"],
])
def test_usage_errors_exit_2(capsys, argv):
    rc, _, err = run(capsys, *argv)
    assert rc == 2 and err


@pytest.mark.parametrize("argv", [
    ["grow", "--graph", "P4", "--algo", "vcoin_III", "--steps", "6"],
    ["directed", "verify", "--graph", "corpus:4476d1", "--labelling", "corpus", "--kind", "directed_graceful"],
])
def test_domain_errors_exit_1(capsys, argv):
    rc, _, err = run(capsys, *argv)
    assert rc == 1 and err.startswith("error:")
