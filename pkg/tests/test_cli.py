import pytest

from ajparse.cli import main
from ajparse.synth import generate_corpus
from ajparse.treebank import write_corpus


@pytest.fixture
def corpus_file(tmp_path):
    p = tmp_path / "corpus.mrg"
    write_corpus(generate_corpus(30, seed=21), str(p))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def result_line(stdout):
    return stdout.strip().splitlines()[-1]


def test_verify_fixture(capsys, sample_path):
    code, out, _ = run(capsys, "verify", sample_path)
    assert code == 0
    assert result_line(out) == "RESULT ok=3 fail=0"


def test_verify_empty_corpus(capsys, tmp_path):
    p = tmp_path / "empty.mrg"
    p.write_text("")
    code, out, _ = run(capsys, "verify", str(p))
    assert code == 0
    assert result_line(out) == "RESULT ok=0 fail=0"


def test_verify_corpus(capsys, corpus_file):
    code, out, _ = run(capsys, "verify", corpus_file)
    assert code == 0
    assert result_line(out) == "RESULT ok=30 fail=0"


def test_malformed_input_exits_nonzero(capsys, tmp_path):
    p = tmp_path / "bad.mrg"
    p.write_text("(S (NN a)\n")
    code, out, err = run(capsys, "verify", str(p))
    assert code == 1
    assert "RESULT ok=0 fail=1" in out


def test_oracle_output_lines(capsys, sample_path, tmp_path):
    out_path = tmp_path / "actions.tsv"
    code, out, _ = run(capsys, "oracle", sample_path, str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert len(lines) == 3
    first = lines[0].split("\t")
    assert first[0] == "0" and first[1] == "6"
    assert first[2] == (
        "attach(0,NP) juxtapose(0,VP,S) attach(1,NP)"
        " juxtapose(2,PP,NP) attach(3,NP) attach(4,None)"
    )


def test_translate_isr_golden_fragment(capsys, sample_path, tmp_path):
    out_path = tmp_path / "isr.txt"
    code, out, _ = run(capsys, "translate-isr", sample_path, str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert "reduce pj:NP shift pj:PP" in lines[0]
    assert len(lines[0].split()) == 20  # n + 2m for the first fixture


def test_enumerate_check_small(capsys):
    code, out, _ = run(capsys, "enumerate-check", "--n-max", "2", "--vocab-size", "2")
    assert code == 0
    assert "case tally:" in out
    assert "1-1=0" in out
    assert result_line(out).startswith("RESULT ok=")
    assert result_line(out).endswith("fail=0")


def test_enumerate_check_bounds(capsys):
    code, out, err = run(capsys, "enumerate-check", "--n-max", "9")
    assert code == 1


def test_stats(capsys, sample_path):
    code, out, _ = run(capsys, "stats", sample_path)
    assert code == 0
    assert "sentences: 3" in out
    assert "action attach:" in out


def test_train_parse_score_pipeline(capsys, tmp_path, corpus_file):
    model = tmp_path / "m.model"
    code, out, err = run(
        capsys, "train", corpus_file, "--model", str(model), "--epochs", "4",
        "--seed", "3",
    )
    assert code == 0
    assert model.exists()
    assert "epoch 1:" in err

    # Sentences from the training corpus, in token_POS form.
    from ajparse.treebank import load_corpus, tokens_of

    entries = load_corpus(corpus_file)
    sents = tmp_path / "sents.txt"
    sents.write_text(
        "\n".join(
            " ".join(f"{t.word}_{t.pos}" for t in tokens_of(e.tree))
            for e in entries
        )
        + "\n"
    )
    predicted = tmp_path / "pred.mrg"
    code, out, _ = run(
        capsys, "parse", str(sents), str(predicted), "--model", str(model),
        "--beam", "2",
    )
    assert code == 0
    assert len(predicted.read_text().splitlines()) == 30

    code, out, _ = run(capsys, "score", corpus_file, str(predicted))
    assert code == 0
    f1 = float([l for l in out.splitlines() if l.startswith("F1")][0].split()[1])
    assert f1 > 80.0  # memorizing model on training sentences


def test_train_determinism(capsys, tmp_path, corpus_file):
    a, b = tmp_path / "a.model", tmp_path / "b.model"
    run(capsys, "train", corpus_file, "--model", str(a), "--epochs", "2", "--seed", "5")
    run(capsys, "train", corpus_file, "--model", str(b), "--epochs", "2", "--seed", "5")
    assert a.read_bytes() == b.read_bytes()


def test_score_gold_vs_gold(capsys, corpus_file):
    code, out, _ = run(capsys, "score", corpus_file, corpus_file)
    assert code == 0
    assert "F1 100.00" in out
    assert "EM 1.00" in out


def test_score_mismatched_corpora(capsys, tmp_path, corpus_file, sample_path):
    code, out, err = run(capsys, "score", corpus_file, sample_path)
    assert code == 1
    assert "RESULT ok=0 fail=1" in out
