import io

import pytest

from tla.cli import run
from tla.corpus import LanguageCode, read_dataset_csv

JSONL = (
    '{"id":"1","text":"The best day ever","lang":"en","likeCount":9100,"replyCount":3}\n'
    '{"id":"2","text":"Я люблю кофе и хороший хлеб","lang":"ru","likeCount":9500,"replyCount":1}\n'
    '{"id":"3","text":"qué día tan bueno","lang":"es","likeCount":10000,"replyCount":2}\n'
)


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


class TestExitCodes:
    def test_query_example(self):
        code, out, err = invoke(
            "query", "--lang", "en", "--min-faves", "9000", "--has-engagement"
        )
        assert code == 0
        assert out == "min_faves:9000 filter:has_engagement lang:en\n"
        assert err == ""

    def test_unknown_subcommand_is_usage_error(self):
        code, out, err = invoke("frobnicate")
        assert code == 2
        assert out == ""
        assert "usage" in err

    def test_missing_input_file_is_data_error(self):
        code, out, err = invoke("analyze", "--input", "missing.csv")
        assert code == 1
        assert "missing.csv" in err
        assert out == ""

    def test_unknown_flag_is_usage_error(self):
        code, _, err = invoke("query", "--lang", "en", "--frums", "3")
        assert code == 2
        assert "usage" in err

    def test_bad_language_is_usage_error(self):
        code, _, err = invoke("query", "--lang", "xx")
        assert code == 2

    def test_missing_required_flag(self):
        code, _, err = invoke("query")
        assert code == 2
        assert "--lang" in err

    def test_no_subcommand(self):
        code, _, err = invoke()
        assert code == 2


class TestQuery:
    def test_no_engagement_no_faves(self):
        code, out, _ = invoke("query", "--lang", "hi", "--min-faves", "0",
                              "--no-has-engagement")
        assert code == 0
        assert out == "lang:hi\n"

    def test_defaults(self):
        code, out, _ = invoke("query", "--lang", "zh")
        assert out == "min_faves:9000 filter:has_engagement lang:zh\n"


class TestClean:
    def test_stdout_csv(self, tmp_path):
        src = tmp_path / "tweets.jsonl"
        src.write_text(JSONL, encoding="utf-8")
        code, out, err = invoke("clean", "--input", str(src))
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "id,lang,text,tokens"
        assert lines[1] == "1,en,The best day ever,best day ever"
        assert "2,ru," in lines[2] and "люблю кофе хороший хлеб" in lines[2]
        assert err == "3 rows\n"

    def test_output_file(self, tmp_path):
        src = tmp_path / "tweets.jsonl"
        src.write_text(JSONL, encoding="utf-8")
        dst = tmp_path / "clean.csv"
        code, out, err = invoke("clean", "--input", str(src), "--output", str(dst))
        assert code == 0
        assert out == ""
        assert dst.read_text(encoding="utf-8").splitlines()[0] == "id,lang,text,tokens"

    def test_missing_lang_hint_without_fallback(self, tmp_path):
        src = tmp_path / "tweets.jsonl"
        src.write_text('{"id":"1","text":"hello"}\n', encoding="utf-8")
        code, _, err = invoke("clean", "--input", str(src))
        assert code == 1
        assert "no lang field" in err

    def test_lang_fallback(self, tmp_path):
        src = tmp_path / "tweets.jsonl"
        src.write_text('{"id":"1","text":"hello there"}\n', encoding="utf-8")
        code, out, _ = invoke("clean", "--input", str(src), "--lang", "en")
        assert code == 0
        assert out.splitlines()[1].startswith("1,en,")

    def test_bad_line_is_error_unless_skipped(self, tmp_path):
        src = tmp_path / "tweets.jsonl"
        src.write_text('{"id":"1"}\n' + JSONL, encoding="utf-8")
        code, _, err = invoke("clean", "--input", str(src))
        assert code == 1
        assert "line 1" in err
        code, out, _ = invoke("clean", "--input", str(src), "--skip-bad-lines")
        assert code == 0
        assert len(out.splitlines()) == 4


@pytest.fixture(scope="module")
def model_file(tmp_path_factory):
    path = tmp_path_factory.mktemp("model") / "small.tlam"
    code, out, err = invoke(
        "train-langid", "--synthetic", "60", "--seed", "7", "--trees", "12",
        "--output", str(path),
    )
    assert code == 0, err
    assert out == ""
    return path


class TestTrainAndIdentify:
    def test_seed_required(self, tmp_path):
        code, _, err = invoke("train-langid", "--output", str(tmp_path / "m.tlam"))
        assert code == 2
        assert "--seed" in err

    def test_output_required(self):
        code, _, err = invoke("train-langid", "--seed", "3")
        assert code == 2
        assert "--output" in err

    def test_corpus_and_synthetic_exclusive(self, tmp_path):
        code, _, err = invoke(
            "train-langid", "--seed", "3", "--output", str(tmp_path / "m.tlam"),
            "--corpus", "x.csv", "--synthetic", "10",
        )
        assert code == 2

    def test_training_is_deterministic(self, tmp_path):
        a, b = tmp_path / "a.tlam", tmp_path / "b.tlam"
        for path in (a, b):
            code, _, err = invoke(
                "train-langid", "--synthetic", "25", "--seed", "11", "--trees", "5",
                "--output", str(path),
            )
            assert code == 0, err
        assert a.read_bytes() == b.read_bytes()

    def test_identify_text(self, model_file):
        code, out, err = invoke("identify", "--model", str(model_file),
                                "--text", "the train was late again this morning")
        assert code == 0
        lang, confidence = out.split()
        assert lang == "en"
        assert 0.0 < float(confidence) <= 1.0

    def test_identify_requires_text_xor_input(self, model_file):
        assert invoke("identify", "--model", str(model_file))[0] == 2
        assert invoke("identify", "--model", str(model_file), "--text", "x",
                      "--input", "y.csv")[0] == 2

    def test_identify_bad_model_file(self, tmp_path):
        bad = tmp_path / "bad.tlam"
        bad.write_bytes(b"NOPE")
        code, _, err = invoke("identify", "--model", str(bad), "--text", "hi")
        assert code == 1
        assert "magic" in err

    def test_identify_rewrites_clean_csv(self, model_file, tmp_path):
        src = tmp_path / "tweets.jsonl"
        src.write_text(JSONL, encoding="utf-8")
        cleaned = tmp_path / "clean.csv"
        identified = tmp_path / "identified.csv"
        assert invoke("clean", "--input", str(src), "--output", str(cleaned))[0] == 0
        code, out, err = invoke(
            "identify", "--model", str(model_file), "--input", str(cleaned),
            "--output", str(identified),
        )
        assert code == 0
        header, *rows = identified.read_text(encoding="utf-8").splitlines()
        assert header == "id,lang,text,tokens"
        assert len(rows) == 3

    def test_identify_predictions_to_stdout(self, model_file, tmp_path):
        src = tmp_path / "tweets.jsonl"
        src.write_text(JSONL, encoding="utf-8")
        cleaned = tmp_path / "clean.csv"
        invoke("clean", "--input", str(src), "--output", str(cleaned))
        code, out, _ = invoke("identify", "--model", str(model_file),
                              "--input", str(cleaned))
        lines = out.splitlines()
        assert lines[0] == "id,lang,confidence"
        assert len(lines) == 4


class TestLabelAndAnalyze:
    @pytest.fixture()
    def cleaned(self, tmp_path):
        src = tmp_path / "tweets.jsonl"
        src.write_text(JSONL, encoding="utf-8")
        path = tmp_path / "clean.csv"
        assert invoke("clean", "--input", str(src), "--output", str(path))[0] == 0
        return path

    def test_label_groups_by_language(self, cleaned, tmp_path):
        out_dir = tmp_path / "labeled"
        code, out, err = invoke("label", "--input", str(cleaned), "--out-dir", str(out_dir))
        assert code == 0
        assert sorted(p.name for p in out_dir.iterdir()) == ["en.csv", "es.csv", "ru.csv"]
        with open(out_dir / "en.csv", "rb") as handle:
            dataset = read_dataset_csv(handle)
        assert dataset.language is LanguageCode.EN
        assert dataset.rows[0].label.value == "Positive"  # "best" is positive

    def test_tie_label_flag(self, tmp_path):
        src = tmp_path / "t.jsonl"
        src.write_text('{"id":"1","text":"zzz qqq","lang":"en"}\n', encoding="utf-8")
        cleaned = tmp_path / "c.csv"
        invoke("clean", "--input", str(src), "--output", str(cleaned))
        out_dir = tmp_path / "labeled"
        invoke("label", "--input", str(cleaned), "--out-dir", str(out_dir),
               "--tie-label", "Negative")
        with open(out_dir / "en.csv", "rb") as handle:
            dataset = read_dataset_csv(handle)
        assert dataset.rows[0].label.value == "Negative"

    def test_analyze_end_of_chain(self, cleaned, tmp_path):
        out_dir = tmp_path / "labeled"
        invoke("label", "--input", str(cleaned), "--out-dir", str(out_dir))
        files = sorted(str(p) for p in out_dir.iterdir())
        code, out, err = invoke("analyze", "--format", "csv", "--input", *files)
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("Language,")
        assert [line.split(",")[0] for line in lines[1:]] == ["English", "Spanish", "Russian"]

    def test_analyze_deterministic(self, cleaned, tmp_path):
        out_dir = tmp_path / "labeled"
        invoke("label", "--input", str(cleaned), "--out-dir", str(out_dir))
        files = sorted(str(p) for p in out_dir.iterdir())
        first = invoke("analyze", "--format", "markdown", "--input", *files)
        second = invoke("analyze", "--format", "markdown", "--input", *files)
        assert first == second

    def test_analyze_output_file(self, cleaned, tmp_path):
        out_dir = tmp_path / "labeled"
        invoke("label", "--input", str(cleaned), "--out-dir", str(out_dir))
        report = tmp_path / "report.csv"
        code, out, _ = invoke("analyze", "--format", "csv", "--output", str(report),
                              "--input", str(out_dir / "en.csv"))
        assert code == 0
        assert out == ""
        assert report.read_text(encoding="utf-8").splitlines()[1].startswith("English,")


class TestConfigFile:
    def test_config_sets_defaults(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        (tmp_path / "tla.conf").write_text("min_faves=123\n", encoding="utf-8")
        code, out, _ = invoke("query", "--lang", "en")
        assert code == 0
        assert out == "min_faves:123 filter:has_engagement lang:en\n"

    def test_flag_overrides_config(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        (tmp_path / "tla.conf").write_text("min_faves=123\n", encoding="utf-8")
        code, out, _ = invoke("query", "--lang", "en", "--min-faves", "9")
        assert out == "min_faves:9 filter:has_engagement lang:en\n"

    def test_explicit_config_path(self, tmp_path):
        conf = tmp_path / "other.conf"
        conf.write_text("has-engagement=false\nmin_faves=0\n", encoding="utf-8")
        code, out, _ = invoke("--config", str(conf), "query", "--lang", "sv")
        assert code == 0
        assert out == "lang:sv\n"

    def test_unknown_config_key_is_usage_error(self, tmp_path):
        conf = tmp_path / "bad.conf"
        conf.write_text("frumious=1\n", encoding="utf-8")
        code, _, err = invoke("--config", str(conf), "query", "--lang", "en")
        assert code == 2
        assert "frumious" in err

    def test_bad_config_value_is_usage_error(self, tmp_path):
        conf = tmp_path / "bad.conf"
        conf.write_text("min_faves=lots\n", encoding="utf-8")
        code, _, err = invoke("--config", str(conf), "query", "--lang", "en")
        assert code == 2

    def test_missing_config_file(self, tmp_path):
        code, _, err = invoke("--config", str(tmp_path / "nope.conf"), "query",
                              "--lang", "en")
        assert code == 2
        assert "not found" in err

    def test_malformed_config_line(self, tmp_path):
        conf = tmp_path / "bad.conf"
        conf.write_text("just a line\n", encoding="utf-8")
        code, _, err = invoke("--config", str(conf), "query", "--lang", "en")
        assert code == 2


class TestDataDirOverride:
    def test_env_var_overrides_stopwords(self, tmp_path, monkeypatch):
        (tmp_path / "stopwords").mkdir()
        (tmp_path / "stopwords" / "en.txt").write_text("best\n", encoding="utf-8")
        src = tmp_path / "t.jsonl"
        src.write_text('{"id":"1","text":"the best day","lang":"en"}\n', encoding="utf-8")
        monkeypatch.setenv("TLA_DATA_DIR", str(tmp_path))
        code, out, _ = invoke("clean", "--input", str(src))
        assert code == 0
        # "best" now a stopword, "the" no longer one
        assert out.splitlines()[1] == "1,en,the best day,the day"
