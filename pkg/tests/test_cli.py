import json

import numpy as np
import pytest

from hatebench.cli import (
    EXIT_CONFIG,
    EXIT_IO,
    EXIT_OK,
    EXIT_PARTIAL,
    cmd_benchmark,
    main,
)
from hatebench.corpus import CorpusRecord, LabeledCorpus, load_corpus, save_corpus
from hatebench.embedstore import EmbeddingMatrix, corpus_checksum, write_embeddings
from hatebench.gbdt import GbdtConfig, gbdt_train, save_gbdt
from hatebench.hbos import hbos_fit, save_hbos
from hatebench.pca import pca_fit, save_pca
from hatebench.runconfig import ConfigError, load_run_config

N_ROWS = 120
DIMS = {"alpha": 6, "beta": 4}


def build_corpus(n=N_ROWS):
    rng = np.random.default_rng(0)
    labels = rng.permutation(np.array([0, 1] * (n // 2)))
    records = [
        CorpusRecord(id=str(i), text=f"tekstas numeris {i}", label=int(labels[i]))
        for i in range(n)
    ]
    return LabeledCorpus(records=records, name="synthetic")


def embedding_for(corpus, dim, separation=2.5, seed=3):
    rng = np.random.default_rng(seed)
    y = corpus.labels
    X = rng.standard_normal((len(corpus), dim))
    X[:, 0] += np.where(y == 1, separation / 2.0, -separation / 2.0)
    return X.astype(np.float32)


def write_workspace(tmp_path, pca_k=3, seed=17):
    corpus = build_corpus()
    corpus_path = tmp_path / "corpus.jsonl"
    save_corpus(corpus, corpus_path)
    checksum = corpus_checksum(corpus.texts)
    for i, (name, dim) in enumerate(DIMS.items()):
        matrix = EmbeddingMatrix(
            data=embedding_for(corpus, dim, seed=3 + i),
            model_name=name,
            corpus_name=corpus.name,
            corpus_checksum=checksum,
        )
        write_embeddings(matrix, tmp_path / f"{name}.emb1")
    config = {
        "schema_version": 1,
        "corpus": {"path": "corpus.jsonl"},
        "embeddings": {name: f"{name}.emb1" for name in DIMS},
        "model_kinds": ["one_class_hbos", "two_class_gbdt"],
        "compressions": ["orig", "pca"],
        "pca_k": pca_k,
        "cv": {"k_folds": 4, "seed": seed},
        "hbos": {"n_bins": 10, "contamination": 0.01},
        "gbdt": {"max_iterations": 25, "early_stop_patience": 5, "min_samples_leaf": 5},
        "output_dir": "out",
    }
    config_path = tmp_path / "config.json"
    config_path.write_text(json.dumps(config, indent=2))
    return config_path


class TestPreprocess:
    def test_clean_corpus_passes_through(self, tmp_path, capsys):
        corpus = LabeledCorpus(
            records=[
                CorpusRecord(id="0", text="pirmas sakinys", label=0),
                CorpusRecord(id="1", text="antras sakinys", label=1),
                CorpusRecord(id="2", text="dar vienas", label=0),
            ]
        )
        src = tmp_path / "in.jsonl"
        save_corpus(corpus, src)
        out = tmp_path / "out.jsonl"
        assert main(["preprocess", "--in", str(src), "--out", str(out)]) == EXIT_OK
        assert load_corpus(out).texts == corpus.texts
        report = json.loads((tmp_path / "out.jsonl.report.json").read_text())
        for key in (
            "urls_removed",
            "exclamations_removed",
            "emojis_replaced",
            "encoding_fixes",
            "punctuation_runs_collapsed",
        ):
            assert report[key] == 0
        assert report["n_texts"] == 3

    def test_url_and_exclamation_counts(self, tmp_path):
        corpus = LabeledCorpus(records=[CorpusRecord(id="0", text="http://x !!", label=0)])
        src = tmp_path / "in.jsonl"
        save_corpus(corpus, src)
        out = tmp_path / "out.jsonl"
        assert main(["preprocess", "--in", str(src), "--out", str(out)]) == EXIT_OK
        report = json.loads((tmp_path / "out.jsonl.report.json").read_text())
        assert report["urls_removed"] == 1
        assert report["exclamations_removed"] == 2

    def test_mojibake_lines_counted(self, tmp_path):
        corpus = LabeledCorpus(
            records=[
                CorpusRecord(id="0", text="kava Ã©ra gera", label=0),
                CorpusRecord(id="1", text="Ã©tiketas", label=1),
            ]
        )
        src = tmp_path / "in.jsonl"
        save_corpus(corpus, src)
        out = tmp_path / "norm.jsonl"
        report_path = tmp_path / "counts.json"
        code = main(
            ["preprocess", "--in", str(src), "--out", str(out), "--report", str(report_path)]
        )
        assert code == EXIT_OK
        report = json.loads(report_path.read_text())
        assert report["encoding_fixes"] == 2
        assert load_corpus(out).texts == ["kava éra gera", "étiketas"]

    def test_parse_error_names_line(self, tmp_path, capsys):
        src = tmp_path / "bad.jsonl"
        src.write_text('{"id": "0", "text": "ok", "labels": 0}\nnot json\n')
        out = tmp_path / "out.jsonl"
        assert main(["preprocess", "--in", str(src), "--out", str(out)]) == EXIT_CONFIG
        assert "line 2" in capsys.readouterr().err

    def test_missing_input_is_io_error(self, tmp_path):
        code = main(
            ["preprocess", "--in", str(tmp_path / "no.jsonl"), "--out", str(tmp_path / "o.jsonl")]
        )
        assert code == EXIT_IO


class TestRunConfig:
    def test_valid_config_loads(self, tmp_path):
        config_path = write_workspace(tmp_path)
        config = load_run_config(config_path)
        assert config.k_folds == 4 and config.seed == 17
        assert config.corpus_path == tmp_path / "corpus.jsonl"
        assert sorted(config.embeddings) == ["alpha", "beta"]
        assert config.gbdt.max_iterations == 25

    def test_seed_mandatory(self, tmp_path):
        config_path = write_workspace(tmp_path)
        doc = json.loads(config_path.read_text())
        del doc["cv"]["seed"]
        config_path.write_text(json.dumps(doc))
        with pytest.raises(ConfigError, match="seed"):
            load_run_config(config_path)
        # a command-line seed satisfies the requirement
        assert load_run_config(config_path, seed=5).seed == 5

    def test_missing_embedding_file(self, tmp_path):
        config_path = write_workspace(tmp_path)
        (tmp_path / "beta.emb1").unlink()
        with pytest.raises(ConfigError, match="beta"):
            load_run_config(config_path)

    def test_wrong_schema_version(self, tmp_path):
        config_path = write_workspace(tmp_path)
        doc = json.loads(config_path.read_text())
        doc["schema_version"] = 2
        config_path.write_text(json.dumps(doc))
        with pytest.raises(ConfigError, match="schema_version"):
            load_run_config(config_path)

    def test_gbdt_seed_rejected(self, tmp_path):
        config_path = write_workspace(tmp_path)
        doc = json.loads(config_path.read_text())
        doc["gbdt"]["seed"] = 1
        config_path.write_text(json.dumps(doc))
        with pytest.raises(ConfigError, match="gbdt.seed"):
            load_run_config(config_path)

    def test_overrides(self, tmp_path):
        config_path = write_workspace(tmp_path)
        config = load_run_config(config_path, seed=99, output_dir=tmp_path / "elsewhere")
        assert config.seed == 99
        assert config.output_dir == tmp_path / "elsewhere"


class TestCheck:
    def test_valid_inputs(self, tmp_path, capsys):
        config_path = write_workspace(tmp_path)
        assert main(["check", "--config", str(config_path)]) == EXIT_OK
        summary = json.loads(capsys.readouterr().out)
        assert summary["rows"] == N_ROWS
        assert summary["cells"] == 8
        assert summary["embeddings"] == {"alpha": 6, "beta": 4}

    def test_checksum_mismatch(self, tmp_path, capsys):
        config_path = write_workspace(tmp_path)
        corpus = load_corpus(tmp_path / "corpus.jsonl")
        altered = LabeledCorpus(
            records=[
                CorpusRecord(id=r.id, text=r.text + " x", label=r.label)
                for r in corpus.records
            ],
            name=corpus.name,
        )
        save_corpus(altered, tmp_path / "corpus.jsonl")
        assert main(["check", "--config", str(config_path)]) == EXIT_CONFIG
        assert "checksum" in capsys.readouterr().err

    def test_bad_config_json(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text("{nope")
        assert main(["check", "--config", str(bad)]) == EXIT_CONFIG


@pytest.fixture(scope="module")
def benchmark_run(tmp_path_factory):
    tmp_path = tmp_path_factory.mktemp("bench")
    config_path = write_workspace(tmp_path)
    code = main(["benchmark", "--config", str(config_path), "--jobs", "1"])
    return tmp_path, config_path, code


class TestBenchmark:
    def test_exit_ok(self, benchmark_run):
        _, _, code = benchmark_run
        assert code == EXIT_OK

    def test_eight_cells_and_one_table(self, benchmark_run):
        tmp_path, _, _ = benchmark_run
        out = tmp_path / "out"
        reports = sorted(p.name for p in (out / "reports").glob("*.json"))
        assert len(reports) == 8
        for name in ("alpha", "beta"):
            for kind in ("1c", "2c"):
                for comp in ("orig", "pca"):
                    assert f"{name}_{kind}_{comp}.json" in reports
                    curve_dir = out / "curves" / f"{name}_{kind}_{comp}"
                    assert sorted(p.name for p in curve_dir.iterdir()) == [
                        "prc.csv",
                        "prc.svg",
                        "roc.csv",
                        "roc.svg",
                    ]
        assert (out / "results.md").is_file()
        assert (out / "results.csv").is_file()
        manifest = json.loads((out / "grid.json").read_text())
        assert len(manifest["cells"]) == 8 and manifest["failures"] == {}

    def test_scores_csv_uses_corpus_ids(self, benchmark_run):
        tmp_path, _, _ = benchmark_run
        lines = (tmp_path / "out" / "scores" / "alpha_2c_orig.csv").read_text().splitlines()
        assert lines[0] == "id,label,score,fold"
        assert len(lines) == N_ROWS + 1
        assert lines[1].split(",")[0] == "0"

    def test_supervised_beats_one_class_everywhere(self, benchmark_run):
        tmp_path, _, _ = benchmark_run
        rows = (tmp_path / "out" / "results.csv").read_text().strip().splitlines()[1:]
        accuracy = {row.split(",")[0]: row.split(",")[1:3] for row in rows}
        for name in ("alpha", "beta"):
            for col in (0, 1):
                assert float(accuracy[f"2c {name}"][col]) > float(accuracy[f"1c {name}"][col])

    def test_rerun_is_byte_identical(self, benchmark_run, tmp_path):
        bench_tmp, config_path, _ = benchmark_run
        assert (
            main(["benchmark", "--config", str(config_path), "--jobs", "1", "--out", str(tmp_path)])
            == EXIT_OK
        )
        first = bench_tmp / "out"
        for path in sorted(p for p in tmp_path.rglob("*") if p.is_file()):
            twin = first / path.relative_to(tmp_path)
            assert twin.read_bytes() == path.read_bytes(), path.name

    def test_parallel_matches_serial(self, benchmark_run, tmp_path):
        bench_tmp, config_path, _ = benchmark_run
        assert (
            main(["benchmark", "--config", str(config_path), "--jobs", "2", "--out", str(tmp_path)])
            == EXIT_OK
        )
        first = bench_tmp / "out"
        for path in sorted(p for p in tmp_path.rglob("*") if p.is_file()):
            twin = first / path.relative_to(tmp_path)
            assert twin.read_bytes() == path.read_bytes(), path.name

    def test_seed_override_changes_results(self, benchmark_run, tmp_path):
        bench_tmp, config_path, _ = benchmark_run
        code = main(
            [
                "benchmark",
                "--config",
                str(config_path),
                "--jobs",
                "1",
                "--seed",
                "18",
                "--out",
                str(tmp_path),
            ]
        )
        assert code == EXIT_OK
        first = (bench_tmp / "out" / "results.csv").read_bytes()
        assert (tmp_path / "results.csv").read_bytes() != first

    def test_partial_failure_keeps_other_cells(self, tmp_path, capsys):
        # pca_k=5 is fine for alpha (d=6) but exceeds beta (d=4)
        config_path = write_workspace(tmp_path, pca_k=5)
        code = main(["benchmark", "--config", str(config_path), "--jobs", "1"])
        assert code == EXIT_PARTIAL
        manifest = json.loads((tmp_path / "out" / "grid.json").read_text())
        assert sorted(manifest["failures"]) == ["beta_1c_pca", "beta_2c_pca"]
        assert len(manifest["cells"]) == 6
        for message in manifest["failures"].values():
            assert "fold" in message
        table = (tmp_path / "out" / "results.csv").read_text()
        beta_1c = [r for r in table.splitlines() if r.startswith("1c beta")][0]
        assert "—" in beta_1c
        assert "failed" in capsys.readouterr().err

    def test_checksum_mismatch_aborts_before_training(self, tmp_path, capsys):
        config_path = write_workspace(tmp_path)
        corpus = load_corpus(tmp_path / "corpus.jsonl")
        altered = LabeledCorpus(
            records=[CorpusRecord(id=r.id, text=r.text + "!", label=r.label) for r in corpus.records],
            name=corpus.name,
        )
        save_corpus(altered, tmp_path / "corpus.jsonl")
        assert main(["benchmark", "--config", str(config_path)]) == EXIT_CONFIG
        assert not (tmp_path / "out").exists()


class TestReportCommand:
    def test_rerender_matches_original(self, benchmark_run, tmp_path, capsys):
        bench_tmp, _, _ = benchmark_run
        out = bench_tmp / "out"
        originals = {
            p.relative_to(out): p.read_bytes()
            for p in out.rglob("*")
            if p.is_file() and p.suffix in (".md", ".svg") or p.name == "results.csv"
        }
        (out / "results.md").unlink()
        assert main(["report", "--out", str(out)]) == EXIT_OK
        for rel, blob in originals.items():
            assert (out / rel).read_bytes() == blob, rel

    def test_missing_manifest_is_io_error(self, tmp_path):
        assert main(["report", "--out", str(tmp_path)]) == EXIT_IO


class TestScore:
    @pytest.fixture()
    def scored_workspace(self, tmp_path):
        write_workspace(tmp_path)
        corpus = load_corpus(tmp_path / "corpus.jsonl")
        from hatebench.embedstore import read_embeddings

        matrix = read_embeddings(tmp_path / "alpha.emb1")
        return tmp_path, corpus, matrix

    def test_gbdt_scores(self, scored_workspace):
        tmp_path, corpus, matrix = scored_workspace
        model = gbdt_train(
            matrix.data,
            corpus.labels,
            GbdtConfig(max_iterations=20, early_stop_patience=5, min_samples_leaf=5, seed=1),
        )
        model_path = tmp_path / "model.json"
        save_gbdt(model, model_path)
        out = tmp_path / "scores.csv"
        code = main(
            ["score", "--model", str(model_path), "--embeddings", str(tmp_path / "alpha.emb1"), "--out", str(out)]
        )
        assert code == EXIT_OK
        lines = out.read_text().strip().splitlines()
        assert lines[0] == "row,score"
        assert len(lines) == N_ROWS + 1
        scores = np.array([float(l.split(",")[1]) for l in lines[1:]])
        assert ((scores >= 0) & (scores <= 1)).all()
        # supervised model must separate the synthetic classes
        assert scores[corpus.labels == 1].mean() > scores[corpus.labels == 0].mean()

    def test_hbos_with_pca_model(self, scored_workspace):
        tmp_path, corpus, matrix = scored_workspace
        pca = pca_fit(matrix.data, 3)
        pca_path = tmp_path / "proj.pca1"
        save_pca(pca, pca_path)
        from hatebench.pca import pca_transform

        hbos = hbos_fit(pca_transform(pca, matrix.data[corpus.labels == 1]))
        model_path = tmp_path / "hbos.json"
        save_hbos(hbos, model_path)
        out = tmp_path / "scores.csv"
        code = main(
            [
                "score",
                "--model",
                str(model_path),
                "--embeddings",
                str(tmp_path / "alpha.emb1"),
                "--pca-model",
                str(pca_path),
                "--out",
                str(out),
            ]
        )
        assert code == EXIT_OK
        lines = out.read_text().strip().splitlines()[1:]
        scores = np.array([float(l.split(",")[1]) for l in lines])
        assert scores[corpus.labels == 1].mean() > scores[corpus.labels == 0].mean()

    def test_unknown_model_kind(self, scored_workspace):
        tmp_path, _, _ = scored_workspace
        bogus = tmp_path / "bogus.json"
        bogus.write_text('{"kind": "mystery"}')
        code = main(
            ["score", "--model", str(bogus), "--embeddings", str(tmp_path / "alpha.emb1"), "--out", str(tmp_path / "s.csv")]
        )
        assert code == EXIT_CONFIG
