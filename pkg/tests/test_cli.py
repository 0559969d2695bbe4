import filecmp
import json
import shutil

import pytest

from banglish_demand.cli import main
from conftest import PIPELINE

STAGES = ["ingest", "catalog", "match", "annotate", "train", "analyze"]


@pytest.fixture
def workdir(tmp_path):
    dst = tmp_path / "run"
    shutil.copytree(PIPELINE, dst)
    return dst


def run(config, *args):
    return main(["--config", str(config), *args])


def error_line(capsys):
    err = capsys.readouterr().err.strip().splitlines()
    return json.loads(err[-1])


def run_all(config, *args):
    for stage in STAGES:
        assert run(config, *args, stage) == 0, stage


def test_full_pipeline_matches_golden(workdir, capsys):
    run_all(workdir / "config.json")
    out = workdir / "out"
    for name in [
        "comments.csv", "catalog.csv", "corrections.csv", "entities.csv",
        "train.csv", "test.csv", "ner_train.json", "ner_test.json", "ner_train.txt",
        "ner_train_annotations.csv", "model.json", "train_log.csv",
        "analyzed.csv", "demand_report.csv", "demand_report.json", "demand_chart.svg",
    ]:
        assert (out / name).is_file(), name
    assert filecmp.cmp(out / "demand_report.csv", PIPELINE / "golden_report.csv", shallow=False)
    assert "devices ranked" in capsys.readouterr().out


def test_output_dir_override(workdir, tmp_path):
    other = tmp_path / "elsewhere"
    for stage in STAGES[:2]:
        assert run(workdir / "config.json", "--output-dir", str(other), stage) == 0
    assert (other / "catalog.csv").is_file()
    assert not (workdir / "out").exists()


def test_retraining_is_bit_identical(workdir):
    cfg = workdir / "config.json"
    run_all(cfg)
    first = (workdir / "out" / "model.json").read_bytes()
    assert run(cfg, "train") == 0
    assert (workdir / "out" / "model.json").read_bytes() == first


def test_seed_changes_split(workdir, tmp_path):
    cfg = workdir / "config.json"
    for seed, d in ((1, "a"), (2, "b")):
        for stage in STAGES[:4]:
            assert run(cfg, "--seed", str(seed), "--output-dir", str(tmp_path / d), stage) == 0
    assert (tmp_path / "a" / "train.csv").read_bytes() != (tmp_path / "b" / "train.csv").read_bytes()


def test_missing_model_is_input_error(workdir, capsys):
    cfg = workdir / "config.json"
    for stage in STAGES[:4]:
        assert run(cfg, stage) == 0
    assert run(cfg, "analyze") == 2
    err = error_line(capsys)
    assert err["error"] == "input" and err["command"] == "analyze"
    assert str(workdir / "out" / "model.json") in err["message"]


def test_stage_out_of_order(workdir, capsys):
    assert run(workdir / "config.json", "match") == 2
    assert "comments.csv" in error_line(capsys)["message"]


def test_missing_config_file(tmp_path, capsys):
    assert run(tmp_path / "nope.json", "ingest") == 1
    assert error_line(capsys)["error"] == "config"


@pytest.mark.parametrize("mutate", [
    lambda c: c.pop("output_dir"),
    lambda c: c["inputs"].pop("catalog"),
    lambda c: c["matcher"].update(max_edit_distance=-1),
    lambda c: c["matcher"].update(bogus=1),
    lambda c: c["report"].update(top_n=0),
    lambda c: c["client"].update(enabled=True),
])
def test_bad_config(workdir, capsys, mutate):
    path = workdir / "config.json"
    doc = json.loads(path.read_text())
    mutate(doc)
    path.write_text(json.dumps(doc))
    assert run(path, "ingest") == 1
    assert error_line(capsys)["exit_code"] == 1


def test_invalid_json_config(workdir, capsys):
    (workdir / "config.json").write_text("{not json")
    assert run(workdir / "config.json", "ingest") == 1


def test_missing_input_csv(workdir, capsys):
    (workdir / "scrape_page2.csv").unlink()
    assert run(workdir / "config.json", "ingest") == 2
    assert "scrape_page2.csv" in error_line(capsys)["message"]


def test_missing_column_is_data_error(workdir, capsys):
    (workdir / "scrape_page1.csv").write_text("who,said\nx,y\n")
    assert run(workdir / "config.json", "ingest") == 3
    assert error_line(capsys)["error"] == "data"


def test_single_class_labels_is_data_error(workdir, capsys):
    labels = workdir / "labels.csv"
    rows = labels.read_text().splitlines()
    labels.write_text("\n".join([rows[0]] + [r.rsplit(",", 1)[0] + ",pos" for r in rows[1:]]) + "\n")
    for stage in STAGES[:4]:
        assert run(workdir / "config.json", stage) == 0
    assert run(workdir / "config.json", "train") == 3
    assert error_line(capsys)["error"] == "data"


def test_threads_do_not_change_output(workdir, tmp_path):
    cfg = workdir / "config.json"
    for threads, d in ((1, "a"), (4, "b")):
        for stage in STAGES[:3]:
            assert run(cfg, "--threads", str(threads), "--output-dir", str(tmp_path / d), stage) == 0
    assert filecmp.cmp(tmp_path / "a" / "corrections.csv", tmp_path / "b" / "corrections.csv", shallow=False)
