import json
import math

import numpy as np
import pytest

from conftest import run_cli

SQRT2 = math.sqrt(2.0)


def parse_tsv_map(stdout: bytes) -> dict:
    """First-cell-keyed rows of a key/value style tsv report."""
    out = {}
    for line in stdout.decode().splitlines():
        cells = line.split("\t")
        out.setdefault(cells[0], []).append(cells[1:])
    return out


def synth_args(out_dir, **overrides):
    args = {
        "dim": 8,
        "levels": 4,
        "per-level": 12,
        "direction-seed": 5,
        "noise-seed": 6,
    }
    args.update(overrides)
    argv = ["synth", "--out-dir", str(out_dir)]
    for key, value in args.items():
        argv.extend([f"--{key}", str(value)])
    return argv


@pytest.fixture
def cone_dir(tmp_path):
    result = run_cli(synth_args("data"), cwd=tmp_path)
    assert result.returncode == 0, result.stderr
    return tmp_path


def data_args(name="data"):
    return [
        "--embeddings", f"{name}/embeddings.jsonl",
        "--labels", f"{name}/labels.tsv",
        "--levels", f"{name}/levels.txt",
    ]


def test_synth_writes_dataset(cone_dir):
    data = cone_dir / "data"
    for name in ("embeddings.jsonl", "labels.tsv", "levels.txt", "true_direction.jsonl"):
        assert (data / name).exists()
    assert len((data / "labels.tsv").read_text().splitlines()) == 48
    assert (data / "levels.txt").read_text() == "L1\nL2\nL3\nL4\n"


def test_fit_one_pair_report(one_pair_files):
    result = run_cli(
        ["fit", "--embeddings", "emb.jsonl", "--labels", "labels.tsv",
         "--levels", "levels.txt", "--format", "tsv"],
        cwd=one_pair_files,
    )
    assert result.returncode == 0, result.stderr
    report = parse_tsv_map(result.stdout)
    w = [float(v) for v in report["w"][0][0].split()]
    assert w == pytest.approx([-1 / SQRT2, 1 / SQRT2], abs=1e-12)
    assert float(report["objective"][0][0]) == pytest.approx(SQRT2)
    assert report["constraints"][0][0] == "1"
    # table format at 8 decimals carries the rounded coordinates
    table = run_cli(
        ["fit", "--embeddings", "emb.jsonl", "--labels", "labels.tsv",
         "--levels", "levels.txt", "--format", "table", "--precision", "8"],
        cwd=one_pair_files,
    )
    assert b"-0.70710678" in table.stdout
    assert b"0.70710678" in table.stdout


def test_fit_degenerate_exit_code(tmp_path):
    (tmp_path / "emb.jsonl").write_text(
        '{"id": "a", "vector": [1.0, 0.0]}\n{"id": "b", "vector": [1.0, 0.0]}\n'
    )
    (tmp_path / "labels.tsv").write_text("a\tL1\nb\tL2\n")
    (tmp_path / "levels.txt").write_text("L1\nL2\n")
    result = run_cli(
        ["fit", "--embeddings", "emb.jsonl", "--labels", "labels.tsv",
         "--levels", "levels.txt"],
        cwd=tmp_path,
    )
    assert result.returncode == 6
    assert b"DegenerateDirection" in result.stderr
    assert result.stdout == b""


def test_fit_recovers_synthetic_direction(cone_dir):
    result = run_cli(["fit", *data_args(), "--format", "tsv"], cwd=cone_dir)
    assert result.returncode == 0, result.stderr
    w = np.array(
        [float(v) for v in parse_tsv_map(result.stdout)["w"][0][0].split()]
    )
    truth = json.loads(
        (cone_dir / "data" / "true_direction.jsonl").read_text()
    )["vector"]
    assert abs(float(w @ np.asarray(truth))) >= 0.99


def test_fit_modes(cone_dir):
    for mode in ("adjacent", "pair:L1:L3", "item:L2-0003"):
        result = run_cli(
            ["fit", *data_args(), "--mode", mode, "--format", "tsv"], cwd=cone_dir
        )
        assert result.returncode == 0, result.stderr


def test_score_matches_library(cone_dir):
    from conefit import compatibility_score, read_embeddings, read_labels

    result = run_cli(["score", *data_args(), "--format", "tsv"], cwd=cone_dir)
    assert result.returncode == 0, result.stderr
    lines = result.stdout.decode().splitlines()
    assert lines[0] == "pair\tK\tdim\tscore"
    embeddings = read_embeddings(cone_dir / "data" / "embeddings.jsonl")
    labels = read_labels(cone_dir / "data" / "labels.tsv", cone_dir / "data" / "levels.txt")
    expected, k = compatibility_score(embeddings, labels, (0, 1))
    row = lines[1].split("\t")
    assert row[0] == "L1:L2"
    assert int(row[1]) == k
    assert int(row[2]) == 8
    assert float(row[3]) == expected


def test_rank_layouts(cone_dir):
    second = run_cli(
        synth_args("m2", **{"noise-seed": 7, "spreads": "0.2,0.4,0.6,0.8"}),
        cwd=cone_dir,
    )
    assert second.returncode == 0
    base_args = [
        "--model", "base=data/embeddings.jsonl",
        "--model", "noisy=m2/embeddings.jsonl",
        "--labels", "data/labels.tsv",
        "--levels", "data/levels.txt",
    ]
    ranking = run_cli(["rank", *base_args, "--format", "tsv"], cwd=cone_dir)
    assert ranking.returncode == 0, ranking.stderr
    lines = ranking.stdout.decode().splitlines()
    assert lines[0] == "pair\trank\tmodel\tdim\tscore"
    first_pair_rows = [l.split("\t") for l in lines[1:3]]
    assert [r[0] for r in first_pair_rows] == ["L1:L2", "L1:L2"]
    scores = [float(r[4]) for r in first_pair_rows]
    assert scores[0] >= scores[1]

    matrix = run_cli(
        ["rank", *base_args, "--layout", "matrix", "--format", "tsv"], cwd=cone_dir
    )
    lines = matrix.stdout.decode().splitlines()
    assert lines[0].split("\t")[:2] == ["model", "dim"]
    assert len(lines) == 3  # header + 2 models


def test_item_consistency_sampling(cone_dir):
    result = run_cli(
        ["item-consistency", *data_args(), "--anchor-level", "L2",
         "--sample", "5", "--seed", "3", "--format", "tsv"],
        cwd=cone_dir,
    )
    assert result.returncode == 0, result.stderr
    lines = result.stdout.decode().splitlines()
    assert lines[0] == "id\tlevel\tconsistency"
    assert len(lines) == 6
    assert all(line.split("\t")[1] == "L2" for line in lines[1:])

    single = run_cli(
        ["item-consistency", *data_args(), "--anchor-id", "L3-0001", "--format", "tsv"],
        cwd=cone_dir,
    )
    rows = single.stdout.decode().splitlines()
    assert len(rows) == 2
    assert rows[1].startswith("L3-0001\tL3\t")


def test_item_consistency_correlate(cone_dir):
    from conefit import item_consistency, read_embeddings, read_labels

    embeddings = read_embeddings(cone_dir / "data" / "embeddings.jsonl")
    labels = read_labels(cone_dir / "data" / "labels.tsv", cone_dir / "data" / "levels.txt")
    ids = [f"L2-{k:04d}" for k in range(12)]
    ref_lines = "".join(
        f"{i}\t{item_consistency(embeddings, labels, i)}\n" for i in ids
    )
    (cone_dir / "ref.tsv").write_text(ref_lines)
    result = run_cli(
        ["item-consistency", *data_args(), "--anchor-level", "L2",
         "--correlate-with", "ref.tsv", "--n-perm", "999", "--format", "tsv"],
        cwd=cone_dir,
    )
    assert result.returncode == 0, result.stderr
    report = parse_tsv_map(result.stdout)
    assert float(report["corr_rho"][0][0]) == pytest.approx(1.0)
    assert float(report["corr_p_value"][0][0]) <= 0.01


def test_correlate_plain_and_ids(tmp_path):
    (tmp_path / "a.txt").write_text("".join(f"{v}\n" for v in range(1, 11)))
    (tmp_path / "b.txt").write_text("".join(f"{v * 2}\n" for v in range(1, 11)))
    result = run_cli(
        ["correlate", "a.txt", "b.txt", "--n-perm", "999", "--seed", "1",
         "--format", "tsv"],
        cwd=tmp_path,
    )
    report = parse_tsv_map(result.stdout)
    assert float(report["rho"][0][0]) == 1.0
    assert float(report["p_value"][0][0]) <= 0.01

    (tmp_path / "ia.tsv").write_text("x\t1\ny\t2\nz\t3\nw\t4\n")
    (tmp_path / "ib.tsv").write_text("w\t8\nz\t6\ny\t4\nx\t2\nextra\t9\n")
    by_id = run_cli(
        ["correlate", "ia.tsv", "ib.tsv", "--n-perm", "999", "--format", "tsv"],
        cwd=tmp_path,
    )
    report = parse_tsv_map(by_id.stdout)
    assert report["n"][0][0] == "4"
    assert float(report["rho"][0][0]) == pytest.approx(1.0)


def test_baseline_report(cone_dir):
    result = run_cli(
        ["baseline", *data_args(), "--train-pair", "L1:L4",
         "--test-pair", "L2:L3", "--epochs", "50", "--format", "tsv"],
        cwd=cone_dir,
    )
    assert result.returncode == 0, result.stderr
    report = parse_tsv_map(result.stdout)
    assert report["train_pair"][0][0] == "L1:L4"
    assert [row[0] for row in report["val_accuracy"]] == ["0.1", "1.0", "10.0"]
    assert float(report["chosen_c"][0][0]) in (0.1, 1.0, 10.0)
    assert 0.0 <= float(report["test_accuracy"][0][0]) <= 1.0


def test_missing_file_exits_2(tmp_path):
    (tmp_path / "labels.tsv").write_text("a\tL1\n")
    (tmp_path / "levels.txt").write_text("L1\n")
    result = run_cli(
        ["fit", "--embeddings", "nope.jsonl", "--labels", "labels.tsv",
         "--levels", "levels.txt"],
        cwd=tmp_path,
    )
    assert result.returncode == 2
    assert b"missing input file" in result.stderr


def test_unknown_level_exit_code(cone_dir):
    result = run_cli(
        ["score", *data_args(), "--pairs", "L1:L9"], cwd=cone_dir
    )
    assert result.returncode == 17  # UnknownLevelError
    assert b"UnknownLevel" in result.stderr


def test_warnings_go_to_stderr(tmp_path):
    (tmp_path / "emb.jsonl").write_text('{"id": "a", "vector": [1.0, 0.0]}\n')
    (tmp_path / "labels.tsv").write_text("a\tL1\nmissing\tL2\n")
    (tmp_path / "levels.txt").write_text("L1\nL2\n")
    result = run_cli(
        ["score", "--embeddings", "emb.jsonl", "--labels", "labels.tsv",
         "--levels", "levels.txt", "--on-missing", "drop"],
        cwd=tmp_path,
    )
    # the drop shrinks the data to one level, a real error, but the warning
    # must still be on stderr and never on stdout
    assert b"warning:" in result.stderr
    assert b"warning" not in result.stdout


def test_reruns_are_byte_identical(cone_dir):
    invocations = [
        ["fit", *data_args(), "--format", "tsv"],
        ["score", *data_args(), "--format", "table", "--precision", "4"],
        ["item-consistency", *data_args(), "--anchor-level", "L3",
         "--sample", "4", "--seed", "9", "--format", "tsv"],
    ]
    for argv in invocations:
        first = run_cli(argv, cwd=cone_dir)
        second = run_cli(argv, cwd=cone_dir)
        assert first.returncode == second.returncode == 0
        assert first.stdout == second.stdout


def test_out_flag_writes_file(cone_dir):
    result = run_cli(
        ["score", *data_args(), "--out", "scores.tsv"], cwd=cone_dir
    )
    assert result.returncode == 0
    assert result.stdout == b""
    content = (cone_dir / "scores.tsv").read_text()
    assert content.startswith("pair\tK\tdim\tscore")
