import json
import xml.etree.ElementTree as ET

import pytest

from riskcurves.curves import SweepSpec, run_feature_curve
from riskcurves.data import CsvSource, GaussianSpec
from riskcurves.errors import (
    InvariantViolation,
    MissingFile,
    ParseError,
    UnknownKey,
)
from riskcurves.io_cli import (
    cli_main,
    config_from_dict,
    emit_csv,
    emit_json,
    emit_svg_plot,
    load_config,
    load_result,
    result_from_json_dict,
    result_to_json_dict,
)
from riskcurves.learners import MaxMargin, Mnlr, Ridge, SemiSupPfld


def _tiny_result(keep_reps=True, learners=(Mnlr(),), grid=(2, 4, 8)):
    spec = SweepSpec(
        kind="feature_curve",
        grid=grid,
        learners=learners,
        data_source=GaussianSpec(dim=8, informative=2, separation=2.0),
        fixed_n=6,
        test_size=94,
        reps=3,
        base_seed=5,
    )
    return run_feature_curve(spec, keep_reps=keep_reps)


def _minimal_config(**extra):
    cfg = {
        "kind": "feature_curve",
        "grid": [2, 4],
        "seed": 9,
        "learners": [{"kind": "mnlr"}],
    }
    cfg.update(extra)
    return cfg


# -- config ------------------------------------------------------------------


def test_minimal_config_gets_documented_defaults():
    rc = config_from_dict(_minimal_config())
    sweep = rc.sweep
    assert sweep.fixed_n == 40
    assert sweep.test_size == 2000
    assert sweep.reps == 50
    assert sweep.risk_metric == "zero_one"
    assert sweep.base_seed == 9
    assert sweep.data_source == GaussianSpec(dim=120, informative=10, separation=2.5)
    assert rc.out_csv is None and rc.out_json is None and rc.out_svg is None
    assert rc.keep_reps is False


def test_config_rejects_unknown_top_key():
    with pytest.raises(UnknownKey) as err:
        config_from_dict(_minimal_config(leaners=[]))
    assert "leaners" in str(err.value)


def test_config_rejects_alpha_grid_with_zero():
    cfg = _minimal_config(kind="alpha_curve", grid=[0, 1.0])
    with pytest.raises(InvariantViolation):
        config_from_dict(cfg)


def test_config_learner_validation():
    with pytest.raises(InvariantViolation):
        config_from_dict(_minimal_config(learners=[{"kind": "ridge"}]))
    with pytest.raises(InvariantViolation):
        config_from_dict(_minimal_config(learners=[{"kind": "nonsense"}]))
    with pytest.raises(UnknownKey):
        config_from_dict(_minimal_config(learners=[{"kind": "mnlr", "tol": 1e-3}]))
    with pytest.raises(InvariantViolation):
        config_from_dict(_minimal_config(learners=[]))
    with pytest.raises(InvariantViolation):
        config_from_dict(_minimal_config(learners=[{"kind": "semisup_pfld"}]))
    rc = config_from_dict(
        _minimal_config(
            learners=[
                {"kind": "ridge", "lambda": 0.1, "name": "r1"},
                {"kind": "max_margin", "c": 10, "max_iters": 100},
                {"kind": "semisup_pfld", "unlabeled_count": 12},
                {"kind": "pfld"},
            ]
        )
    )
    assert rc.sweep.learners == (
        Ridge(lam=0.1, name="r1"),
        MaxMargin(c=10.0, max_iters=100),
        SemiSupPfld(unlabeled_count=12),
        __import__("riskcurves").learners.Pfld(),
    )


def test_config_data_validation():
    with pytest.raises(InvariantViolation):
        config_from_dict(_minimal_config(data={"source": "csv"}))
    with pytest.raises(InvariantViolation):
        config_from_dict(_minimal_config(data={"source": "parquet"}))
    with pytest.raises(UnknownKey):
        config_from_dict(_minimal_config(data={"source": "gaussian", "seed": 3}))
    rc = config_from_dict(
        _minimal_config(
            data={
                "source": "csv",
                "path": "x.csv",
                "label_column": "y",
                "positive_label": "p",
                "standardize": False,
            }
        )
    )
    assert rc.sweep.data_source == CsvSource("x.csv", "y", "p", standardize=False)


def test_config_wrong_fixed_field():
    with pytest.raises(InvariantViolation):
        config_from_dict(_minimal_config(fixed_N=8))
    cfg = _minimal_config(kind="learning_curve", grid=[4, 8], fixed_n=8)
    with pytest.raises(InvariantViolation):
        config_from_dict(cfg)


def test_config_type_errors():
    with pytest.raises(InvariantViolation):
        config_from_dict(_minimal_config(seed="one"))
    with pytest.raises(InvariantViolation):
        config_from_dict(_minimal_config(reps=True))
    with pytest.raises(InvariantViolation):
        config_from_dict(_minimal_config(out_csv=7))
    with pytest.raises(InvariantViolation):
        config_from_dict({"grid": [1], "seed": 0, "learners": [{"kind": "mnlr"}]})


def test_load_config_parse_error_carries_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"kind": "feature_curve",\n  "grid": [1, }', encoding="utf-8")
    with pytest.raises(ParseError) as err:
        load_config(p)
    assert "line 2" in str(err.value)


def test_load_config_missing_file(tmp_path):
    with pytest.raises(MissingFile):
        load_config(tmp_path / "absent.json")


# -- CSV emission --------------------------------------------------------------


def test_emit_csv_structure(tmp_path):
    result = _tiny_result(keep_reps=False, grid=(2, 4))
    path = tmp_path / "out.csv"
    emit_csv(result, path)
    raw = path.read_bytes()
    assert b"\r" not in raw
    assert raw.endswith(b"\n")
    lines = raw.decode().splitlines()
    assert len(lines) == 3  # header + one row per (point, learner)
    assert lines[0] == (
        "curve_kind,x_name,x_value,learner,rep_count,mean_risk,std_risk,"
        "stderr_risk,min_risk,max_risk,base_seed"
    )
    first = lines[1].split(",")
    assert first[0] == "feature_curve" and first[1] == "num_features"
    assert first[2] == "2" and first[3] == "mnlr" and first[4] == "3"
    assert first[-1] == "5"
    assert not (tmp_path / "out.csv.reps.csv").exists()


def test_emit_csv_round_trips_17_digits(tmp_path):
    result = _tiny_result(keep_reps=False)
    path = tmp_path / "out.csv"
    emit_csv(result, path)
    rows = path.read_text().splitlines()[1:]
    by_x = {float(r.split(",")[2]): r.split(",") for r in rows}
    for point in result.points:
        cells = by_x[point.x_value]
        s = point.stats["mnlr"]
        assert float(cells[5]) == s.mean_risk
        assert float(cells[6]) == s.std_risk
        assert float(cells[7]) == s.stderr_risk


def test_emit_csv_is_deterministic(tmp_path):
    result = _tiny_result()
    emit_csv(result, tmp_path / "a.csv")
    emit_csv(result, tmp_path / "b.csv")
    assert (tmp_path / "a.csv").read_bytes() == (tmp_path / "b.csv").read_bytes()


def test_emit_csv_learner_ordering(tmp_path):
    result = _tiny_result(learners=(Ridge(lam=0.5), Mnlr()), grid=(2, 4))
    emit_csv(result, tmp_path / "o.csv")
    names = [line.split(",")[3] for line in (tmp_path / "o.csv").read_text().splitlines()[1:]]
    assert names == ["mnlr", "ridge(0.5)", "mnlr", "ridge(0.5)"]


def test_emit_csv_reps_companion(tmp_path):
    result = _tiny_result(keep_reps=True, grid=(2, 4))
    path = tmp_path / "out.csv"
    emit_csv(result, path)
    companion = tmp_path / "out.csv.reps.csv"
    lines = companion.read_text().splitlines()
    assert lines[0] == "curve_kind,x_name,x_value,learner,rep,risk"
    assert len(lines) == 1 + 2 * 3  # 2 points x 3 reps
    for pi, x in enumerate((2.0, 4.0)):
        for rep in range(3):
            cells = lines[1 + pi * 3 + rep].split(",")
            assert float(cells[2]) == x and int(cells[4]) == rep
            assert float(cells[5]) == result.rep_risks["mnlr"][pi][rep]


# -- JSON round trip -----------------------------------------------------------


def test_json_round_trip_equality(tmp_path):
    for keep in (False, True):
        result = _tiny_result(keep_reps=keep, learners=(Mnlr(), Ridge(lam=0.25)))
        path = tmp_path / f"r{keep}.json"
        emit_json(result, path)
        assert load_result(path) == result


def test_json_dict_round_trip_preserves_spec_types():
    result = _tiny_result(learners=(SemiSupPfld(unlabeled_count=4), MaxMargin(c=7.0)))
    loaded = result_from_json_dict(json.loads(json.dumps(result_to_json_dict(result))))
    assert loaded.spec == result.spec
    assert loaded == result


def test_result_from_json_rejects_unknown_keys():
    result = _tiny_result()
    doc = result_to_json_dict(result)
    doc["bogus"] = 1
    with pytest.raises(UnknownKey):
        result_from_json_dict(doc)


def test_emit_json_is_deterministic(tmp_path):
    result = _tiny_result()
    emit_json(result, tmp_path / "a.json")
    emit_json(result, tmp_path / "b.json")
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()


# -- SVG -----------------------------------------------------------------------


def test_svg_single_point(tmp_path):
    result = _tiny_result(grid=(4,))
    path = tmp_path / "one.svg"
    emit_svg_plot(result, path)
    text = path.read_text()
    ET.fromstring(text)  # well-formed XML
    assert "<polyline" not in text
    assert "<circle" in text
    assert text.count('class="threshold"') == 1


def test_svg_multi_learner(tmp_path):
    result = _tiny_result(learners=(Mnlr(), Ridge(lam=0.5, name="shrunk")))
    path = tmp_path / "two.svg"
    emit_svg_plot(result, path)
    text = path.read_text()
    ET.fromstring(text)
    assert text.count("<polyline") == 2
    assert ">mnlr</text>" in text and ">shrunk</text>" in text
    assert text.count('class="threshold"') == 1


def test_svg_log_scale(tmp_path):
    result = _tiny_result()
    emit_svg_plot(result, tmp_path / "log.svg", log_x=True)
    ET.fromstring((tmp_path / "log.svg").read_text())


def test_svg_escapes_names(tmp_path):
    result = _tiny_result(learners=(Mnlr(name="a<b&c"),))
    emit_svg_plot(result, tmp_path / "esc.svg")
    text = (tmp_path / "esc.svg").read_text()
    ET.fromstring(text)
    assert "a&lt;b&amp;c" in text


def test_atomic_write_leaves_no_temp_on_failure(tmp_path):
    result = _tiny_result()
    target = tmp_path / "adir"
    target.mkdir()
    with pytest.raises(OSError):
        emit_csv(result, target)  # os.replace onto a directory fails
    assert [p.name for p in tmp_path.iterdir()] == ["adir"]
    assert list(target.iterdir()) == []


# -- CLI -----------------------------------------------------------------------


def _write_config(tmp_path, **overrides):
    cfg = {
        "kind": "feature_curve",
        "grid": [2, 4, 6],
        "seed": 3,
        "learners": [{"kind": "mnlr"}],
        "fixed_n": 6,
        "test_size": 94,
        "reps": 3,
        "data": {"source": "gaussian", "dim": 8, "informative": 2, "separation": 2.0},
    }
    cfg.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg), encoding="utf-8")
    return path


def test_cli_run_and_outputs_are_byte_identical(tmp_path):
    cfg = _write_config(tmp_path)
    for tag, extra in (("1", []), ("2", []), ("3", ["--workers", "3"])):
        code = cli_main(
            [
                "feature-curve",
                "--config",
                str(cfg),
                "--out-csv",
                str(tmp_path / f"r{tag}.csv"),
                "--out-json",
                str(tmp_path / f"r{tag}.json"),
                *extra,
            ]
        )
        assert code == 0
    base_csv = (tmp_path / "r1.csv").read_bytes()
    base_json = (tmp_path / "r1.json").read_bytes()
    for tag in ("2", "3"):
        assert (tmp_path / f"r{tag}.csv").read_bytes() == base_csv
        assert (tmp_path / f"r{tag}.json").read_bytes() == base_json


def test_cli_missing_config_names_path(tmp_path, capsys):
    code = cli_main(["feature-curve", "--config", str(tmp_path / "nope.json"), "--out-csv", "x.csv"])
    assert code == 2
    assert "nope.json" in capsys.readouterr().err


def test_cli_bad_config_exits_2_and_writes_nothing(tmp_path):
    cfg = _write_config(tmp_path, reps=0)
    out = tmp_path / "never.csv"
    assert cli_main(["feature-curve", "--config", str(cfg), "--out-csv", str(out)]) == 2
    assert not out.exists()


def test_cli_kind_mismatch(tmp_path, capsys):
    cfg = _write_config(tmp_path)
    assert cli_main(["learning-curve", "--config", str(cfg), "--out-csv", "x.csv"]) == 2
    assert "does not match" in capsys.readouterr().err


def test_cli_requires_an_output(tmp_path, capsys):
    cfg = _write_config(tmp_path)
    assert cli_main(["feature-curve", "--config", str(cfg)]) == 2
    assert "no output requested" in capsys.readouterr().err


def test_cli_seed_override_changes_results(tmp_path):
    cfg = _write_config(tmp_path)
    a, b, c = (tmp_path / n for n in ("a.csv", "b.csv", "c.csv"))
    assert cli_main(["feature-curve", "--config", str(cfg), "--out-csv", str(a)]) == 0
    assert cli_main(["feature-curve", "--config", str(cfg), "--out-csv", str(b), "--seed", "99"]) == 0
    assert cli_main(["feature-curve", "--config", str(cfg), "--out-csv", str(c), "--seed", "3"]) == 0
    assert a.read_bytes() != b.read_bytes()
    assert a.read_bytes() == c.read_bytes()


def test_cli_keep_reps_flag(tmp_path):
    cfg = _write_config(tmp_path)
    out = tmp_path / "kept.csv"
    assert cli_main(["feature-curve", "--config", str(cfg), "--out-csv", str(out), "--keep-reps"]) == 0
    assert (tmp_path / "kept.csv.reps.csv").exists()


def test_cli_reps_override(tmp_path):
    cfg = _write_config(tmp_path)
    out = tmp_path / "reps.csv"
    assert cli_main(["feature-curve", "--config", str(cfg), "--out-csv", str(out), "--reps", "5"]) == 0
    assert out.read_text().splitlines()[1].split(",")[4] == "5"


def test_cli_io_failure_exit_code(tmp_path):
    cfg = _write_config(tmp_path)
    out = tmp_path / "missing-dir" / "x.csv"
    assert cli_main(["feature-curve", "--config", str(cfg), "--out-csv", str(out)]) == 4


def test_cli_report(tmp_path, capsys):
    cfg = _write_config(tmp_path, learners=[{"kind": "mnlr"}, {"kind": "ridge", "lambda": 0.5}])
    out = tmp_path / "r.json"
    assert cli_main(["feature-curve", "--config", str(cfg), "--out-json", str(out)]) == 0
    capsys.readouterr()
    assert cli_main(["report", "--in", str(out)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("mnlr: peak_x=")
    assert "at_interpolation=" in lines[0]
    assert cli_main(["report", "--in", str(out), "--learner", "ridge(0.5)"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 1 and lines[0].startswith("ridge(0.5): ")


def test_cli_report_missing_file(tmp_path, capsys):
    assert cli_main(["report", "--in", str(tmp_path / "absent.json")]) == 4


def test_cli_report_unknown_learner(tmp_path, capsys):
    cfg = _write_config(tmp_path)
    out = tmp_path / "r.json"
    assert cli_main(["feature-curve", "--config", str(cfg), "--out-json", str(out)]) == 0
    assert cli_main(["report", "--in", str(out), "--learner", "nope"]) == 3


def test_cli_argparse_errors_map_to_config_exit():
    assert cli_main(["feature-curve"]) == 2  # missing --config
    assert cli_main(["unknown-command"]) == 2
