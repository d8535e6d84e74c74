import logging

from ldforecast.cli import main
from ldforecast.data import dump_dataset


def _write(path, dataset):
    path.write_text(dump_dataset(dataset))
    return path


def test_single_dataset(tmp_path, make_dataset):
    src = _write(tmp_path / "a.yaml", make_dataset(sky=[108] * 3 + [101] * 9))
    out = tmp_path / "out"
    assert main(["generate", "--input", str(src), "--out", str(out), "--emit-intermediate"]) == 0
    assert sorted(p.name for p in out.iterdir()) == ["36038_2013-12-09.en.txt", "36038_2013-12-09.ld"]
    text = (out / "36038_2013-12-09.en.txt").read_text()
    assert text.startswith("Very cloudy skies at the beginning") and text.endswith(".\n")
    assert (out / "36038_2013-12-09.ld").read_text().startswith("LDv1\n")


def test_continue_on_error(tmp_path, make_dataset, caplog):
    data = tmp_path / "data"
    data.mkdir()
    _write(data / "1.yaml", make_dataset(municipality_id="36038"))
    (data / "2.yaml").write_text(dump_dataset(make_dataset(municipality_id="15078")).replace("101", "199", 1))
    _write(data / "3.yaml", make_dataset(municipality_id="27028"))
    out = tmp_path / "out"
    with caplog.at_level(logging.INFO, logger="ldforecast"):
        code = main(["generate", "--input", str(data), "--out", str(out)])
    assert code != 0
    assert sorted(p.name for p in out.iterdir()) == ["27028_2013-12-09.en.txt", "36038_2013-12-09.en.txt"]
    assert "2.yaml" in caplog.text
    assert "generated 2 of 3 forecasts, 1 failed" in caplog.text


def test_unknown_municipality_is_per_dataset(tmp_path, make_dataset):
    src = _write(tmp_path / "a.yaml", make_dataset(municipality_id="99999"))
    assert main(["generate", "--input", str(src), "--out", str(tmp_path / "o")]) == 1


def test_climate_flag(tmp_path, make_dataset):
    src = _write(tmp_path / "a.yaml", make_dataset(municipality_id="99999"))
    climate = tmp_path / "climate.csv"
    climate.write_text("municipality_id,mean_tmax,mean_tmin\n99999,15,7\n")
    assert main(["generate", "--input", str(src), "--climate", str(climate),
                 "--out", str(tmp_path / "o")]) == 0


def test_unknown_language(tmp_path, make_dataset):
    src = _write(tmp_path / "a.yaml", make_dataset())
    assert main(["generate", "--input", str(src), "--lang", "xx", "--out", str(tmp_path / "o")]) == 2


def test_rerun_is_byte_identical(tmp_path, make_dataset):
    src = _write(tmp_path / "a.yaml", make_dataset(sky=[101, 113, 113, 120] * 3, wind=[320] * 12))
    outs = []
    for name in ("o1", "o2"):
        main(["generate", "--input", str(src), "--out", str(tmp_path / name), "--emit-intermediate"])
        outs.append({p.name: p.read_bytes() for p in (tmp_path / name).iterdir()})
    assert outs[0] == outs[1]


def test_dump_candidates(tmp_path, make_dataset, capsys):
    src = _write(tmp_path / "a.yaml", make_dataset(sky=[108] * 3 + [101] * 9))
    main(["generate", "--input", str(src), "--out", str(tmp_path / "o"), "--dump-precip-candidates"])
    err = capsys.readouterr().err
    assert "by_episode" in err and "by_day" in err and "whole_term" in err
    assert "* by_day: Rain all day today." in err


def test_eval(tmp_path, capsys):
    answers = tmp_path / "answers.csv"
    header = "forecast_id,q1a,q1b,q1c,q1d,q2a,q2b,q2c,q2d,q3,q4,q5"
    answers.write_text(header + "\n" + "\n".join(f"f{i}," + ",".join(["5"] * 11) for i in range(45)) + "\n")
    assert main(["eval", "--answers", str(answers)]) == 0
    out = capsys.readouterr().out
    gq = next(line for line in out.splitlines() if line.startswith("GQ"))
    assert gq.split()[1] == "5.00"


def test_eval_empty(tmp_path):
    answers = tmp_path / "answers.csv"
    answers.write_text("")
    assert main(["eval", "--answers", str(answers)]) == 1
