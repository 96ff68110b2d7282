import csv
import io
import math

import numpy as np
import pytest

from qme import cli, elevator, piston, strokes, trajectories


def run_to_file(tmp_path, name, *argv):
    out = tmp_path / name
    assert cli.run([*argv, "-o", str(out)]) == 0
    return out


def read(path):
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# qme command=")
    rows = list(csv.reader(io.StringIO("\n".join(lines[1:]))))
    return lines[0], rows[0], [[float(v) for v in r] for r in rows[1:]]


def test_piston_sweep(tmp_path):
    path = run_to_file(tmp_path, "p.csv", "piston-sweep", "--eps-min", "0.02", "--eps-max", "0.9", "--steps", "45")
    comment, header, rows = read(path)
    assert tuple(header) == piston.CSV_COLUMNS
    assert len(rows) == 45
    assert rows[0][0] == pytest.approx(0.02) and rows[-1][0] == pytest.approx(0.9)
    assert "steps=45" in comment


def test_three_stroke_peak(tmp_path):
    _, header, rows = read(run_to_file(tmp_path, "t.csv", "three-stroke", "--steps", "90"))
    assert tuple(header) == strokes.CSV_COLUMNS
    data = np.array(rows)
    k = int(np.argmax(np.abs(data[:, 3])))
    assert k == int(np.argmin(np.abs(data[:, 0] - math.pi / 3)))


def test_four_stroke(tmp_path):
    _, _, rows = read(run_to_file(tmp_path, "f.csv", "four-stroke", "--steps", "10"))
    data = np.array(rows)
    assert np.all(np.abs(data[:, 1:5].sum(axis=1)) < 1e-10)


def test_mc_piston_byte_identical(tmp_path):
    a = run_to_file(tmp_path, "a.csv", "mc-piston", "--eps", "0.1", "--n", "100000", "--seed", "42")
    b = run_to_file(tmp_path, "b.csv", "mc-piston", "--eps", "0.1", "--n", "100000", "--seed", "42")
    assert a.read_bytes() == b.read_bytes()
    _, header, rows = read(a)
    assert tuple(header) == trajectories.CSV_COLUMNS
    assert len(rows) == 100_000


def test_mc_feedback(tmp_path):
    _, _, rows = read(run_to_file(tmp_path, "m.csv", "mc-feedback", "--theta", "0.2", "--n", "50", "--seed", "1"))
    assert rows[-1][2] == pytest.approx(-25 * math.sin(0.2), rel=1e-10)


def test_elevator(tmp_path):
    _, header, rows = read(run_to_file(tmp_path, "e.csv", "elevator", "--eps", "0.5", "--w-min", "1", "--w-max", "3", "--steps", "3"))
    assert tuple(header) == elevator.CSV_COLUMNS
    assert [r[1] for r in rows] == pytest.approx([1, 2, 3])


def test_otto_and_zeno(tmp_path):
    _, _, rows = read(run_to_file(tmp_path, "o.csv", "otto", "--omega-f", "2", "--omega-f-max", "4", "--steps", "3"))
    assert [r[6] for r in rows] == pytest.approx([r[7] for r in rows], abs=1e-12)
    _, header, rows = read(run_to_file(tmp_path, "z.csv", "qubit-zeno", "--steps", "5"))
    assert header == list(cli.FEEDBACK_COLUMNS)
    assert rows[0][5] > rows[-1][5]


def test_twelve_significant_digits(tmp_path):
    text = run_to_file(tmp_path, "t.csv", "three-stroke", "--steps", "2").read_text()
    value = text.splitlines()[2].split(",")[0]
    assert value == f"{math.pi / 6:.12g}"


def test_stdout(capsys):
    assert cli.run(["otto"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[1] == ",".join(strokes.OTTO_COLUMNS)


def test_argument_error_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.run(["piston-sweep", "--steps", "many"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.run(["four-stroke", "--temp", "-1"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_numerical_failure_exit_one(capsys, monkeypatch):
    from qme.exceptions import ConvergenceError

    def boom(*args, **kwargs):
        raise ConvergenceError("eigensolve failed", parameter="floor")

    monkeypatch.setattr(elevator, "window_sweep", boom)
    assert cli.run(["elevator"]) == 1
    assert "floor" in capsys.readouterr().err


def test_thread_cap(monkeypatch, tmp_path):
    monkeypatch.setenv("QME_THREADS", "1")
    serial = run_to_file(tmp_path, "s.csv", "piston-sweep", "--steps", "4").read_text()
    monkeypatch.setenv("QME_THREADS", "4")
    threaded = run_to_file(tmp_path, "t.csv", "piston-sweep", "--steps", "4").read_text()
    assert serial == threaded
