import math

import numpy as np
import pytest

from splitwalk import cli
from splitwalk.cli import (
    EXIT_CONFIG,
    EXIT_DOMAIN,
    EXIT_IO,
    EXIT_OK,
    ConfigError,
    RunConfig,
    config_from_args,
    main,
    parse_angle,
    parse_grid,
)
from splitwalk.csvio import emit_csv, read_csv, render_csv
from splitwalk.lattice import BoundaryError
from splitwalk.zitter import zb_frequency


def test_emit_csv_header_only(tmp_path):
    path = tmp_path / "empty.csv"
    emit_csv(["x", "p_up", "p_down"], [], path)
    assert path.read_text() == "x,p_up,p_down\n"


def test_emit_csv_round_trips_floats(tmp_path, rng):
    values = rng.normal(size=(20, 2)) * 10.0 ** rng.integers(-300, 300, size=(20, 2))
    path = tmp_path / "floats.csv"
    emit_csv(["a", "b"], [(float(a), float(b)) for a, b in values], path)
    _, rows = read_csv(path)
    back = np.array([[float(v) for v in row] for row in rows])
    np.testing.assert_array_equal(back, values)


def test_render_rejects_ragged_rows():
    with pytest.raises(ValueError):
        render_csv(["a", "b"], [(1, 2), (3,)])


def test_emit_csv_reports_path(tmp_path):
    with pytest.raises(OSError, match="missing"):
        emit_csv(["a"], [(1,)], tmp_path / "missing" / "out.csv")


@pytest.mark.parametrize(
    "text, value",
    [("0.25pi", math.pi / 4), ("pi/4", math.pi / 4), ("-3pi/4", -3 * math.pi / 4), ("pi", math.pi),
     ("2*pi", 2 * math.pi), ("1.5", 1.5), ("-2e-3", -2e-3)],
)
def test_parse_angle(text, value):
    assert parse_angle(text) == pytest.approx(value, abs=1e-15)


@pytest.mark.parametrize("text", ["", "pie", "1/4", "abc"])
def test_parse_angle_rejects_garbage(text):
    with pytest.raises(ValueError):
        parse_angle(text)


def test_parse_grid():
    axes = parse_grid("omega_p=0:pi:16,omega_a=0:2pi:16")
    assert [a.name for a in axes] == ["omega_p", "omega_a"]
    np.testing.assert_allclose(axes[1].values()[[0, -1]], [0, 2 * math.pi])
    for bad in ("bogus=0:1:3", "k=0:1", "k=0:1:0", "k=0:1:2,k=0:1:2"):
        with pytest.raises(ConfigError):
            parse_grid(bad)


def run_cli(tmp_path, *args, name="out.csv"):
    path = tmp_path / name
    code = main([*args, "--out", str(path)])
    return code, path


def test_walk_conventional_odd_sites_empty(tmp_path):
    code, path = run_cli(tmp_path, "walk", "--kind", "conventional", "--theta", "pi/4",
                         "--omega-p", "pi/2", "--omega-a", "pi/2", "--steps", "100")
    assert code == EXIT_OK
    headers, rows = read_csv(path)
    assert headers == ["x", "p_up", "p_down", "p_total"]
    data = np.array(rows, dtype=float)
    assert data.shape == (201, 4)
    assert np.all(data[data[:, 0] % 2 == 1, 3] == 0)
    assert data[:, 3].sum() == pytest.approx(1.0, abs=1e-10)


def test_walk_all_steps_adds_step_column(tmp_path):
    code, path = run_cli(tmp_path, "walk", "--theta2", "pi/4", "--steps", "3", "--all-steps")
    assert code == EXIT_OK
    headers, rows = read_csv(path)
    assert headers[0] == "step" and len(rows) == 4 * 7


def test_walk_overrun_is_config_error(tmp_path):
    code, path = run_cli(tmp_path, "walk", "--steps", "10", "--lattice", "5")
    assert code == EXIT_CONFIG and not path.exists()


def test_periodic_walk_may_wrap(tmp_path):
    code, _ = run_cli(tmp_path, "walk", "--steps", "10", "--lattice", "5", "--boundary", "periodic")
    assert code == EXIT_OK


def test_domain_errors_exit_3(monkeypatch, tmp_path):
    def boom(cfg):
        raise BoundaryError("walker reached the edge")

    monkeypatch.setitem(cli._RUNNERS, "walk", boom)
    code, _ = run_cli(tmp_path, "walk", "--steps", "2")
    assert code == EXIT_DOMAIN


def test_unwritable_output_exits_1(tmp_path):
    code, _ = run_cli(tmp_path, "spectrum", name="no/such/dir.csv")
    assert code == EXIT_IO


@pytest.mark.parametrize(
    "args",
    [
        ["walk", "--kind", "dca", "--alpha", "0.5"],
        ["walk", "--kind", "dca", "--alpha", "0.5", "--beta", "0.5"],
        ["walk", "--steps", "-1"],
        ["sweep", "--grid", "omega_p=0:pi:3"],
        ["sweep", "--kind", "conventional", "--grid", "theta1=0:1:2,theta2=0:1:2"],
        ["entropy", "--grid", "k=0:1:2"],
        ["walk", "--theta", "nonsense"],
        ["walk", "--config", "/no/such/file"],
    ],
)
def test_bad_configs_exit_2(tmp_path, args):
    assert run_cli(tmp_path, *args)[0] == EXIT_CONFIG


def test_zitter_grid(tmp_path):
    code, path = run_cli(tmp_path, "zitter", "--theta1", "0", "--grid", "theta2=0:pi/2:3,k=-pi:pi:5")
    assert code == EXIT_OK
    headers, rows = read_csv(path)
    assert headers == ["theta1", "theta2", "k", "Z"]
    assert len(rows) == 15
    for t1, t2, k, z in (map(float, r) for r in rows):
        assert z == zb_frequency(t1, t2, k)


def test_spectrum_rows(tmp_path):
    code, path = run_cli(tmp_path, "spectrum", "--theta2", "pi/4", "--grid", "k=-pi:pi:11")
    assert code == EXIT_OK
    headers, rows = read_csv(path)
    assert headers[0] == "k" and len(rows) == 11
    lam = np.array([[float(r[3]), float(r[4])] for r in rows])
    np.testing.assert_allclose(np.hypot(lam[:, 0], lam[:, 1]), 1, atol=1e-12)


def test_entropy_series(tmp_path):
    code, path = run_cli(tmp_path, "entropy", "--theta2", "pi/4", "--omega-p", "pi/2", "--steps", "20")
    assert code == EXIT_OK
    headers, rows = read_csv(path)
    assert headers == ["step", "S"] and len(rows) == 21 and float(rows[0][1]) == 0.0


def test_config_file_and_flag_precedence(tmp_path):
    conf = tmp_path / "run.conf"
    conf.write_text("# comment\nkind = conventional\ntheta = pi/4\nsteps = 7  # trailing\n")
    cfg = config_from_args(["walk", "--config", str(conf), "--steps", "5"])
    assert cfg.walk_kind == "conventional"
    assert cfg.theta == pytest.approx(math.pi / 4)
    assert cfg.steps == 5
    conf.write_text("nonsense line\n")
    with pytest.raises(ConfigError):
        config_from_args(["walk", "--config", str(conf)])


def test_sweep_defaults_to_90_steps():
    assert config_from_args(["sweep", "--grid", "omega_p=0:pi:2,omega_a=0:pi:2"]).steps == 90
    assert config_from_args(["entropy"]).steps == 100


def test_reruns_are_byte_identical(tmp_path):
    args = ["sweep", "--theta2", "pi/4", "--steps", "10", "--grid", "omega_p=0:pi:3,omega_a=0:2pi:3"]
    _, first = run_cli(tmp_path, *args, name="a.csv")
    _, second = run_cli(tmp_path, *args, name="b.csv")
    assert first.read_bytes() == second.read_bytes()


def test_parallel_sweep_matches_serial(tmp_path):
    args = ["sweep", "--omega-p", "pi/2", "--steps", "12", "--grid", "theta1=0:pi:4,theta2=0:pi:3"]
    _, serial = run_cli(tmp_path, *args, name="serial.csv")
    _, parallel = run_cli(tmp_path, *args, "--jobs", "2", name="parallel.csv")
    assert serial.read_bytes() == parallel.read_bytes()
    assert len(read_csv(serial)[1]) == 12


def test_run_accepts_config_objects(tmp_path):
    out = tmp_path / "walk.csv"
    assert cli.run(RunConfig(mode="walk", steps=2, out=str(out))) == EXIT_OK
    assert len(read_csv(out)[1]) == 5
