import json

from coupledwave.cli import main


def test_curve_verb(capsys):
    code = main(["curve", "--n", "3", "--p", "2", "--q", "2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "theta1=0.166666667" in out
    assert "theta2=-0.166666667" in out
    assert "region=subcritical" in out


def test_cusp_verb(capsys):
    code = main(["cusp", "--n", "3"])
    out = capsys.readouterr().out
    assert code == 0
    assert "q_mix=1.3660254" in out
    assert "p_mix=2.73205081" in out
    assert "p_glassey=2" in out
    assert "p_strauss=2.41421356" in out
    assert "ordering=OK" in out


def test_sequences_verb(tmp_path, capsys):
    out_path = tmp_path / "seq.csv"
    code = main(["sequences", "--case", "double", "--n", "3", "--jmax", "10",
                 "--out", str(out_path)])
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert lines[0].startswith("j,coeff_log,coeff_log_closed")
    assert len(lines) == 12
    out = capsys.readouterr().out
    assert "closed_form_deviation" in out


def test_sequences_subcritical(tmp_path):
    out_path = tmp_path / "sub.csv"
    code = main(["sequences", "--case", "subcritical", "--n", "3",
                 "--p", "2", "--q", "2", "--jmax", "5", "--out", str(out_path)])
    assert code == 0
    assert len(out_path.read_text().splitlines()) == 7


def test_unknown_verb_exits_2(capsys):
    assert main(["frobnicate"]) == 2


def test_malformed_json_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text('{"problem": {"n": 3,}}')
    code = main(["solve", "--config", str(cfg)])
    err = capsys.readouterr().err
    assert code == 2
    assert "line" in err and "column" in err


def test_unknown_config_section_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text('{"posterior": {}}')
    assert main(["solve", "--config", str(cfg)]) == 2


def test_solve_verb_writes_outputs(tmp_path, capsys):
    cfg = tmp_path / "run.json"
    cfg.write_text(
        json.dumps(
            {
                "problem": {"eps": 0.5},
                "grid": {"dr": 0.04, "t_max": 1.0},
                "data": {"amplitudes": [1.0, 1.0, 1.0, 1.0]},
            }
        )
    )
    out = tmp_path / "runout"
    code = main(["solve", "--config", str(cfg), "--out", str(out)])
    assert code == 0
    assert (tmp_path / "runout.csv").exists()
    meta = json.loads((tmp_path / "runout.json").read_text())
    assert meta["blew_up"] is False
    header = (tmp_path / "runout.csv").read_text().splitlines()[0]
    assert header == "t,maxu,maxut,maxv,U,V,Uprime,Vprime"


def test_identity_verb(capsys):
    code = main(["identity", "--dr", "0.02", "--tmax", "1.0"])
    out = capsys.readouterr().out
    assert code == 0
    assert "identities=ok" in out


def test_sweep_verb(tmp_path, capsys):
    cfg = tmp_path / "sweep.json"
    cfg.write_text(
        json.dumps(
            {
                "grid": {"dr": 0.04, "t_max": 6.0},
                "sweep": {"eps_values": [1.6, 1.2], "repeats": 1},
            }
        )
    )
    out_dir = tmp_path / "sweep_out"
    code = main(["sweep", "--config", str(cfg), "--out", str(out_dir)])
    assert code == 0
    assert (out_dir / "lifespan.csv").exists()
    assert (out_dir / "lifespan.json").exists()
    out = capsys.readouterr().out
    assert "fit_slope" in out


def test_specfn_verb(capsys):
    code = main(["specfn", "--n", "3", "--tmax", "8"])
    out = capsys.readouterr().out
    assert code == 0
    assert "bound xi0" in out
    assert "bound eta-diag" in out
    assert "FAIL" not in out
