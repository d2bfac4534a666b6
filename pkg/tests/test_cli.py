import io
import json

import pytest

from randcayley.cli import TIMESTAMP_KEY, main, parse_config, UsageError


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_diameter_command(tmp_path):
    code, out = run("diameter", "--q", "101", "--gens", "1,11", "--mode", "directed")
    assert code == 0 and out.strip() == "18"
    prof = tmp_path / "p.csv"
    code, _ = run("diameter", "--q", "13", "--gens", "1", "--mode", "symmetric", "--profile", str(prof))
    lines = prof.read_text().splitlines()
    assert lines[0] == "x,distance" and lines[7] == "6,6" and len(lines) == 14
    assert run("diameter", "--q", "11", "--gens", "0")[1].strip() == "unreachable"


def test_relation_command():
    assert run("relation", "--q", "5", "--gens", "1,2", "--L", "2") == (0, "1,2\n")
    assert run("relation", "--q", "7", "--gens", "1,1", "--L", "1") == (0, "none\n")


def test_coverage_command():
    code, out = run("coverage", "--q", "5", "--gens", "1,2", "--L", "2", "--hits")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "L=2 B_L=5 A_L=true"
    assert lines[1:] == ["x,count", "0,2", "1,2", "2,2", "3,1", "4,2"]
    code, out = run("coverage", "--q", "7", "--gens", "1,2", "--L", "1")
    assert out.strip() == "L=1 B_L=4 A_L=false"


def test_sample_command():
    a = run("sample", "--q", "101", "--k", "3", "--mode", "symmetric", "--seed", "9", "--stream", "4")
    b = run("sample", "--q", "101", "--k", "3", "--mode", "symmetric", "--seed", "9", "--stream", "4")
    assert a == b and a[0] == 0 and "mode=symmetric" in a[1]


@pytest.mark.parametrize("argv", [
    ["diameter", "--q", "101"],
    ["diameter", "--q", "1", "--gens", "1"],
    ["diameter", "--q", "101", "--gens", "1,x"],
    ["diameter", "--q", "101", "--gens", "500"],
    ["coverage", "--q", "7", "--gens", "1", "--L", "-1"],
    ["relation", "--q", "7", "--gens", "1", "--L", "x"],
    ["verify", "--suite", "nope"],
    ["frobnicate"],
])
def test_bad_input_exits_2(argv):
    assert run(*argv)[0] == 2


def test_bad_flags_write_nothing(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("q_list=100\nk_list=2\n")  # composite with theorem checks on
    out, summ = tmp_path / "t.csv", tmp_path / "s.json"
    assert run("sweep", "--config", str(cfg), "--out", str(out), "--summary", str(summ))[0] == 2
    assert not out.exists() and not summ.exists()
    assert run("diameter", "--q", "101", "--gens", "1", "--profile", str(out), "--bogus")[0] == 2
    assert not out.exists()


def test_parse_config():
    cfg = parse_config("""
        # comment
        q_list = 101, 211
        k_list=2
        modes=directed,symmetric
        trials=5
        c_grid=1,2.5
        l_probes=0.5
        lb_pairs=4:0.1,2:0.125
        master_seed=3
    """)
    assert cfg.q_list == (101, 211) and cfg.c_grid == (1.0, 2.5)
    assert cfg.lb_pairs == ((4.0, 0.1), (2.0, 0.125))
    for bad in ["q_list=101\n", "q_list=101\nk_list=2\nfoo=1\n", "q_list=101\nk_list=2\nno-equals\n",
                "q_list=101\nk_list=2\nmodes=sideways\n"]:
        with pytest.raises(UsageError):
            parse_config(bad)


def test_sweep_outputs(tmp_path):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("q_list=1009\nk_list=2\nmodes=directed,symmetric\ntrials=25\nc_grid=1,2,4\n"
                   "l_probes=0.5,1\nmaster_seed=3\n")
    paths = []
    for threads in ("1", "3"):
        out, summ = tmp_path / f"t{threads}.csv", tmp_path / f"s{threads}.json"
        assert run("sweep", "--config", str(cfg), "--out", str(out), "--summary", str(summ),
                   "--threads", threads)[0] == 0
        paths.append((out, summ))
    (o1, s1), (o2, s2) = paths
    assert o1.read_bytes() == o2.read_bytes()
    d1, d2 = json.loads(s1.read_text()), json.loads(s2.read_text())
    d1.pop(TIMESTAMP_KEY), d2.pop(TIMESTAMP_KEY)
    assert d1 == d2

    rows = o1.read_text().splitlines()
    assert rows[0] == ("trial_index,q,k,mode,seed,gens,diameter,scaled_diameter,"
                       "relation_fired,coverage_count,L_used")
    assert len(rows) == 51
    fields = rows[1].split(",")
    assert len(fields) == 11 and fields[3] == "directed"
    assert float(fields[7]) == int(fields[6]) / 1009 ** 0.5
    assert len(fields[10].split("+")) == len(fields[8].split("+")) == len(fields[9].split("+"))
    assert all(r.split(",")[3] in ("directed", "symmetric") for r in rows[1:])

    cells = d1["cells"]
    assert [c["mode"] for c in cells] == ["directed", "symmetric"]
    tail_keys = {"C", "count", "N", "estimate", "wilson_lo", "wilson_hi", "paper_upper", "paper_lower"}
    assert set(cells[0]["tails"][0]) == tail_keys
    assert cells[0]["checks"]["passed"] in (True, False)
    assert d1["config"]["master_seed"] == 3 and d1["version"]


def test_json_floats_have_17_digits(tmp_path):
    from randcayley.cli import dumps_json
    text = dumps_json({"x": 0.1, "y": [1 / 3], "z": None, "w": "s"})
    assert '"x": 0.10000000000000001' in text
    assert "0.33333333333333331" in text
    assert json.loads(text)["y"][0] == 1 / 3


def test_verify_events_suite():
    code, out = run("verify", "--suite", "events")
    assert code == 0 and out.strip().endswith("suite events: PASS")
