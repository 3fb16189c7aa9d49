import csv
import io
import json
import subprocess
import sys

from hilbgenus.cli import (
    main,
    report_to_dict,
    serialize_records,
    square_class_from_dict,
    tabulate_records,
)
from hilbgenus.fieldcase import resolve
from hilbgenus.hilbert import hilbert_genus


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_text(capsys):
    code, out, _ = run(capsys, "compute", "--p", "5", "--a", "42427")
    assert code == 0
    gen_lines = [l for l in out.splitlines() if l.startswith("  sqrt(")]
    assert len(gen_lines) == 8
    assert gen_lines[-1].startswith("  sqrt(7+2*sqrt(5))")
    assert "verification: pass" in out


def test_compute_json(capsys):
    code, out, _ = run(capsys, "compute", "--p", "2", "--a", "595", "--format", "json")
    assert code == 0
    d = json.loads(out)
    assert d["rank"] == 5 and d["e"] == 2 and d["t_ramified"] == 8
    for key in ("p", "a", "case", "n", "m", "lambda", "h", "eps", "rel_disc_coeff",
                "t_ramified", "e", "rank", "genus_gens", "hilbert_gens", "checks"):
        assert key in d
    assert set(d["eps"]) == {"s", "t", "den"}
    assert set(d["hilbert_gens"][0]) == {"kind", "payload", "display", "source_q"}
    assert set(d["checks"]) >= {"unramified", "independent", "rank_formula"}
    assert d["checks"]["independent"] and d["checks"]["rank_formula"]
    assert d["rel_disc_coeff"] == 2380


def test_tex(capsys):
    code, out, _ = run(capsys, "compute", "--p", "2", "--a", "595", "--tex")
    assert "\\sqrt{-(7+4\\sqrt{2})}" in out


def test_invalid_p(capsys):
    code, _, err = run(capsys, "compute", "--p", "6", "--a", "35")
    assert code == 2
    assert "p must be 2 or a prime ≡ 1 (mod 4)" in err


def test_invalid_a(capsys):
    code, _, err = run(capsys, "compute", "--p", "5", "--a", "12")
    assert code == 2 and "squarefree" in err


def test_override_warns(capsys):
    code, out, err = run(capsys, "compute", "--p", "73", "--a", "4199",
                         "--case-override", "odd_1mod4", "--format", "json")
    assert err.startswith("WARNING")
    d = json.loads(out)
    assert d["rank"] == 6 and d["case"] == "odd_1mod4"
    assert code == 3


def test_default_dispatch_note(capsys):
    code, out, _ = run(capsys, "compute", "--p", "73", "--a", "4199")
    assert code == 0
    assert "case odd_3mod4" in out and "note:" in out


def test_genus_command(capsys):
    code, out, _ = run(capsys, "genus", "--p", "5", "--a", "42427")
    assert code == 0 and out.strip() == "-1, -7, -11, -19, 29"
    code, out, _ = run(capsys, "genus", "--p", "5", "--a", "1")
    assert "none" in out


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--p", "17", "--a", "6")
    assert code == 0 and out.strip().endswith("verification: pass")
    code, out, _ = run(capsys, "verify", "--p", "17", "--a", "6", "--keep-eps")
    assert code == 3 and "fail at P(2," in out


def test_json_round_trip():
    report = hilbert_genus(resolve(41, 2 * 5 * 7 * 23))
    d = report_to_dict(report)
    back = json.loads(json.dumps(d))
    assert back == d
    gens = [square_class_from_dict(g, 41) for g in back["hilbert_gens"]]
    assert gens == report.hilbert_generators


def test_tabulate_records():
    recs = tabulate_records(5, 5, 1, 20)
    assert [r["a"] for r in recs] == list(range(1, 21))
    valid = [r["a"] for r in recs if "skipped" not in r]
    assert valid == [1, 2, 3, 6, 7, 11, 13, 14, 17, 19]
    skipped = {r["a"]: r["skipped"] for r in recs if "skipped" in r}
    assert skipped[5] == "a not coprime to p" and skipped[4] == "a not squarefree"
    assert tabulate_records(3, 4, 1, 10) == []


def test_tabulate_single_record(tmp_path, capsys):
    out = tmp_path / "t.jsonl"
    code, _, _ = run(capsys, "tabulate", "--p-min", "2", "--p-max", "2", "--a-min",
                     "595", "--a-max", "595", "--format", "jsonl", "--out", str(out))
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 1 and json.loads(lines[0])["rank"] == 5


def test_tabulate_csv_and_determinism(tmp_path, capsys):
    out = tmp_path / "t.csv"
    args = ["tabulate", "--p-min", "1", "--p-max", "20", "--a-min", "1", "--a-max",
            "40", "--format", "csv", "--out", str(out)]
    assert run(capsys, *args)[0] == 0
    first = out.read_bytes()
    assert run(capsys, *args)[0] == 0
    assert out.read_bytes() == first
    rows = list(csv.DictReader(io.StringIO(first.decode())))
    ps = [int(r["p"]) for r in rows]
    assert ps == sorted(ps) and set(ps) == {2, 5, 13, 17}
    row = next(r for r in rows if r["p"] == "5" and r["a"] == "11")
    assert row["hilbert_gens"] == "-1;-11;5+4*sqrt(5)"


def test_tabulate_parallel_matches_serial():
    serial = serialize_records(tabulate_records(2, 41, 1, 30), "jsonl")
    parallel = serialize_records(tabulate_records(2, 41, 1, 30, jobs=2), "jsonl")
    assert serial == parallel


def test_tabulate_bad_path(capsys):
    code, _, err = run(capsys, "tabulate", "--p-min", "5", "--p-max", "5", "--a-min",
                       "1", "--a-max", "2", "--out", "/nonexistent/dir/x.jsonl")
    assert code == 2 and "/nonexistent/dir/x.jsonl" in err


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "hilbgenus", "compute", "--p", "13",
                          "--a", "3", "--format", "json"], capture_output=True,
                         text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["rank"] == 3
