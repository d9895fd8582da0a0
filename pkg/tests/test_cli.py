import json

import pytest

from ablab.cli import main
from ablab.sets import parse_set_spec
from ablab.groups import build_group, parse_group_spec


def run(argv):
    return main(argv)


class TestParsing:
    def test_bad_group_spec_exits_2(self, capsys):
        assert run(["diagnose", "--group", "nope:3", "--set", "elems:[0]"]) == 2

    def test_bad_set_spec_exits_2(self, capsys):
        assert run(["diagnose", "--group", "cyclic:8", "--set", "wat"]) == 2

    def test_group_spec_round_trip(self):
        for text in ["cyclic:8", "ea:2^6", "dihedral:4", "sym:4", "alt:5", "prod:cyclic:2+ea:2^2"]:
            spec = parse_group_spec(text)
            g = build_group(spec)
            assert g.order >= 1


class TestCommands:
    def test_diagnose_interval(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        code = run(
            ["diagnose", "--group", "cyclic:8", "--set", "interval:0..2", "--out", str(out)]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["growth"]["tripling"] == [7, 3]

    def test_group_inspect(self, capsys, tmp_path):
        out = tmp_path / "g.json"
        assert run(["group", "--group", "dihedral:4", "--subgroups", "--out", str(out)]) == 0
        payload = json.loads(out.read_text())
        assert payload["order"] == 8 and payload["exponent"] == 4
        assert payload["subgroup_count"] == 10

    def test_emitted_sets_reparse_to_equal_objects(self, tmp_path):
        out = tmp_path / "d.json"
        run(
            [
                "diagnose",
                "--group",
                "ea:2^4",
                "--set",
                "random:density=1/2,seed=3",
                "--out",
                str(out),
            ]
        )
        payload = json.loads(out.read_text())
        g = build_group(parse_group_spec("ea:2^4"))
        emitted = payload["stabilizer"]["stabilizer"]["elems"]
        literal = "elems:[" + ",".join(map(str, emitted)) + "]"
        reparsed = parse_set_spec(g, literal)
        assert sorted(reparsed) == emitted

    def test_regularity_csv_and_exit_code(self, tmp_path):
        out = tmp_path / "rep.json"
        csv_path = tmp_path / "cosets.csv"
        code = run(
            [
                "regularity",
                "--group",
                "ea:2^6",
                "--set",
                "cosets:H=[0,1,2,3,4,5,6,7,8,9,10,11,12,13,14,15],reps=[0,17]",
                "--eps",
                "1/4",
                "--nu",
                "1",
                "--out",
                str(out),
                "--csv",
                str(csv_path),
            ]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["success"] is True
        assert csv_path.read_text().startswith("rep,")

    def test_vc_cap_exhaustion_exits_3(self, tmp_path):
        code = run(
            [
                "regularity",
                "--group",
                "cyclic:8",
                "--set",
                "elems:[0,1]",
                "--eps",
                "1/4",
                "--nu",
                "1",
                "--vc-cap",
                "1",
                "--out",
                str(tmp_path / "x.json"),
            ]
        )
        assert code == 3

    def test_bohr_search(self, tmp_path):
        out = tmp_path / "b.json"
        code = run(
            [
                "bohr-search",
                "--group",
                "cyclic:16",
                "--set",
                "interval:0..3",
                "--mode",
                "tripling",
                "--n-max",
                "2",
                "--deltas",
                "1/2,7/16,1/4,1/8",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["found"] is True
        assert payload["witness"]["size_bound_ok"] is True

    def test_bogolyubov_command(self, tmp_path):
        out = tmp_path / "bg.json"
        code = run(
            [
                "bogolyubov",
                "--group",
                "ea:2^5",
                "--set",
                "random:density=1/2,seed=11",
                "--mode",
                "tripling",
                "--m",
                "3",
                "--out",
                str(out),
            ]
        )
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["h_in_w"] is True


class TestDeterminism:
    def test_verify_reports_byte_identical_across_jobs(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        args = ["verify", "--suite", "ruzsa", "--trials", "60", "--seed", "9"]
        assert run(args + ["--jobs", "1", "--out", str(a)]) == 0
        assert run(args + ["--jobs", "4", "--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_same_seed_same_bytes(self, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        args = ["verify", "--suite", "plunnecke", "--trials", "40", "--seed", "4"]
        assert run(args + ["--out", str(a)]) == 0
        assert run(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()
