from __future__ import annotations

import json

import pytest

from poslink import (
    LinkRecord,
    Strength,
    Verdict,
    cmd_compute,
    cmd_survey,
    cmd_test,
    ingest_csv,
    parse_poly,
)
from poslink.cli import main
from poslink.errors import ColumnMissing, FileUnreadable

from conftest import DATA_DIR, TREFOIL_PD

COLUMNS = {
    "name": "Name",
    "components": "Components",
    "pd": "PD Notation",
    "braid": "Braid Notation",
    "jones": "Jones",
    "conway": "Conway",
    "kh": "Kh",
}
COLUMNS_FLAG = ",".join(f"{k}={v}" for k, v in COLUMNS.items())
KNOTS_CSV = str(DATA_DIR / "knots.csv")


class TestIngest:
    def test_fixture_table(self):
        records = ingest_csv(KNOTS_CSV, COLUMNS)
        assert [r.name for r in records] == ["trefoil", "seven_4", "hopf_plus", "12n749"]
        r749 = records[-1]
        assert r749.pd is None and r749.braid is None
        assert r749.jones == parse_poly("t^3 + t^5 - t^6 + t^7 - t^8 + t^9 - t^10")
        assert r749.kh.j_range() == (3, 21)
        assert r749.components == 1

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text("Name,Jones\n")
        assert ingest_csv(str(path), {"name": "Name", "jones": "Jones"}) == []

    def test_missing_column(self):
        with pytest.raises(ColumnMissing):
            ingest_csv(KNOTS_CSV, {"jones": "NoSuchHeader"})

    def test_unknown_role(self):
        with pytest.raises(ColumnMissing):
            ingest_csv(KNOTS_CSV, {"genus": "Name"})

    def test_unreadable(self):
        with pytest.raises(FileUnreadable):
            ingest_csv("/no/such/file.csv", {"name": "Name"})

    def test_bad_cell_flagged_not_fatal(self, tmp_path):
        path = tmp_path / "partial.csv"
        path.write_text(
            "Name,Jones,Conway\n"
            "good,t + t^3 - t^4,1 + z^2\n"
            "bad,wibble wobble,z\n"
        )
        records = ingest_csv(
            str(path), {"name": "Name", "jones": "Jones", "conway": "Conway"}
        )
        assert len(records) == 2
        assert not records[0].flags
        assert records[1].conway == parse_poly("z", "z")
        assert any("jones" in f for f in records[1].flags)


class TestCrossValidation:
    def test_shipped_fixtures_have_zero_flags(self):
        records = ingest_csv(KNOTS_CSV, COLUMNS)
        batch = cmd_compute(records)
        for result in batch:
            assert result.error is None, (result.name, result.error)
            assert not result.flags, (result.name, result.flags)

    def test_mismatch_is_hard_error(self, tmp_path):
        path = tmp_path / "wrong.csv"
        path.write_text(
            'Name,PD,Jones\ntrefoil,"{}",t + t^3 + t^4\n'.format(TREFOIL_PD)
        )
        batch = cmd_compute(
            ingest_csv(str(path), {"name": "Name", "pd": "PD", "jones": "Jones"})
        )
        assert not batch.all_ok
        assert "disagree" in batch.results[0].error

    def test_mirror_convention_normalized(self, tmp_path):
        path = tmp_path / "mirror.csv"
        path.write_text(
            'Name,PD,Jones\ntrefoil,"{}",-t^-4 + t^-3 + t^-1\n'.format(TREFOIL_PD)
        )
        records = ingest_csv(str(path), {"name": "Name", "pd": "PD", "jones": "Jones"})
        batch = cmd_compute(records)
        assert batch.all_ok
        assert any("mirror" in f for f in batch.results[0].flags)
        # with normalization off the same table is a hard error
        batch = cmd_compute(records, mirror="never")
        assert not batch.all_ok


class TestCmdTest:
    def test_12n749_headline(self):
        records = [r for r in ingest_csv(KNOTS_CSV, COLUMNS) if r.name == "12n749"]
        batch = cmd_test(records)
        result = batch.results[0]
        assert result.error is None
        jones_report, khovanov_report = result.reports[0], result.reports[1]
        assert jones_report.verdict is Verdict.PASS
        assert (jones_report.lhs, jones_report.rhs) == (10, 12)
        assert khovanov_report.verdict is Verdict.FAIL
        assert (khovanov_report.lhs, khovanov_report.rhs) == (21, 17)
        assert result.comparison is Strength.KHOVANOV_ONLY_FAILS

    def test_trefoil_computed(self):
        batch = cmd_test([LinkRecord(name="trefoil", pd=__import__("poslink").parse_pd(TREFOIL_PD))])
        result = batch.results[0]
        assert result.comparison is Strength.NEITHER_FAILS
        assert all(r.equality_attained for r in result.reports)

    def test_p1_three_not_applicable(self):
        # second coefficient -3: outside every obstruction family
        record = LinkRecord(name="odd", jones=parse_poly("t - 3t^2 + t^3"))
        batch = cmd_test([record])
        result = batch.results[0]
        assert result.error is None
        assert all(r.verdict is Verdict.NOT_APPLICABLE for r in result.reports)
        assert result.comparison is None


class TestSurvey:
    def test_small_survey_finds_trefoil(self):
        batch = cmd_survey(2, 3)
        assert batch.all_ok
        names = [r.name for r in batch]
        assert "closure(strands=2; 1 1 1)" in names
        trefoil_result = batch.results[names.index("closure(strands=2; 1 1 1)")]
        assert any("equality" in f for f in trefoil_result.flags)
        for result in batch:
            for report in result.reports:
                assert report.verdict is not Verdict.FAIL

    def test_empty_bounds(self):
        assert len(cmd_survey(1, 0)) == 0
        assert len(cmd_survey(0, 5)) == 0


class TestPerRecordIsolation:
    def test_malformed_rows_do_not_abort(self, tmp_path):
        path = tmp_path / "batch.txt"
        path.write_text(
            "{}\nthis is not a diagram\nstrands=2; 1 1\n".format(TREFOIL_PD)
        )
        code = main(["compute", "--file", str(path), "--format", "record",
                     "--out", str(tmp_path / "out.jsonl")])
        assert code == 1  # the bad row is a hard error, but ...
        lines = (tmp_path / "out.jsonl").read_text().strip().splitlines()
        assert len(lines) == 3  # ... every row still yields a record
        good = [json.loads(line) for line in lines]
        assert good[0]["error"] is None
        assert good[1]["error"] is not None
        assert good[2]["error"] is None


class TestCli:
    def test_compute_text(self, capsys):
        code = main(["compute", "--pd", TREFOIL_PD, "--all"])
        out = capsys.readouterr().out
        assert code == 0
        assert "jones: t + t^3 - t^4" in out
        assert "conway: 1 + z^2" in out
        assert "t^3 q^7 T^2" in out
        assert "j_lower=1" in out and "j_upper=9" in out

    def test_compute_selection(self, capsys):
        code = main(["compute", "--braid", "strands=2; 1 1", "--jones"])
        out = capsys.readouterr().out
        assert code == 0
        assert "jones: -t^(1/2) - t^(5/2)" in out
        assert "conway:" not in out

    def test_test_subcommand(self, capsys):
        code = main([
            "test", "--file", KNOTS_CSV, "--columns", COLUMNS_FLAG,
        ])
        out = capsys.readouterr().out
        assert code == 0
        assert "comparison: KhovanovOnlyFails" in out
        assert "verdict: Fail" in out

    def test_ingest_subcommand(self, capsys):
        code = main(["ingest", "--file", KNOTS_CSV, "--columns", COLUMNS_FLAG])
        assert code == 0

    def test_survey_subcommand(self, capsys):
        code = main(["survey", "--strands", "2", "--max-length", "3"])
        out = capsys.readouterr().out
        assert code == 0
        assert "closure(strands=2; 1 1 1)" in out

    def test_usage_error_exit_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["compute"])  # no input given
        assert exc.value.code == 2
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_unreadable_file_exit_1(self, capsys):
        assert main(["compute", "--file", "/no/such/file"]) == 1

    def test_record_format_deterministic(self, tmp_path):
        out1, out2 = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
        for out in (out1, out2):
            code = main([
                "test", "--file", KNOTS_CSV, "--columns", COLUMNS_FLAG,
                "--format", "record", "--out", str(out), "--jobs", "2",
            ])
            assert code == 0

        def stripped(path):
            rows = [json.loads(line) for line in path.read_text().splitlines()]
            for row in rows:
                row.pop("timing_ms")
            return json.dumps(rows, sort_keys=True)

        assert stripped(out1) == stripped(out2)

    def test_record_schema(self, tmp_path):
        out = tmp_path / "r.jsonl"
        main(["compute", "--pd", TREFOIL_PD, "--format", "record", "--out", str(out)])
        row = json.loads(out.read_text().splitlines()[0])
        assert row["schema"] == "poslink.record/1"
        assert row["invariants"]["jones"] == "t + t^3 - t^4"
