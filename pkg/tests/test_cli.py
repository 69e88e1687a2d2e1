"""
End-to-end tests of the pbi command line on the fixture datasets
"""

import json
from fractions import Fraction

import pytest

from src.infrastructure.report import read_report
from src.interface.cli.app import main
from src.utils.logger import logger as indicator_logger


def run(tmp_path, *argv, name="report.csv"):
    """Run one subcommand with --output and return its parsed rows"""
    output = tmp_path / name
    assert main([*argv, "--output", str(output)]) == 0
    fmt = "json" if name.endswith(".json") else "csv"
    return read_report(output.read_bytes(), fmt)


def by_approach(rows, subject):
    return {row["approach"]: row for row in rows if row["subject"] == subject}


@pytest.fixture
def main_csv(fixtures_dir):
    return str(fixtures_dir / "main_field.csv")


def write_field(path, histogram, field_id="math"):
    lines = ["pub_id,field_id,citations"]
    for citations, n in sorted(histogram.items()):
        lines += [f"{field_id}-{citations}-{k},{field_id},{citations}" for k in range(n)]
    path.write_text("\n".join(lines) + "\n")
    return str(path)


class TestScore:
    def test_fractional(self, tmp_path, main_csv):
        """Tied publications get 0.55 with their 0.45/0.55 interval split"""
        rows = run(tmp_path, "score", "--input", main_csv)
        tied = [row for row in rows if row["citations"] == "10"]
        assert len(tied) == 10
        assert {row["value"] for row in tied} == {"0.5500"}
        assert tied[0]["interval_1"] == "0.4500"
        assert tied[0]["interval_2_exact"] == Fraction(11, 20)

    def test_schreiber(self, tmp_path, main_csv):
        """Schreiber scores the tied block at one half"""
        rows = run(tmp_path, "score", "--input", main_csv, "--approach", "schreiber")
        assert {row["value"] for row in rows if row["citations"] == "10"} == {"0.5000"}

    def test_nsb(self, tmp_path, main_csv):
        """NSB leaves the tied block out and reports its 86th percentile"""
        rows = run(tmp_path, "score", "--input", main_csv, "--approach", "nsb")
        tied = [row for row in rows if row["citations"] == "10"]
        assert {row["value"] for row in tied} == {"0.0000"}
        assert tied[0]["percentile_display"] == "86"
        assert tied[0]["percentile_exact"] == Fraction(90, 105)

    def test_pudovkin_garfield_percentile_display(self, tmp_path, main_csv):
        """Pudovkin-Garfield puts the tied block at 91.0 and inside the top 10%"""
        rows = run(tmp_path, "score", "--input", main_csv, "--approach", "pudovkin_garfield")
        tied = [row for row in rows if row["citations"] == "10"]
        assert {row["percentile_display"] for row in tied} == {"91.0"}
        assert {row["value"] for row in tied} == {"1.0000"}

    def test_all_approaches_once_per_publication(self, tmp_path, main_csv):
        """--approach all gives one row per publication and approach"""
        rows = run(tmp_path, "score", "--input", main_csv, "--approach", "all")
        assert len(rows) == 105 * 9
        assert len(by_approach(rows, "m091")) == 9

    def test_stdout(self, capsys, main_csv):
        """Without --output the report goes to stdout with its header first"""
        assert main(["score", "--input", main_csv]) == 0
        out = capsys.readouterr().out
        assert out.startswith("subject,field,citations,approach,scheme,value,value_exact,value_pct")

    def test_verbose_logs_debug(self, tmp_path, main_csv, caplog):
        """--verbose lowers the logger to DEBUG"""
        run(tmp_path, "score", "--input", main_csv, "--verbose")
        indicator_logger.set_level("WARNING")
        assert "Built 1 distributions" in caplog.text


class TestEvaluate:
    def test_groups(self, tmp_path, main_csv):
        """Group indicators for the top and tied groups"""
        rows = run(tmp_path, "evaluate", "--input", main_csv, "--approach", "all")
        top = by_approach(rows, "grp_top")
        tie = by_approach(rows, "grp_tie")
        assert top["fractional"]["value"] == "0.1000"
        assert top["cwts"]["value"] == "0.0700"
        assert top["cwts"]["threshold"] == "10"
        assert top["cwts"]["factor_exact"] == Fraction(7, 10)
        assert tie["fractional"]["value"] == "0.0550"
        assert tie["fractional"]["value_pct"] == "5.50"

    def test_scenarios(self, tmp_path):
        """Moving citations across the threshold changes the tied scores"""
        nine = write_field(tmp_path / "nine.csv", {0: 90, 9: 1, 10: 9, 20: 5})
        rows = run(tmp_path, "score", "--input", nine)
        assert {row["value"] for row in rows if row["citations"] == "10"} == {"0.6111"}
        eleven = write_field(tmp_path / "eleven.csv", {0: 90, 10: 8, 11: 2, 20: 5})
        rows = run(tmp_path, "score", "--input", eleven, "--precision", "5")
        assert {row["value"] for row in rows if row["citations"] == "10"} == {"0.43750"}

    def test_memberships(self, tmp_path, main_csv, fixtures_dir, caplog):
        """Membership file adds a group and warns about one without publications"""
        with caplog.at_level("WARNING", logger="PBI"):
            rows = run(tmp_path, "evaluate", "--input", main_csv,
                       "--memberships", str(fixtures_dir / "memberships.csv"))
        subjects = {row["subject"] for row in rows}
        assert subjects == {"grp_star", "grp_tie", "grp_top"}
        assert by_approach(rows, "grp_star")["fractional"]["value"] == "1.0000"
        assert "grp_empty" in caplog.text


class TestAudit:
    def test_main_field_all_approaches(self, tmp_path, main_csv):
        """Whole-field values of every approach on the main field"""
        rows = by_approach(run(tmp_path, "audit", "--input", main_csv, "--approach", "all"), "math")
        assert list(rows) == [
            "fractional", "leydesdorff", "nsb", "pudovkin_garfield", "scimago", "rousseau",
            "schreiber", "schreiber_inclusive", "cwts",
        ]
        expected = {
            "fractional": Fraction(1, 10),
            "leydesdorff": Fraction(5, 105),
            "nsb": Fraction(5, 105),
            "scimago": Fraction(15, 105),
            "rousseau": Fraction(15, 105),
            "schreiber": Fraction(10, 105),
            "schreiber_inclusive": Fraction(11, 105),
            "cwts": Fraction(1, 10),
        }
        for approach, value in expected.items():
            assert rows[approach]["value_exact"] == value, approach
        assert rows["scimago"]["value_pct"] == "14.29"
        assert rows["nsb"]["value_pct"] == "4.76"
        assert rows["schreiber"]["value_pct"] == "9.52"
        assert rows["cwts"]["value_pct"] == "10.00"
        assert rows["cwts"]["factor"] == "0.7000"
        assert rows["fractional"]["deviation_exact"] == 0
        assert rows["fractional"]["exact_match"] == "true"
        assert rows["nsb"]["exact_match"] == "false"

    def test_byte_identical(self, tmp_path, main_csv):
        """Audit output does not depend on the worker count"""
        outputs = []
        for k, workers in enumerate(["1", "1", "2"]):
            output = tmp_path / f"audit{k}.csv"
            argv = ["audit", "--input", main_csv, "--approach", "all", "--workers", workers, "--output", str(output)]
            assert main(argv) == 0
            outputs.append(output.read_bytes())
        assert outputs[0] == outputs[1] == outputs[2]

    def test_tie_field(self, tmp_path):
        """Fractional audit hits 10% on a field with a split block"""
        path = write_field(tmp_path / "econ.csv", {0: 94, 10: 1, 20: 10}, field_id="econ")
        rows = run(tmp_path, "audit", "--input", path)
        assert rows[0]["value_pct"] == "10.00"

    def test_r6(self, tmp_path, main_csv):
        """r6 audit scores 1.91 and marks top-x-only approaches"""
        rows = by_approach(run(tmp_path, "audit", "--input", main_csv, "--scheme", "r6", "--approach", "all"), "math")
        assert rows["fractional"]["value"] == "1.9100"
        assert rows["scimago"]["value"] == ""
        assert rows["scimago"]["note"] == "not applicable"
        assert "value_pct" not in rows["fractional"]

    def test_scheme_file(self, tmp_path, main_csv, fixtures_dir):
        """Scheme read from a JSON file"""
        rows = run(tmp_path, "audit", "--input", main_csv, "--scheme-file", str(fixtures_dir / "r6_scheme.json"))
        assert rows[0]["scheme"] == "r6_file"
        assert rows[0]["value_exact"] == Fraction(191, 100)

    @pytest.mark.parametrize("flags", [["--top", "5"], ["--scheme", "topX=5"], ["--scheme", "top5"]])
    def test_top5(self, tmp_path, main_csv, flags):
        """Every way of asking for a top 5% scheme"""
        rows = run(tmp_path, "audit", "--input", main_csv, *flags)
        assert rows[0]["target_exact"] == Fraction(1, 20)
        assert rows[0]["value_exact"] == Fraction(1, 20)

    def test_json(self, tmp_path, main_csv):
        """JSON report keeps decimal and exact columns"""
        rows = run(tmp_path, "audit", "--input", main_csv, "--format", "json", name="audit.json")
        assert rows[0]["value"] == "0.1000"
        assert json.loads((tmp_path / "audit.json").read_text())[0]["value_exact"] == "1/10"


class TestThresholds:
    def test_main_field(self, tmp_path, main_csv):
        """90th percentile threshold and band shares of the main field"""
        row = run(tmp_path, "thresholds", "--input", main_csv)[0]
        assert row["threshold"] == "10"
        assert (row["share_below"], row["share_at"], row["share_above"]) == ("85.71", "9.52", "4.76")
        assert row["cwts_threshold"] == "10"

    def test_two_more_citations(self, tmp_path):
        """CWTS threshold moves up to 11"""
        path = write_field(tmp_path / "eleven.csv", {0: 90, 10: 8, 11: 2, 20: 5})
        row = run(tmp_path, "thresholds", "--input", path, "--percentile", "9/10")[0]
        assert row["cwts_threshold"] == "11"

    def test_singleton(self, tmp_path):
        """Single-publication field has everything at the threshold"""
        path = write_field(tmp_path / "solo.csv", {0: 1}, field_id="solo")
        row = run(tmp_path, "thresholds", "--input", path)[0]
        assert row["threshold"] == "0"
        assert (row["share_below"], row["share_at"], row["share_above"]) == ("0.00", "100.00", "0.00")


class TestErrors:
    def test_negative_citations(self, tmp_path, caplog):
        """Negative citation counts fail with exit status 1"""
        path = tmp_path / "bad.csv"
        path.write_text("pub_id,field_id,citations\np1,math,-3\n")
        assert main(["score", "--input", str(path)]) == 1
        assert "non-negative" in caplog.text

    def test_missing_file(self, tmp_path):
        """Missing input file fails with exit status 1"""
        assert main(["score", "--input", str(tmp_path / "nope.csv")]) == 1

    def test_unknown_scheme(self, main_csv):
        """Unknown scheme name fails with exit status 1"""
        assert main(["audit", "--input", main_csv, "--scheme", "r7"]) == 1

    @pytest.mark.parametrize("percent", ["0", "100", "abc"])
    def test_bad_top(self, main_csv, percent):
        """Top percentages outside (0, 100) are rejected"""
        assert main(["audit", "--input", main_csv, "--top", percent]) == 1

    def test_bad_percentile(self, main_csv):
        """Percentile 1 is rejected"""
        assert main(["thresholds", "--input", main_csv, "--percentile", "1"]) == 1

    def test_top_x_approach_with_general_scheme_is_noted(self, tmp_path, main_csv):
        """Top-x-only approach under r6 yields noted empty rows"""
        rows = run(tmp_path, "evaluate", "--input", main_csv, "--scheme", "r6", "--approach", "schreiber")
        assert {row["note"] for row in rows} == {"not applicable"}
        assert {row["value"] for row in rows} == {""}

    @pytest.mark.parametrize("argv", [
        ["audit"],
        ["audit", "--input", "x.csv", "--scheme", "top10", "--top", "5"],
        ["audit", "--input", "x.csv", "--precision", "0"],
        ["audit", "--input", "x.csv", "--approach", "h-index"],
        ["rank", "--input", "x.csv"],
    ])
    def test_usage_errors(self, argv):
        """Bad arguments exit with status 2"""
        with pytest.raises(SystemExit) as excinfo:
            main(argv)
        assert excinfo.value.code == 2

    def test_help_documents_defaults(self, capsys):
        """Help text shows the default scheme and approach"""
        with pytest.raises(SystemExit) as excinfo:
            main(["audit", "--help"])
        assert excinfo.value.code == 0
        out = capsys.readouterr().out
        assert "top10" in out
        assert "fractional" in out
