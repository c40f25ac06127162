"""Command-line behavior of the figures tool."""

from figures.cli import main


class TestCli:
    def test_fig1(self, type1_csvs, tmp_path, capsys):
        out = tmp_path / "fig1.svg"
        argv = ["fig1", "--out", str(out)]
        for path in type1_csvs:
            argv += ["--in", path]
        assert main(argv) == 0
        assert out.stat().st_size > 0

    def test_bounds_figure(self, bounds_csv, tmp_path):
        out = tmp_path / "bounds.png"
        assert main(["bounds-vs-m", "--in", bounds_csv, "--out", str(out)]) == 0
        assert out.stat().st_size > 0

    def test_unknown_figure_id(self, bounds_csv, tmp_path, capsys):
        assert main(["fig99", "--in", bounds_csv,
                     "--out", str(tmp_path / "x.svg")]) == 1

    def test_missing_input_flag(self, tmp_path, capsys):
        assert main(["fig1", "--out", str(tmp_path / "x.svg")]) == 1

    def test_empty_csv(self, tmp_path, capsys):
        path = tmp_path / "empty.csv"
        path.write_text("B_prop,B_SYS\n")
        assert main(["fig1", "--in", str(path),
                     "--out", str(tmp_path / "x.svg")]) == 1
        assert "no data rows" in capsys.readouterr().err

    def test_missing_column_message(self, tmp_path, capsys):
        path = tmp_path / "partial.csv"
        path.write_text("B_prop\n0.1\n")
        assert main(["fig1", "--in", str(path),
                     "--out", str(tmp_path / "x.svg")]) == 1
        assert "B_SYS" in capsys.readouterr().err

    def test_title_override(self, bounds_csv, tmp_path):
        out = tmp_path / "titled.svg"
        assert main(["bounds-vs-m", "--in", bounds_csv, "--out", str(out),
                     "--title", "custom title text"]) == 0
        assert "custom title text" in out.read_text()
