import hashlib
import subprocess
import sys

import pytest

from fasy.catalog import open_catalog
from fasy.cli import main
from fasy.fixtures import synthetic_nose
from fasy.imaging import read_pgm, write_pgm

GOLDEN_NAME = "composite_tuned.pgm"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def cli_catalog(tmp_path, capsys):
    root = tmp_path / "catalog"
    code, out, _ = run(capsys, "gen-fixtures", "--output", str(root),
                       "--seed", "7", "--per-kind", "2")
    assert code == 0
    assert out.strip() == "14"
    return root


class TestGenFixtures:
    def test_deterministic_across_directories(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        for target in (a, b):
            code, _, _ = run(capsys, "gen-fixtures", "--output", str(target),
                             "--seed", "3")
            assert code == 0
        cat_a, cat_b = open_catalog(a), open_catalog(b)
        assert len(cat_a) == len(cat_b) == 21
        for rid in range(21):
            assert cat_a.image_bytes(rid) == cat_b.image_bytes(rid)
            assert cat_a.component(rid).attributes == cat_b.component(rid).attributes

    def test_different_seeds_differ(self, tmp_path, capsys):
        a, b = tmp_path / "a", tmp_path / "b"
        run(capsys, "gen-fixtures", "--output", str(a), "--seed", "1")
        run(capsys, "gen-fixtures", "--output", str(b), "--seed", "2")
        bytes_a = [open_catalog(a).image_bytes(r) for r in range(21)]
        bytes_b = [open_catalog(b).image_bytes(r) for r in range(21)]
        assert bytes_a != bytes_b


class TestIngestAndQuery:
    def test_round_trip(self, cli_catalog, tmp_path, capsys):
        pgm = tmp_path / "nose.pgm"
        pgm.write_bytes(write_pgm(synthetic_nose(
            width=15, height=26, sharp=False, nostril=2,
            ink=50, card=230)))
        code, out, _ = run(
            capsys, "ingest", "--catalog", str(cli_catalog),
            "--kind", "Nose",
            "--attr", "Sharpness=Blunt", "--attr", "Nostrils=Small",
            "--attr", "Length=Normal", "--attr", "Width=Normal",
            str(pgm))
        assert code == 0
        new_id = int(out.strip())

        code, out, _ = run(capsys, "query", "--catalog", str(cli_catalog),
                           "--kind", "Nose", "--attr", "Sharpness=Blunt")
        assert code == 0
        rows = [line.split("\t") for line in out.strip().splitlines()]
        assert str(new_id) in [row[0] for row in rows]
        for row in rows:
            assert row[1] == "Nose"
            assert "Sharpness=Blunt" in row[2].split()

    def test_ingest_incomplete_attributes_exits_2(self, cli_catalog, tmp_path,
                                                  capsys):
        pgm = tmp_path / "nose.pgm"
        pgm.write_bytes(write_pgm(synthetic_nose(
            width=15, height=26, sharp=False, nostril=2,
            ink=50, card=230)))
        code, out, err = run(
            capsys, "ingest", "--catalog", str(cli_catalog),
            "--kind", "Nose", "--attr", "Sharpness=Blunt", str(pgm))
        assert code == 2
        assert out == ""
        assert "error[SchemaViolation]" in err

    def test_ingest_junk_image_exits_2(self, cli_catalog, tmp_path, capsys):
        junk = tmp_path / "junk.pgm"
        junk.write_bytes(b"hello")
        code, _, err = run(
            capsys, "ingest", "--catalog", str(cli_catalog),
            "--kind", "Nose",
            "--attr", "Sharpness=Blunt", "--attr", "Nostrils=Small",
            "--attr", "Length=Normal", "--attr", "Width=Normal",
            str(junk))
        assert code == 2
        assert "error[" in err

    def test_missing_image_file_exits_2(self, cli_catalog, capsys):
        code, _, err = run(
            capsys, "ingest", "--catalog", str(cli_catalog),
            "--kind", "Nose", "/no/such/file.pgm")
        assert code == 2
        assert "error[io]" in err

    def test_unknown_kind_exits_2(self, cli_catalog, capsys):
        code, _, err = run(capsys, "query", "--catalog", str(cli_catalog),
                           "--kind", "Chin")
        assert code == 2
        assert "error[SchemaViolation]" in err


class TestCompose:
    def test_golden_composite_reproduced(self, fixture_catalog_dir, data_dir,
                                         tmp_path, capsys):
        out_path = tmp_path / "face.pgm"
        code, out, _ = run(
            capsys, "compose",
            "--catalog", str(fixture_catalog_dir),
            "--query-file", str(data_dir / "queries" / "demo_a.txt"),
            "--mode", "tuned",
            "--output", str(out_path))
        assert code == 0
        golden = (data_dir / "golden" / GOLDEN_NAME).read_bytes()
        assert out_path.read_bytes() == golden
        lines = out.strip().splitlines()
        assert lines[0].startswith("anchor ")
        assert len(lines) == 7

    def test_blind_mode_differs_from_tuned(self, fixture_catalog_dir, data_dir,
                                           tmp_path, capsys):
        out_path = tmp_path / "face.pgm"
        code, _, _ = run(
            capsys, "compose",
            "--catalog", str(fixture_catalog_dir),
            "--query-file", str(data_dir / "queries" / "demo_a.txt"),
            "--mode", "blind",
            "--output", str(out_path))
        assert code == 0
        golden = (data_dir / "golden" / GOLDEN_NAME).read_bytes()
        produced = out_path.read_bytes()
        assert produced != golden
        img = read_pgm(produced)
        assert (img.rows, img.cols) == (112, 92)

    def test_explicit_id_flags(self, fixture_catalog_dir, tmp_path, capsys):
        out_path = tmp_path / "face.pgm"
        code, out, _ = run(
            capsys, "compose",
            "--catalog", str(fixture_catalog_dir),
            "--cutting", "0", "--right-eyebrow", "3", "--right-eye", "6",
            "--left-eyebrow", "9", "--left-eye", "12", "--nose", "15",
            "--lip", "18",
            "--output", str(out_path))
        assert code == 0
        assert out_path.exists()

    def test_id_flags_match_query_file_pick(self, fixture_catalog_dir, data_dir,
                                            tmp_path, capsys):
        # demo_a matches the seeded records, the lowest id of each kind
        via_ids = tmp_path / "ids.pgm"
        run(capsys, "compose", "--catalog", str(fixture_catalog_dir),
            "--cutting", "0", "--right-eyebrow", "3", "--right-eye", "6",
            "--left-eyebrow", "9", "--left-eye", "12", "--nose", "15",
            "--lip", "18", "--output", str(via_ids))
        golden = (data_dir / "golden" / GOLDEN_NAME).read_bytes()
        assert via_ids.read_bytes() == golden

    def test_wrong_kind_id_exits_2(self, fixture_catalog_dir, tmp_path, capsys):
        code, _, err = run(
            capsys, "compose",
            "--catalog", str(fixture_catalog_dir),
            "--cutting", "3", "--right-eyebrow", "0", "--right-eye", "6",
            "--left-eyebrow", "9", "--left-eye", "12", "--nose", "15",
            "--lip", "18",
            "--output", str(tmp_path / "face.pgm"))
        assert code == 2
        assert "error[InvalidRequest]" in err

    def test_missing_id_flags_exit_2(self, fixture_catalog_dir, tmp_path,
                                     capsys):
        code, _, err = run(
            capsys, "compose",
            "--catalog", str(fixture_catalog_dir),
            "--cutting", "0",
            "--output", str(tmp_path / "face.pgm"))
        assert code == 2
        assert "--lip" in err

    def test_query_file_and_ids_conflict(self, fixture_catalog_dir, data_dir,
                                         tmp_path, capsys):
        code, _, err = run(
            capsys, "compose",
            "--catalog", str(fixture_catalog_dir),
            "--query-file", str(data_dir / "queries" / "demo_a.txt"),
            "--cutting", "0",
            "--output", str(tmp_path / "face.pgm"))
        assert code == 2
        assert "error[InvalidRequest]" in err

    def test_overrides_file_moves_lip(self, fixture_catalog_dir, data_dir,
                                      tmp_path, capsys):
        plain, moved = tmp_path / "plain.pgm", tmp_path / "moved.pgm"
        query = str(data_dir / "queries" / "demo_a.txt")
        _, out_plain, _ = run(
            capsys, "compose", "--catalog", str(fixture_catalog_dir),
            "--query-file", query, "--output", str(plain))
        override_file = tmp_path / "nudge.txt"
        override_file.write_text("override lip\ndrow 4\ndcol -3\n")
        code, out_moved, _ = run(
            capsys, "compose", "--catalog", str(fixture_catalog_dir),
            "--query-file", query, "--overrides", str(override_file),
            "--output", str(moved))
        assert code == 0
        assert plain.read_bytes() != moved.read_bytes()

        def lip_line(text):
            return next(l for l in text.splitlines() if l.startswith("lip "))

        _, pr, pc = lip_line(out_plain).split()
        _, mr, mc = lip_line(out_moved).split()
        assert int(mr) == int(pr) + 4
        assert int(mc) == int(pc) - 3

    def test_constants_file_changes_layout(self, fixture_catalog_dir, data_dir,
                                           tmp_path, capsys):
        consts = tmp_path / "consts.txt"
        consts.write_text("constants\n"
                          "anchor-col-shift 12\n"
                          "eyebrow-row-offset -5\n"
                          "nose-row-offset -2\n"
                          "lip-row-gap 5\n"
                          "left-eyebrow-col-offset -5\n")
        out_path = tmp_path / "face.pgm"
        code, out, _ = run(
            capsys, "compose", "--catalog", str(fixture_catalog_dir),
            "--query-file", str(data_dir / "queries" / "demo_a.txt"),
            "--constants", str(consts), "--output", str(out_path))
        assert code == 0
        anchor = next(l for l in out.splitlines() if l.startswith("anchor "))
        golden_anchor_col = 22  # +10 shift of the ear column 12
        assert int(anchor.split()[2]) == golden_anchor_col + 2


class TestProcessLevel:
    def test_console_script_help(self):
        proc = subprocess.run([sys.executable, "-m", "fasy", "--help"],
                              capture_output=True, text=True, timeout=60)
        assert proc.returncode == 0
        for command in ("ingest", "query", "compose", "gen-fixtures", "serve"):
            assert command in proc.stdout

    def test_compose_golden_via_subprocess(self, fixture_catalog_dir, data_dir,
                                           tmp_path):
        out_path = tmp_path / "face.pgm"
        proc = subprocess.run(
            [sys.executable, "-m", "fasy", "compose",
             "--catalog", str(fixture_catalog_dir),
             "--query-file", str(data_dir / "queries" / "demo_a.txt"),
             "--output", str(out_path)],
            capture_output=True, text=True, timeout=120)
        assert proc.returncode == 0, proc.stderr
        golden = (data_dir / "golden" / GOLDEN_NAME).read_bytes()
        assert hashlib.sha256(out_path.read_bytes()).hexdigest() == \
            hashlib.sha256(golden).hexdigest()
