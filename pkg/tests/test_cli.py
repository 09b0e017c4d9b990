import os

from click.testing import CliRunner

from metricat.cli import main
from metricat.colimits import FinDiagram
from metricat.serialization import (
    diagram_to_json,
    family_to_json,
    map_to_json,
    pair_to_json,
    read_json,
    space_to_json,
    write_json,
)
from metricat.spaces import MetMap, empty_space, one_point, two_point, validate_space

PATH3 = validate_space([[0, 1, 2], [1, 0, 1], [2, 1, 0]])


def invoke(args):
    return CliRunner().invoke(main, args, catch_exceptions=False)


def write_doc(tmp_path, name, payload):
    path = str(tmp_path / name)
    write_json(path, payload)
    return path


class TestSpaceCommands:
    def test_validate_ok(self, tmp_path):
        path = write_doc(tmp_path, "k.json", space_to_json(PATH3))
        result = invoke(["space", "validate", path])
        assert result.exit_code == 0
        assert "valid: 3 points" in result.output

    def test_validate_triangle_violation(self, tmp_path):
        doc = {"points": 3, "dist": [["0", "1", "3"], ["1", "0", "1"], ["3", "1", "0"]]}
        path = write_doc(tmp_path, "bad.json", doc)
        result = invoke(["space", "validate", path])
        assert result.exit_code == 1
        assert "TriangleViolation" in result.output

    def test_validate_malformed_json(self, tmp_path):
        path = str(tmp_path / "broken.json")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("{oops")
        result = invoke(["space", "validate", path])
        assert result.exit_code == 2

    def test_validate_missing_file(self):
        result = invoke(["space", "validate", "no-such-file.json"])
        assert result.exit_code == 2

    def test_canon_is_relabeling_invariant(self, tmp_path):
        shuffled = validate_space([[0, 1, 1], [1, 0, 2], [1, 2, 0]])
        a = write_doc(tmp_path, "a.json", space_to_json(PATH3))
        b = write_doc(tmp_path, "b.json", space_to_json(shuffled))
        out_a = str(tmp_path / "ca.json")
        out_b = str(tmp_path / "cb.json")
        assert invoke(["space", "canon", a, "--out", out_a]).exit_code == 0
        assert invoke(["space", "canon", b, "--out", out_b]).exit_code == 0
        assert read_json(out_a)["space"] == read_json(out_b)["space"]
        assert len(read_json(out_a)["order"]) == 3


class TestColimitCommands:
    def test_pushout_with_verification(self, tmp_path):
        f = MetMap(one_point(), two_point(1), (0,))
        g = MetMap(one_point(), two_point(2), (0,))
        path = write_doc(tmp_path, "pair.json", pair_to_json(f, g))
        out = str(tmp_path / "po.json")
        result = invoke(["colimit", "pushout", "--eps", "1", "--in", path,
                         "--verify", "--out", out])
        assert result.exit_code == 0
        doc = read_json(out)
        assert doc["eps"] == "1"
        assert doc["apex"]["points"] == 4
        assert doc["verification"]["ok"] is True

    def test_coequalizer_collapses_parallel_pair(self, tmp_path):
        f = MetMap(one_point(), two_point(5), (0,))
        g = MetMap(one_point(), two_point(5), (1,))
        path = write_doc(tmp_path, "pair.json", pair_to_json(f, g))
        out = str(tmp_path / "coeq.json")
        result = invoke(["colimit", "coequalizer", "--eps", "1", "--in", path,
                         "--out", out])
        assert result.exit_code == 0
        doc = read_json(out)
        assert doc["apex"]["dist"] == [["0", "1"], ["1", "0"]]

    def test_diagram_without_arrows_is_a_coproduct(self, tmp_path):
        diagram = FinDiagram((one_point(), two_point(1)), ())
        path = write_doc(tmp_path, "diagram.json", diagram_to_json(diagram))
        out = str(tmp_path / "col.json")
        result = invoke(["colimit", "diagram", "--eps", "0", "--in", path,
                         "--out", out, "--verify"])
        assert result.exit_code == 0
        doc = read_json(out)
        assert doc["apex"]["points"] == 3
        assert len(doc["legs"]) == 2
        assert doc["verification"]["ok"] is True

    def test_bad_eps_is_a_usage_error(self, tmp_path):
        f = MetMap(one_point(), two_point(1), (0,))
        path = write_doc(tmp_path, "pair.json", pair_to_json(f, f))
        result = CliRunner().invoke(
            main, ["colimit", "pushout", "--eps", "zebra", "--in", path])
        assert result.exit_code == 2

    def test_mismatched_codomains_are_a_schema_error(self, tmp_path):
        f = MetMap(one_point(), two_point(1), (0,))
        g = MetMap(one_point(), two_point(2), (0,))
        path = write_doc(tmp_path, "pair.json", pair_to_json(f, g))
        result = invoke(["colimit", "coequalizer", "--eps", "0", "--in", path])
        assert result.exit_code == 2


class TestCheckCommands:
    def collapse_doc(self, tmp_path):
        f = MetMap(two_point(2), one_point(), (0, 0))
        return write_doc(tmp_path, "collapse.json", map_to_json(f))

    def test_injective_verdicts(self, tmp_path):
        subject = write_doc(tmp_path, "k.json", space_to_json(two_point(1)))
        path = self.collapse_doc(tmp_path)
        out = str(tmp_path / "r.json")
        ok = invoke(["check", "injective", "--eps", "1", "--subject", subject,
                     "--in", path, "--out", out])
        assert ok.exit_code == 0
        assert read_json(out)["ok"] is True
        bad = invoke(["check", "injective", "--eps", "1/2", "--subject", subject,
                      "--in", path, "--out", out])
        assert bad.exit_code == 1
        doc = read_json(out)
        assert doc["ok"] is False
        assert doc["witness"]["map"] in ([0, 1], [1, 0])

    def test_split_verdicts(self, tmp_path):
        section = write_doc(
            tmp_path, "s.json", map_to_json(MetMap(one_point(), two_point(1), (0,))))
        out = str(tmp_path / "r.json")
        ok = invoke(["check", "split", "--eps", "0", "--in", section, "--out", out])
        assert ok.exit_code == 0
        assert read_json(out)["retraction"] is not None
        empty = write_doc(
            tmp_path, "e.json", map_to_json(MetMap(empty_space(), one_point(), ())))
        bad = invoke(["check", "split", "--eps", "inf", "--in", empty, "--out", out])
        assert bad.exit_code == 1

    def test_pure_passes_on_section(self, tmp_path):
        section = write_doc(
            tmp_path, "s.json", map_to_json(MetMap(one_point(), two_point(1), (0,))))
        out = str(tmp_path / "r.json")
        result = invoke(["check", "pure", "--eps", "0", "--in", section, "--out", out])
        assert result.exit_code == 0
        assert read_json(out)["counterexample"] is None

    def test_pure_counterexample_round_trips(self, tmp_path):
        dom = validate_space([["0", "2", "1"], ["2", "0", "1"], ["1", "1", "0"]])
        cod = validate_space(
            [["0", "1", "1/2"], ["1", "0", "1/2"], ["1/2", "1/2", "0"]])
        f = MetMap(dom, cod, (0, 1, 2))
        path = write_doc(tmp_path, "f.json", map_to_json(f))
        fam = write_doc(
            tmp_path, "fam.json", family_to_json((one_point(), two_point(2))))
        out = str(tmp_path / "r.json")
        result = invoke(["check", "pure", "--eps", "1/2", "--variant", "pure",
                         "--family", fam, "--in", path, "--out", out])
        assert result.exit_code == 1
        doc = read_json(out)
        assert doc["ok"] is False
        assert doc["counterexample"]["best_filler_distance"] is not None

    def test_mono_verdicts(self, tmp_path):
        collapse = write_doc(
            tmp_path, "c.json", map_to_json(MetMap(two_point(1), one_point(), (0, 0))))
        out = str(tmp_path / "r.json")
        ok = invoke(["check", "mono", "--eps", "1", "--in", collapse, "--out", out])
        assert ok.exit_code == 0
        bad = invoke(["check", "mono", "--eps", "1/2", "--in", collapse, "--out", out])
        assert bad.exit_code == 1
        doc = read_json(out)
        assert doc["counterexample"]["probe"]["points"] >= 1


class TestLawsCommand:
    def test_small_run_is_green(self, tmp_path):
        out = str(tmp_path / "laws.json")
        result = invoke(["laws", "run", "--seed", "7", "--trials", "3",
                         "--budget", "3", "--out", out])
        assert result.exit_code == 0
        doc = read_json(out)
        assert doc["ok"] is True
        assert len(doc["results"]) == 28


class TestFraisseCommands:
    def test_enumerate(self, tmp_path):
        out = str(tmp_path / "spaces.json")
        result = invoke(["fraisse", "enumerate", "--grid", "1,2",
                         "--max-size", "2", "--out", out])
        assert result.exit_code == 0
        doc = read_json(out)
        assert doc["count"] == 4
        assert len(doc["spaces"]) == 4

    def test_build_and_audit(self, tmp_path):
        run_dir = str(tmp_path / "run")
        built = invoke(["fraisse", "build", "--grid", "1", "--steps", "2",
                        "--max-size", "2", "--out", run_dir])
        assert built.exit_code == 0
        manifest = read_json(os.path.join(run_dir, "manifest.json"))
        assert manifest["outcome"] == {"complete": True, "stages": [0, 1, 4]}
        audited = invoke(["fraisse", "audit", run_dir])
        assert audited.exit_code == 0
        audit = read_json(os.path.join(run_dir, "audit.json"))
        assert audit["ok"] is True

    def test_rebuild_is_byte_identical(self, tmp_path):
        args = ["fraisse", "build", "--grid", "1,2", "--steps", "2",
                "--max-size", "2", "--seed", "3"]
        a = str(tmp_path / "a")
        b = str(tmp_path / "b")
        assert invoke(args + ["--out", a]).exit_code == 0
        assert invoke(args + ["--out", b]).exit_code == 0
        files_a = sorted(
            os.path.relpath(os.path.join(root, name), a)
            for root, _, names in os.walk(a) for name in names
        )
        files_b = sorted(
            os.path.relpath(os.path.join(root, name), b)
            for root, _, names in os.walk(b) for name in names
        )
        assert files_a == files_b
        for rel in files_a:
            if rel == "manifest.json":
                ma = read_json(os.path.join(a, rel))
                mb = read_json(os.path.join(b, rel))
                ma.pop("wall_clock_seconds")
                mb.pop("wall_clock_seconds")
                assert ma == mb
                continue
            with open(os.path.join(a, rel), "rb") as fh:
                bytes_a = fh.read()
            with open(os.path.join(b, rel), "rb") as fh:
                bytes_b = fh.read()
            assert bytes_a == bytes_b, rel

    def test_budget_exceeded_persists_partial_run(self, tmp_path):
        run_dir = str(tmp_path / "run")
        result = invoke(["fraisse", "build", "--grid", "1,2", "--steps", "3",
                         "--max-size", "3", "--budget-points", "16",
                         "--out", run_dir])
        assert result.exit_code == 3
        manifest = read_json(os.path.join(run_dir, "manifest.json"))
        assert manifest["outcome"]["complete"] is False
        assert os.path.exists(os.path.join(run_dir, "stages", "K_000.json"))
        audited = invoke(["fraisse", "audit", run_dir])
        assert audited.exit_code in (0, 1)
