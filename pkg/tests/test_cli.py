"""The command-line interface, exercised in process through run_command."""
from __future__ import annotations

import json

import pytest

from cspace.cli import run_command


@pytest.fixture()
def ci_file(tmp_path):
    path = str(tmp_path / "ci.ctop")
    assert run_command(["new", "interval-c", "-o", path])[0] == 0
    return path


@pytest.fixture()
def circle_file(tmp_path):
    path = str(tmp_path / "c1.ctop")
    assert run_command(["new", "circle-n-stop", "--stops", "1", "-o", path])[0] == 0
    return path


class TestNew:
    def test_writes_documents_and_reports_the_path(self, tmp_path):
        out = str(tmp_path / "x.ctop")
        code, text = run_command(["new", "line-c", "--window", "2", "-o", out])
        assert code == 0
        assert text == f"wrote {out}"
        doc = json.load(open(out))
        assert doc["schema"] == 1
        assert len(doc["vertices"]) == 5

    def test_prints_canonical_json_without_output_path(self):
        code, text = run_command(["new", "interval-c"])
        assert code == 0
        doc = json.loads(text)
        assert doc["edges"][0]["id"] == "e"

    def test_rejects_unknown_kinds_and_bad_parameters(self):
        assert run_command(["new", "moebius"])[0] == 2
        assert run_command(["new", "line-c"])[0] == 2
        assert run_command(["new", "interval-c", "--stops", "3"])[0] == 2


class TestCategoryCommands:
    def test_table_output_summarizes_objects_arrows_and_homs(self, tmp_path):
        path = str(tmp_path / "cj.ctop")
        run_command(["new", "interval-j", "-o", path])
        code, text = run_command(["pi1", path, "--bound", "3"])
        assert code == 0
        lines = text.splitlines()
        assert lines[0] == "objects: 0,1,m; arrows: 6; preorder: yes; truncated: no"
        assert "hom(0,1): [e1,e2]" in lines

    def test_machine_output_is_one_json_object_per_class(self, ci_file):
        code, text = run_command(["pi1", ci_file, "--bound", "2", "--format", "machine"])
        assert code == 0
        rows = [json.loads(line) for line in text.splitlines()]
        assert len(rows) == 3
        assert {"source", "target", "word", "size", "truncated"} <= set(rows[0])

    def test_hom_lists_class_representatives(self, ci_file):
        code, text = run_command(["hom", ci_file, "0", "1", "--bound", "2"])
        assert code == 0
        assert text.splitlines() == ["classes: 1; truncated: no", "[e]"]

    def test_monoid_prints_the_composition_table(self, circle_file):
        code, text = run_command(["monoid", circle_file, "0", "--bound", "3"])
        assert code == 0
        lines = text.splitlines()
        assert lines[0] == "classes: 4; identity: 0; truncated: yes"
        assert lines[-1] == "3: 3 - - -"

    def test_hom_rejects_vertices_that_are_not_objects(self, ci_file):
        code, text = run_command(["hom", ci_file, "0", "zzz", "--bound", "2"])
        assert code == 2
        assert "zzz" in text


class TestCheck:
    def test_positive_verdicts_exit_zero(self, ci_file):
        assert run_command(["check", ci_file, "flexible", "--bound", "3"])[0] == 0
        assert run_command(["check", ci_file, "preflexible", "--bound", "3"])[0] == 0
        assert run_command(["check", ci_file, "border-flexible"])[0] == 0
        assert run_command(["check", ci_file, "one-simple", "--bound", "3"])[0] == 0
        assert run_command(["check", ci_file, "total-support"])[0] == 0

    def test_negative_verdicts_exit_one_with_witness(self, tmp_path):
        path = str(tmp_path / "dm.ctop")
        run_command(["new", "interval-delayed-minus", "-o", path])
        code, text = run_command(["check", path, "border-flexible"])
        assert code == 1
        assert "witness: (0;[e];{}) is not controlled" in text

    def test_one_simple_failure_names_the_hom_set(self, circle_file):
        code, text = run_command(["check", circle_file, "one-simple", "--bound", "3"])
        assert code == 1
        assert "hom(0,0)" in text

    def test_missing_bound_is_a_usage_error(self, ci_file):
        code, text = run_command(["check", ci_file, "preflexible"])
        assert code == 2
        assert "bound" in text


class TestConstructions:
    def test_product_and_report(self, tmp_path, ci_file):
        out = str(tmp_path / "prod.ctop")
        assert run_command(["product", ci_file, ci_file, "-o", out])[0] == 0
        code, text = run_command(["report", out, "--bound", "4"])
        assert code == 0
        assert "flexible space: yes" in text
        assert "arrows: 9" in text

    def test_restrict_and_hom(self, tmp_path):
        path = str(tmp_path / "cj.ctop")
        run_command(["new", "interval-j", "-o", path])
        out = str(tmp_path / "ends.ctop")
        assert run_command(["restrict", path, "--keep", "0,1", "-o", out])[0] == 0
        code, text = run_command(["hom", out, "0", "1", "--bound", "3"])
        assert code == 0
        assert text.splitlines()[1] == "[e1,e2]"

    def test_quotient_collapses_via_a_spec_file(self, tmp_path):
        path = str(tmp_path / "rigid.ctop")
        run_command(["new", "rigid-line", "--length", "2", "-o", path])
        spec = tmp_path / "spec.json"
        spec.write_text('{"blocks": [["1", "2"]], "collapse": ["e1"]}')
        out = str(tmp_path / "q.ctop")
        assert run_command(["quotient", path, "--spec", str(spec), "-o", out])[0] == 0
        code, text = run_command(["check", out, "border-flexible"])
        assert code == 1

    def test_opposite_swaps_hom_direction(self, tmp_path, ci_file):
        out = str(tmp_path / "op.ctop")
        assert run_command(["op", ci_file, "-o", out])[0] == 0
        code, text = run_command(["hom", out, "1", "0", "--bound", "2"])
        assert code == 0
        assert text.splitlines()[0] == "classes: 1; truncated: no"


class TestCovering:
    def test_exponential_shorthand_validates(self):
        code, text = run_command(
            ["cover-validate", "--exponential", "1", "--window", "3", "--bound", "4"]
        )
        assert code == 0
        assert "covering: valid" in text

    def test_lift_prints_the_lifted_route(self):
        code, text = run_command([
            "cover-lift", "--exponential", "1", "--window", "3",
            "--route", '{"start": "0", "edges": ["e0", "e0"], "dwells": [1]}',
            "--from", "0",
        ])
        assert code == 0
        assert text == "lift: (0;[e0,e1];{1})"

    def test_bijection_summarizes_both_sides(self):
        code, text = run_command([
            "cover-bijection", "--exponential", "1", "--window", "5",
            "--from", "0", "--to", "0", "--bound", "5",
        ])
        assert code == 0
        assert "base classes: 6; total classes: 6" in text
        assert "bijection: yes (bound 5)" in text

    def test_exponential_needs_its_window(self):
        code, text = run_command(
            ["cover-validate", "--exponential", "1", "--bound", "3"]
        )
        assert code == 2
        assert "window" in text

    def test_explicit_maps_from_files(self, tmp_path, circle_file):
        total = str(tmp_path / "line.ctop")
        run_command(["new", "line-c", "--window", "2", "-o", total])
        vmap = tmp_path / "vmap.json"
        vmap.write_text(json.dumps({str(k): "0" for k in range(-2, 3)}))
        emap = tmp_path / "emap.json"
        emap.write_text(json.dumps({f"e{k}": "e0" for k in range(-2, 2)}))
        code, text = run_command([
            "cover-validate", total, circle_file,
            "--vmap", str(vmap), "--emap", str(emap),
            "--excluded=-2,2", "--bound", "3",
        ])
        assert code == 0, text


class TestUsage:
    def test_unknown_subcommand_is_a_usage_error(self):
        assert run_command(["frobnicate"])[0] == 2

    def test_missing_files_exit_two(self):
        assert run_command(["pi1", "/does/not/exist.ctop", "--bound", "2"])[0] == 2

    def test_seed_flag_is_accepted(self, ci_file):
        assert run_command(["--seed", "7", "pi1", ci_file, "--bound", "2"])[0] == 0
