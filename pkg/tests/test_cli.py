"""Command-line behavior: exit codes, report formats, determinism, export."""

from __future__ import annotations

import io
import json

import jsonschema
import pytest

from auglink.cli import RunConfig, analyze, build_parser, main
from auglink.diagram import link_components, parse_diagram
from auglink.report_schema import REPORT_SCHEMA

from braid import braid_closure
from corpus import FIGURE8, GOLDEN, GOLDEN_TWIST, TREFOIL, UNKNOT0


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def _run(*inputs, **kwargs) -> tuple[int, str]:
    out = io.StringIO()
    status = analyze(RunConfig(inputs=tuple(inputs), **kwargs), stdout=out)
    return status, out.getvalue()


def _run_json(*inputs, **kwargs):
    status, text = _run(*inputs, json_output=True, **kwargs)
    return status, json.loads(text)


def test_figure8_without_attestation(tmp_path):
    path = _write(tmp_path, "fig8.json", {"name": "figure-8", "pd": FIGURE8})
    status, entries = _run_json(path)
    assert status == 0
    (entry,) = entries
    assert entry["ok"] and entry["name"] == "figure-8"
    report = entry["report"]
    assert report["tw"] == 2
    assert [c["c"] for c in report["circles"]] == [2, 2]
    hyperbolic = report["certificates"]["hyperbolic_6thm"]
    assert not hyperbolic["certified"]
    reasons = " ".join(hyperbolic["reasons"])
    assert "attestation" in reasons and "circle" in reasons


def test_geodesic_certified_end_to_end(tmp_path):
    pd, signs = braid_closure([1] * 58, 2)
    path = _write(tmp_path, "column58.json", {"pd": pd, "signs": signs})
    status, entries = _run_json(path, attest_hyperbolic=True)
    assert status == 0
    report = entries[0]["report"]
    assert report["tw"] == 1
    assert report["circles"][0]["c"] == 58
    geo = report["certificates"]["geodesic_hk"]
    assert geo["certified"]
    assert geo["sum_of_inverses"] == "1/58"
    assert geo["reasons"] == []


def test_annotated_region_through_the_cli(tmp_path):
    from auglink.twist import detect_bigon_chains

    diagram = parse_diagram(json.dumps(FIGURE8))
    ids = sorted(detect_bigon_chains(diagram)[0].crossing_ids)
    path = _write(
        tmp_path,
        "annotated.json",
        {"pd": FIGURE8, "regions": [{"crossings": ids, "strands": 2, "half_twists": 2}]},
    )
    status, entries = _run_json(path)
    assert status == 0
    assert entries[0]["ok"]
    assert entries[0]["report"]["tw"] == 2


def test_reports_validate_against_shipped_schema(tmp_path):
    good = _write(tmp_path, "good.json", {"name": "trefoil", "pd": TREFOIL})
    bad = str(tmp_path / "missing.json")
    trivial = _write(tmp_path, "trivial.json", UNKNOT0)
    status, entries = _run_json(good, bad, trivial, attest_hyperbolic=True)
    assert status == 2  # one input failed
    jsonschema.validate(entries, REPORT_SCHEMA)
    assert [e["ok"] for e in entries] == [True, False, True]
    assert entries[2]["report"]["tw"] == 0
    assert entries[2]["report"]["volume"] is None


def test_processing_continues_after_parse_error(tmp_path):
    bad = _write(tmp_path, "bad.json", {"pd": [[1, 2, 3]]})
    good = _write(tmp_path, "good.json", TREFOIL)
    status, entries = _run_json(bad, good)
    assert status == 2
    assert not entries[0]["ok"] and "error" in entries[0]
    assert entries[1]["ok"]
    assert entries[1]["report"]["tw"] == 1


def test_split_diagram_is_an_input_error(tmp_path):
    path = _write(tmp_path, "split.json", [[1, 1, 2, 2], [3, 3, 4, 4]])
    status, entries = _run_json(path)
    assert status == 2
    assert not entries[0]["ok"]
    assert "split" in entries[0]["error"]


def test_byte_identical_reports(tmp_path):
    path = _write(tmp_path, "fig8.json", {"pd": FIGURE8})
    first = _run(path, json_output=True)
    second = _run(path, json_output=True)
    assert first == second
    text_first = _run(path)
    text_second = _run(path)
    assert text_first == text_second


def test_text_mode_uses_six_significant_digits(tmp_path):
    path = _write(tmp_path, "fig8.json", {"name": "figure-8", "pd": FIGURE8})
    status, text = _run(path)
    assert status == 0
    assert "tw: 2" in text
    assert "7.32772" in text  # 2 v8 to 6 significant digits
    assert "2.06155" in text  # sqrt(4.25)
    assert "figure-8" in text


def test_text_mode_reports_errors_per_file(tmp_path):
    bad = _write(tmp_path, "bad.json", {"pd": 5})
    status, text = _run(bad)
    assert status == 2
    assert "error:" in text


def test_trivial_diagram_text_mode(tmp_path):
    path = _write(tmp_path, "unknot.json", UNKNOT0)
    status, text = _run(path)
    assert status == 0
    assert "tw: 0" in text
    assert "volume: n/a" in text


def test_export_augmented_files(tmp_path):
    out_dir = tmp_path / "exports"
    paths = {
        name: _write(tmp_path, f"{name}.json", {"name": name, "pd": pd})
        for name, pd in GOLDEN.items()
    }
    status, entries = _run_json(
        *(paths[name] for name in sorted(GOLDEN)), export_dir=str(out_dir)
    )
    assert status == 0
    for entry in entries:
        name = entry["name"]
        export_path = entry["export"]
        assert export_path.endswith(f"{name}.augmented.json")
        exported = parse_diagram((out_dir / f"{name}.augmented.json").read_text())
        original_comps, tw, _ = GOLDEN_TWIST[name]
        assert link_components(exported).component_count == original_comps + tw


def test_trivial_diagram_exports_nothing(tmp_path):
    out_dir = tmp_path / "exports"
    path = _write(tmp_path, "unknot.json", UNKNOT0)
    status, entries = _run_json(path, export_dir=str(out_dir))
    assert status == 0
    assert "export" not in entries[0]
    assert not out_dir.exists() or not list(out_dir.iterdir())


def test_strict_flag_rejects_unknown_keys(tmp_path):
    path = _write(tmp_path, "extra.json", {"pd": TREFOIL, "comment": "hello"})
    status, entries = _run_json(path, strict=True)
    assert status == 2
    assert "unknown" in entries[0]["error"]
    status, entries = _run_json(path)
    assert status == 0
    assert any("comment" in w for w in entries[0]["warnings"])


def test_main_wires_flags(tmp_path, capsys):
    path = _write(tmp_path, "fig8.json", {"pd": FIGURE8})
    status = main(["analyze", path, "--json", "--attest-hyperbolic"])
    captured = capsys.readouterr()
    assert status == 0
    entries = json.loads(captured.out)
    reasons = entries[0]["report"]["certificates"]["hyperbolic_6thm"]["reasons"]
    assert not any("attestation" in r for r in reasons)


def test_empty_file_list_is_a_usage_error(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["analyze"])
    assert excinfo.value.code == 2


def test_parser_knows_all_flags():
    parser = build_parser()
    args = parser.parse_args(
        ["analyze", "a.json", "b.json", "--json", "--attest-hyperbolic",
         "--export-augmented", "out", "--strict"]
    )
    assert args.files == ["a.json", "b.json"]
    assert args.json and args.attest_hyperbolic and args.strict
    assert args.export_augmented == "out"
