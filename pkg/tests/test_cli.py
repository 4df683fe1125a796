import json

from cuspidal import catalog
from cuspidal.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_surface_report_quartic(capsys):
    code, out, err = run_cli(capsys, "--json", "surface-report", "new_quartic")
    assert code == 0
    rep = json.loads(out)
    assert rep["n_points"] == 16
    assert rep["verdict"] == "all_A1"
    assert rep["free_action"]["free"] is False
    assert rep["invariant_under_action"] is True
    # progress goes to stderr only
    assert "certifying" in err


def test_surface_report_unknown_name(capsys):
    code, out, err = run_cli(capsys, "--json", "surface-report", "nonsense")
    assert code == 2


def test_surface_report_chart_restriction(capsys):
    code, out, err = run_cli(
        capsys, "--json", "surface-report", "new_quartic", "--chart", "w"
    )
    assert code == 0
    rep = json.loads(out)
    assert rep["partial"] is True
    assert rep["chart_degree"] == 15
    assert rep["chart_points"] == 15


def test_surface_report_from_file(tmp_path, capsys):
    f = tmp_path / "surf.txt"
    f.write_text("x^2+y^2+z^2+w^2")
    code, out, err = run_cli(capsys, "--json", "surface-report", str(f))
    assert code == 0
    rep = json.loads(out)
    assert rep["verdict"] == "smooth"


def test_surface_report_parse_error(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("2x + q")
    code, out, err = run_cli(capsys, "--json", "surface-report", str(f))
    assert code == 2


def test_reproduce_missing_action_catalog(capsys):
    code, out, err = run_cli(
        capsys, "--json", "reproduce-construction", "--action", "1"
    )
    assert code == 1
    rep = json.loads(out)
    assert rep["pass"] is False
    assert "a_1" in rep["reason"]


def test_divisibility_rejects_quartic(capsys):
    code, out, err = run_cli(capsys, "--json", "divisibility", "new_quartic")
    assert code == 2


def test_usage_error(capsys):
    code, out, err = run_cli(capsys, "no-such-command")
    assert code == 2


def test_reproduce_negative_control_corrupted_quartic():
    # corrupting one catalog coefficient must fail at the node certificate
    # stage and no later
    from cuspidal.reproduce import reproduce_construction

    bad = catalog.XYZW.parse(catalog.NEW_QUARTIC_TEXT) + catalog.XYZW.var("x") ** 4
    report = reproduce_construction(quartic_override=bad)
    assert report["pass"] is False
    failed = [s for s in report["stages"] if not s["ok"]]
    assert failed[0]["stage"] == "quartic_node_certificate"
    assert report["stages"][-1]["stage"] == "quartic_node_certificate"
