import io
import json

import pytest

from tau_forge.cli import REGISTRY, UsageError, emit_report, main, run_check, select_checks
from tau_forge.report import VerificationReport


def test_registry_ids_unique_and_documented():
    assert len(REGISTRY) == len({c.check_id for c in REGISTRY.values()})
    for desc in REGISTRY.values():
        assert desc.anchor
        assert desc.module


def test_select_exact_and_glob():
    assert [c.check_id for c in select_checks("lm")] == ["lm"]
    kp = [c.check_id for c in select_checks("kp.*")]
    assert "kp.m3" in kp and "kp.m4" in kp and "kp.h6" in kp and "kp.cauchy" in kp
    with pytest.raises(UsageError):
        select_checks("nothing.matches.this")


def test_run_check_eq_half():
    reports = run_check("qliouville.eq-half")
    assert len(reports) == 1
    assert reports[0].verdict
    assert reports[0].check_id == "qliouville.eq-half"


def test_run_check_lm_overrides():
    reports = run_check("lm", {"j": 1, "jprime": 1})
    assert reports[0].verdict
    assert reports[0].params["j"] == 1


def test_emit_text_format():
    rep = VerificationReport(check_id="demo.check", verdict=True, anchor="demo", ms=12.0)
    buf = io.StringIO()
    emit_report([rep], "text", buf)
    assert buf.getvalue() == "PASS demo.check (demo) 12ms\n"


def test_emit_text_failure_shows_residual():
    rep = VerificationReport(
        check_id="demo.check", verdict=False, residual="q-1", anchor="demo", ms=1.0
    )
    buf = io.StringIO()
    emit_report([rep], "text", buf)
    out = buf.getvalue()
    assert out.startswith("FAIL demo.check")
    assert "residual: q-1" in out


def test_emit_json_schema():
    reports = run_check("toda.worked")
    buf = io.StringIO()
    emit_report(reports, "json", buf)
    data = json.loads(buf.getvalue())
    assert isinstance(data, list) and len(data) == 1
    entry = data[0]
    for key in ("id", "verdict", "residual", "params", "anchor", "ms"):
        assert key in entry
    assert entry["verdict"] == "PASS"


def test_emit_empty_list():
    buf = io.StringIO()
    emit_report([], "json", buf)
    assert json.loads(buf.getvalue()) == []
    buf = io.StringIO()
    emit_report([], "text", buf)
    assert buf.getvalue() == ""


def test_main_list(capsys):
    assert main(["list"]) == 0
    out = capsys.readouterr().out
    assert "qliouville.eq-half" in out
    assert "kp.m4" in out


def test_main_verify_pass(capsys):
    assert main(["verify", "qliouville.eq-half"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS qliouville.eq-half")


def test_main_verify_json(capsys):
    assert main(["verify", "toda.worked", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data[0]["id"] == "toda.worked"


def test_main_unknown_selector(capsys):
    assert main(["verify", "does.not.exist"]) == 2
    assert "error" in capsys.readouterr().err


def test_main_spin_override(capsys):
    assert main(["verify", "lm", "--j", "1", "--jprime", "1/2"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("PASS lm")


def test_reports_deterministic():
    a = run_check("toda.random", {"seed": 0})
    b = run_check("toda.random", {"seed": 0})
    assert a[0].verdict == b[0].verdict
    assert a[0].details == b[0].details


def test_concurrent_jobs_keep_order():
    seq = run_check("qliouville.*", jobs=1)
    par = run_check("qliouville.*", jobs=3)
    assert [r.check_id for r in seq] == [r.check_id for r in par]
    assert all(r.verdict for r in par)


def test_boundary_guard_surfaces_as_usage_error(capsys):
    assert main(["verify", "kp.m3", "--degree", "8"]) == 2
    assert "window" in capsys.readouterr().err


def test_exit_one_on_failure(monkeypatch, capsys):
    import tau_forge.cli as cli

    def failing(params):
        return VerificationReport(check_id="", verdict=False, residual="boom")

    desc = cli.REGISTRY["qscalar.qnumbers"]
    monkeypatch.setattr(desc, "fn", failing)
    assert main(["verify", "qscalar.qnumbers"]) == 1
    out = capsys.readouterr().out
    assert out.startswith("FAIL")
