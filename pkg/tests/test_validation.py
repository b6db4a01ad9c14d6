from dataclasses import replace

from runwaysched.validation import validate_separation_model


def _with_landing(model, i, j, value):
    rows = [list(r) for r in model.landing]
    rows[i - 1][j - 1] = value
    return replace(model, landing=tuple(tuple(r) for r in rows))


def _with_takeoff(model, i, j, value):
    rows = [list(r) for r in model.takeoff]
    rows[i - 1][j - 1] = value
    return replace(model, takeoff=tuple(tuple(r) for r in rows))


def test_bundled_model_passes(model):
    report = validate_separation_model(model)
    assert report.passed, report.failed_ids()


def test_spaced_diagonal_violation_reported(model):
    broken = _with_landing(model, 3, 3, 60)
    report = validate_separation_model(broken)
    assert "landing.diagonal.spaced" in report.failed_ids()
    spaced = next(r for r in report.results if r.id == "landing.diagonal.spaced")
    assert any("T[3][3]=60" in v for v in spaced.violations)


def test_delta_range_violation(model):
    report = validate_separation_model(replace(model, delta=10))
    assert "landing.delta.range" in report.failed_ids()


def test_cross_bound_violations(model):
    report = validate_separation_model(replace(model, same_runway_td=95))
    assert "cross.single.bounds" in report.failed_ids()
    report = validate_separation_model(replace(model, dual_dp=61))
    assert "cross.dual.constants" in report.failed_ids()


def test_every_entry_guarded(model):
    # bumping any entry far enough must trip at least one predicate
    for i in range(1, 7):
        for j in range(1, 7):
            r1 = validate_separation_model(
                _with_landing(model, i, j, model.landing[i - 1][j - 1] + 200)
            )
            assert not r1.passed, f"landing {i},{j} mutation unnoticed"
            r2 = validate_separation_model(
                _with_takeoff(model, i, j, model.takeoff[i - 1][j - 1] + 200)
            )
            assert not r2.passed, f"takeoff {i},{j} mutation unnoticed"


def test_report_lines_spell_out_inequalities(model):
    broken = _with_landing(model, 1, 6, 500)
    report = validate_separation_model(broken)
    lines = report.summary_lines()
    assert any("FAIL" in line for line in lines)
    assert any("500" in line for line in lines)
