import json

import numpy as np
import pytest

from lorentz_euler import curves as cv
from lorentz_euler.errors import ConeContact
from lorentz_euler.tables import (
    CSV_COLUMNS,
    SweepReport,
    SweepRow,
    curve_table,
    report_to_json,
    sweep_table,
    sweep_to_csv,
    table_to_csv,
    write_text,
)


@pytest.fixture
def sweep_report():
    rows = [
        SweepRow(index=0, alpha=0.5, label="spacelike-cminus(alpha=0.5)",
                 max_abs_residual=1e-15, verdict=True),
        SweepRow(index=1, alpha=1.0, label="spacelike-cminus(alpha=1)",
                 max_abs_residual=None, verdict=False, error="c is required"),
    ]
    return SweepReport(family="spacelike-cminus", tolerance=1e-8, rows=rows, verdict=False)


def test_curve_table(cminus_spec, cminus_curve):
    s = cminus_spec.domain.grid(21)
    table = curve_table(cminus_curve, 2.0, s)
    assert set(CSV_COLUMNS) == set(table.data_vars) | {"s"}
    assert np.allclose(table.rho, np.cosh(s))
    assert np.allclose(table.phi, s)
    assert float(abs(table.residual).max()) < 1e-8
    assert set(table.region.values.tolist()) == {"cminus-upper"}
    assert set(table.causal.values.tolist()) == {"spacelike"}
    assert table.attrs["alpha"] == 2.0


def test_curve_table_rejects_the_cone():
    through = cv.line_curve((-1.0, 0.0), (1.0, 0.5), cv.Interval(0.0, 2.0))
    with pytest.raises(ConeContact):
        curve_table(through, 1.0, [0.0, 1.0, 2.0])


def test_table_to_csv(cminus_spec, cminus_curve):
    table = curve_table(cminus_curve, 2.0, cminus_spec.domain.grid(200))
    text = table_to_csv(table)
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 201
    assert text.endswith("\n")
    first = lines[1].split(",")
    assert float(first[0]) == -2.0
    assert float(first[3]) == pytest.approx(np.cosh(2.0))
    assert first[-2:] == ["cminus-upper", "spacelike"]
    assert table_to_csv(curve_table(cminus_curve, 2.0, cminus_spec.domain.grid(200))) == text


def test_sweep_outputs(sweep_report):
    table = sweep_table(sweep_report)
    assert table["index"].values.tolist() == [0, 1]
    assert np.isnan(table.max_abs_residual.values[1])
    lines = sweep_to_csv(sweep_report).splitlines()
    assert lines[0] == "index,alpha,label,max_abs_residual,verdict,error"
    assert lines[2].endswith(",False,c is required")


def test_report_json_round_trip(sweep_report):
    text = report_to_json(sweep_report)
    assert SweepReport.model_validate_json(text) == sweep_report
    assert json.loads(text)["rows"][1]["max_abs_residual"] is None


def test_write_text(tmp_path, capsys):
    target = tmp_path / "out" / "table.csv"
    write_text("a,b\n1,2\n", target)
    assert target.read_text() == "a,b\n1,2\n"
    write_text("to stdout\n", None)
    assert capsys.readouterr().out == "to stdout\n"
