import json

import pytest

from src.curves import enumerate_minus_one_classes
from src.lattice import LatticeVector
from src.models import CurveClass, InvariantReport, OutputFormat
from src.reporting import (
    GRID_COLUMNS, SAFE_INTEGER, curves_csv, emit_report, flatten, format_csv,
    format_grid_csv, format_grid_table,
    format_table, parse_report, stringify_big_ints
)
from src.smoothing import d_semistability_check
from src.topology import theorem_report


@pytest.fixture
def report():
    return theorem_report(4, 2)


# --- JSON ---
def test_json_report_carries_euler_number(report):
    data = json.loads(emit_report(report, OutputFormat.JSON))
    assert data['e'] == 288
    assert data['b2_X'] == 12
    assert data['euler']['sigma_n'] == 0
    assert list(data)[:3] == ['N', 'n', 'm']


def test_json_round_trip(report):
    assert parse_report(emit_report(report), InvariantReport) == report
    assert parse_report(emit_report(report).decode("utf-8")) == report


def test_json_output_is_byte_stable():
    assert emit_report(theorem_report(5, 3)) == emit_report(theorem_report(5, 3))


def test_big_ints_become_strings():
    big = SAFE_INTEGER + 1
    assert stringify_big_ints({'x': big, 'y': [1, -big], 'z': True}) == {
        'x': str(big), 'y': [1, str(-big)], 'z': True
    }
    assert stringify_big_ints(SAFE_INTEGER) == SAFE_INTEGER


def test_big_semistability_report_round_trips():
    report = d_semistability_check(10 ** 12)
    payload = emit_report(report)
    assert '"' + str(report.lhs.h_coefficient) + '"' in payload.decode("utf-8")
    assert parse_report(payload, type(report)) == report


def test_list_of_reports_round_trips():
    classes = enumerate_minus_one_classes(1)
    assert parse_report(emit_report(classes), CurveClass) == classes


def test_only_json_can_be_parsed(report):
    with pytest.raises(ValueError):
        parse_report(emit_report(report, 'csv'), InvariantReport, 'csv')


# --- Tables and CSV ---
def test_flatten_uses_dotted_keys(report):
    flat = flatten(report.to_dict())
    assert flat['euler.e_X'] == 288
    assert flat['hypotheses'] == " ".join(report.hypotheses)


def test_single_report_table(report):
    text = format_table(report)
    lines = text.splitlines()
    assert any(line.split() == ['e', '288'] for line in lines)
    width = max(len(key) for key in flatten(report.to_dict()))
    assert all(line[width:width + 2] == "  " for line in lines)


def test_grid_table_is_aligned():
    reports = [theorem_report(N, 1) for N in (4, 5)]
    text = format_grid_table(reports)
    lines = text.splitlines()
    assert len(lines) == 4
    assert len({len(line) for line in lines}) == 1
    assert lines[0].split()[:3] == ['N', 'n', 'm']
    assert emit_report(reports, 'table').decode("utf-8") == text


def test_csv_output(report):
    text = format_csv(report)
    header, row = text.split("\r\n")[:2]
    assert header.split(",")[:3] == ['N', 'n', 'm']
    assert row.split(",")[:3] == ['4', '2', '2']
    assert text.endswith("\r\n")


def test_curves_csv():
    classes = [CurveClass.classify(LatticeVector((1, -1, -1, 0, 0, 0, 0, 0, 0, 0)))]
    assert curves_csv(classes) == (
        "alpha,beta1,beta2,beta3,beta4,beta5,beta6,beta7,beta8,beta9\r\n"
        "1,1,1,0,0,0,0,0,0,0\r\n"
    )


def test_emit_writes_file(tmp_path, report):
    target = tmp_path / "report.json"
    payload = emit_report(report, 'json', str(target))
    assert target.read_bytes() == payload


def test_grid_csv_uses_grid_columns():
    reports = [theorem_report(N, 1) for N in (4, 5)]
    rows = format_grid_csv(reports).split("\r\n")
    assert rows[0] == ",".join(GRID_COLUMNS)
    assert rows[1].split(",")[:6] == ['4', '2', '1', '11', '288', '2']
    assert rows[2].split(",")[4] == '-15840'
