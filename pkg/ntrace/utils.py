import json
import logging
import math
import os

import numpy as np
import pandas as pd
from marshmallow import EXCLUDE, Schema, ValidationError, fields, validate
from openpyxl import load_workbook
from openpyxl.styles import Alignment, Font, PatternFill

from ntrace.config import get_config
from ntrace.errors import InternalInconsistency, MatrixTooLarge, ParseError
from ntrace.models import ComplexMatrix, MonotoneMeasure, WeightFunction

logger = logging.getLogger(__name__)

# Input documents

class WeightSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    increments = fields.List(fields.Float(allow_nan=False), required=True)
    tail = fields.Float(allow_nan=False, load_default=0.0)


class MatrixSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    n = fields.Int(required=True, validate=validate.Range(min=1))
    complex = fields.Bool(load_default=False)
    data = fields.List(fields.Raw(), required=True)


class MeasureSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    n = fields.Int(required=True, validate=validate.Range(min=1))
    values = fields.Dict(keys=fields.Str(), values=fields.Float(allow_nan=False), required=True)


# Reports

class CheckReportSchema(Schema):
    name = fields.Str()
    verdict = fields.Str()
    tolerance = fields.Float(allow_none=True)
    witness = fields.Raw(allow_none=True)
    seed = fields.Int(allow_none=True)
    trials = fields.Int(allow_none=True)
    detail = fields.Str()


class ReportSchema(Schema):
    command = fields.Str()
    inputs = fields.Raw()
    results = fields.Raw()
    checks = fields.Nested(CheckReportSchema, many=True)
    seed = fields.Int(allow_none=True)
    elapsed_ms = fields.Int()


class CounterexampleSchema(Schema):
    a = fields.Function(lambda cx: matrix_document(cx.a))
    b = fields.Function(lambda cx: matrix_document(cx.b))
    weight = fields.Function(lambda cx: cx.weight.to_dict())
    p = fields.Float()
    lhs = fields.Float()
    rhs = fields.Float()
    margin = fields.Float()
    threshold = fields.Float()
    parameters = fields.Dict()


weight_schema = WeightSchema()
matrix_schema = MatrixSchema()
measure_schema = MeasureSchema()
report_schema = ReportSchema()
counterexample_schema = CounterexampleSchema()


def _load(schema, document, what):
    try:
        return schema.load(document)
    except ValidationError as e:
        raise ParseError(f'invalid {what} document', fields=e.messages)


def load_json_file(path):
    """Read a JSON document from disk"""
    try:
        with open(path, encoding='utf-8') as handle:
            return json.load(handle)
    except OSError as e:
        raise ParseError(f'cannot read {path}: {e.strerror}', path=str(path))
    except json.JSONDecodeError as e:
        raise ParseError(f'{path} is not valid JSON: {e.msg} at line {e.lineno}', path=str(path))


def parse_weight(document) -> WeightFunction:
    data = _load(weight_schema, document, 'weight')
    return WeightFunction(tuple(data['increments']), data['tail'])


def _entry(value, is_complex):
    if is_complex:
        if not isinstance(value, (list, tuple)) or len(value) != 2:
            raise ParseError(f'complex entries must be [re, im] pairs, got {value!r}')
        re, im = value
        return complex(float(re), float(im))
    if isinstance(value, (list, tuple)):
        raise ParseError(f'real matrix entries must be plain numbers, got {value!r}')
    return float(value)


def _flatten(rows, n, is_complex):
    """Accept a flat row-major list or a list of n rows"""
    nested = len(rows) == n and all(isinstance(r, list) and len(r) == n for r in rows)
    if nested and n == 1:
        nested = not is_complex or isinstance(rows[0][0], list)
    return [e for row in rows for e in row] if nested else rows


def parse_matrix(document, max_dim=256) -> ComplexMatrix:
    """Build a matrix from {"n": k, "complex": bool, "data": [...]}

    data is row-major, either flat (n*n entries) or as n rows of n entries.
    """
    data = _load(matrix_schema, document, 'matrix')
    n = data['n']
    if n > max_dim:
        raise MatrixTooLarge(f'matrix dimension {n} exceeds the limit of {max_dim}', n=n, max_dim=max_dim)
    entries = _flatten(data['data'], n, data['complex'])
    if len(entries) != n * n:
        raise ParseError(f'matrix of dimension {n} needs {n * n} entries, got {len(entries)}')
    try:
        values = [_entry(e, data['complex']) for e in entries]
    except (TypeError, ValueError) as e:
        raise ParseError(f'could not parse matrix entry: {e}')
    return ComplexMatrix(np.array(values, dtype=complex).reshape(n, n))


def parse_measure(document) -> MonotoneMeasure:
    """Build a table measure from {"n": k, "values": {"1,3": 0.5, "": 0, ...}}"""
    data = _load(measure_schema, document, 'measure')
    table = {}
    for key, value in data['values'].items():
        try:
            subset = frozenset(int(part) for part in key.split(',') if part.strip())
        except ValueError:
            raise ParseError(f'measure key {key!r} is not a comma-separated list of indices')
        table[subset] = value
    return MonotoneMeasure(data['n'], table=table)


def matrix_document(data) -> dict:
    arr = np.asarray(data, dtype=complex)
    return {
        'n': int(arr.shape[0]),
        'complex': True,
        'data': [[float(z.real), float(z.imag)] for z in arr.ravel()],
    }


def to_jsonable(value):
    """Turn numpy scalars and arrays, complex numbers and tuples into plain JSON values"""
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (complex, np.complexfloating)):
        return {'real': float(value.real), 'imag': float(value.imag)}
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


def ensure_finite(value, path='results'):
    if isinstance(value, dict):
        for k, v in value.items():
            ensure_finite(v, f'{path}.{k}')
    elif isinstance(value, list):
        for i, v in enumerate(value):
            ensure_finite(v, f'{path}[{i}]')
    elif isinstance(value, float) and not math.isfinite(value):
        raise InternalInconsistency(f'non-finite value at {path}', path=path)


def report_to_dict(report) -> dict:
    """Serialize a Report, rejecting non-finite numeric results"""
    payload = report_schema.dump({
        'command': report.command,
        'inputs': to_jsonable(report.inputs),
        'results': to_jsonable(report.results),
        'checks': [{**c.__dict__, 'witness': to_jsonable(c.witness)} for c in report.checks],
        'seed': report.seed,
        'elapsed_ms': report.elapsed_ms,
    })
    ensure_finite(payload['results'])
    return payload


def render_report(report) -> str:
    return json.dumps(report_to_dict(report), indent=2, sort_keys=True)


def export_records(records, path):
    """Write per-trial suite records to .xlsx or .csv

    A bare file name is placed under the configured EXPORT_FOLDER.
    """
    _, ext = os.path.splitext(path)
    if ext not in ('.xlsx', '.csv'):
        raise ParseError(f'export path must end in .xlsx or .csv, got {path!r}')
    folder = os.path.dirname(path)
    if not folder:
        folder = get_config().EXPORT_FOLDER
        path = os.path.join(folder, path)
    os.makedirs(folder, exist_ok=True)

    df = pd.DataFrame(records, columns=['suite', 'check', 'trial', 'excess', 'passed'])
    try:
        if ext == '.csv':
            df.to_csv(path, index=False)
        else:
            with pd.ExcelWriter(path, engine='openpyxl') as writer:
                df.to_excel(writer, sheet_name='Trials', index=False)
                summary = df.groupby('check').agg(
                    observations=('trial', 'count'), failures=('passed', lambda s: int((~s.astype(bool)).sum())),
                    worst_excess=('excess', 'max')).reset_index()
                summary.to_excel(writer, sheet_name='Summary', index=False)
            _style_headers(path)
        logger.info(f'Exported {len(df)} trial records to {path}')
        return path
    except OSError as e:
        logger.error(f'Export to {path} failed: {e}')
        raise ParseError(f'cannot write {path}: {e.strerror}', path=path)


def _style_headers(path):
    workbook = load_workbook(path)
    header_font = Font(bold=True, color='FFFFFF')
    header_fill = PatternFill(start_color='366092', end_color='366092', fill_type='solid')
    for sheet in workbook.worksheets:
        for cell in sheet[1]:
            cell.font = header_font
            cell.fill = header_fill
            cell.alignment = Alignment(horizontal='center')
    workbook.save(path)
