"""JSON API over the same commands the CLI runs

Every endpoint takes inline documents in the request body and answers with
the serialized Report, or with the error's kind and message on failure.
"""
import logging

from flask import Blueprint, current_app, jsonify, request
from marshmallow import EXCLUDE, Schema, ValidationError, fields, validate

from ntrace import commands, limiter
from ntrace.errors import NtraceError
from ntrace.suites import SUITES
from ntrace.utils import report_to_dict, to_jsonable

logger = logging.getLogger(__name__)

api_v1_bp = Blueprint('api_v1', __name__)


def expensive_limit():
    return current_app.config['RATELIMIT_EXPENSIVE']


# Request schemas
class TraceRequestSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    matrix = fields.Dict(required=True)
    weight = fields.Dict(required=True)
    kind = fields.Str(load_default='choquet', validate=validate.OneOf(commands.TRACE_KINDS))
    extended = fields.Bool(load_default=False)
    tolerance = fields.Float(load_default=None, allow_none=True)


class NormRequestSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    matrix = fields.Dict(required=True)
    weight = fields.Dict(load_default=None, allow_none=True)
    p = fields.Float(load_default=1.0)
    family = fields.Str(load_default='choquet', validate=validate.OneOf(commands.NORM_FAMILIES))
    k = fields.Int(load_default=None, allow_none=True)
    tolerance = fields.Float(load_default=None, allow_none=True)


class MajorRequestSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    x = fields.Str(load_default=None, allow_none=True)
    y = fields.Str(load_default=None, allow_none=True)
    a = fields.Dict(load_default=None, allow_none=True)
    b = fields.Dict(load_default=None, allow_none=True)
    tolerance = fields.Float(load_default=None, allow_none=True)


class IntegralRequestSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    x = fields.Str(required=True)
    weight = fields.Dict(load_default=None, allow_none=True)
    measure = fields.Dict(load_default=None, allow_none=True)
    y = fields.Str(load_default=None, allow_none=True)


class CheckRequestSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    suite = fields.Str(required=True)
    seed = fields.Int(load_default=None, allow_none=True)
    trials = fields.Int(load_default=None, allow_none=True, validate=validate.Range(min=0))
    dim = fields.Int(load_default=None, allow_none=True, validate=validate.Range(min=1))
    tolerance = fields.Float(load_default=None, allow_none=True)


class FalsifyRequestSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    weight = fields.Dict(required=True)
    p = fields.Float(load_default=1.0)
    mode = fields.Str(load_default='proof', validate=validate.OneOf(commands.FALSIFY_MODES))
    seed = fields.Int(load_default=None, allow_none=True)
    dim = fields.Int(load_default=None, allow_none=True, validate=validate.Range(min=1))
    trials = fields.Int(load_default=None, allow_none=True, validate=validate.Range(min=0))
    tolerance = fields.Float(load_default=None, allow_none=True)


class HomogeneityRequestSchema(Schema):
    class Meta:
        unknown = EXCLUDE

    matrix = fields.Dict(required=True)
    weight = fields.Dict(required=True)
    k = fields.Float(load_default=2.0)
    k_imag = fields.Float(load_default=0.0)
    tolerance = fields.Float(load_default=None, allow_none=True)


trace_request_schema = TraceRequestSchema()
norm_request_schema = NormRequestSchema()
major_request_schema = MajorRequestSchema()
integral_request_schema = IntegralRequestSchema()
check_request_schema = CheckRequestSchema()
falsify_request_schema = FalsifyRequestSchema()
homogeneity_request_schema = HomogeneityRequestSchema()


def _body(schema):
    return schema.load(request.get_json(silent=True) or {})


def _respond(report):
    return jsonify(report_to_dict(report))


@api_v1_bp.route('/trace', methods=['POST'])
def trace():
    """phi_alpha or psi_alpha of an inline matrix"""
    data = _body(trace_request_schema)
    return _respond(commands.cmd_trace(data['matrix'], data['weight'], data['kind'], data['extended'],
                                       current_app.config['MAX_DIM'], data['tolerance']))


@api_v1_bp.route('/norm', methods=['POST'])
def norm():
    data = _body(norm_request_schema)
    return _respond(commands.cmd_norm(data['matrix'], data['weight'], data['p'], data['family'], data['k'],
                                      current_app.config['MAX_DIM'], data['tolerance']))


@api_v1_bp.route('/major', methods=['POST'])
def major():
    data = _body(major_request_schema)
    return _respond(commands.cmd_major(data['x'], data['y'], data['a'], data['b'], current_app.config['MAX_DIM'],
                                       data['tolerance']))


@api_v1_bp.route('/integral', methods=['POST'])
def integral():
    data = _body(integral_request_schema)
    return _respond(commands.cmd_integral(data['x'], data['weight'], data['measure'], data['y']))


@api_v1_bp.route('/suites', methods=['GET'])
def suites():
    return jsonify({'suites': sorted(SUITES), 'total': len(SUITES)})


@api_v1_bp.route('/check', methods=['POST'])
@limiter.limit(expensive_limit)
def check():
    """Run a property suite; exports are CLI-only"""
    data = _body(check_request_schema)
    cfg = current_app.config
    report = commands.cmd_check(
        data['suite'],
        cfg['DEFAULT_SEED'] if data['seed'] is None else data['seed'],
        cfg['DEFAULT_TRIALS'] if data['trials'] is None else data['trials'],
        cfg['DEFAULT_DIM'] if data['dim'] is None else data['dim'],
        data['tolerance'])
    return _respond(report)


@api_v1_bp.route('/falsify', methods=['POST'])
@limiter.limit(expensive_limit)
def falsify():
    data = _body(falsify_request_schema)
    cfg = current_app.config
    report = commands.cmd_falsify(
        data['weight'], data['p'], data['mode'],
        cfg['DEFAULT_SEED'] if data['seed'] is None else data['seed'],
        data['dim'],
        cfg['DEFAULT_TRIALS'] if data['trials'] is None else data['trials'],
        data['tolerance'])
    return _respond(report)


@api_v1_bp.route('/homogeneity', methods=['POST'])
def homogeneity():
    data = _body(homogeneity_request_schema)
    scalar = complex(data['k'], data['k_imag']) if data['k_imag'] else data['k']
    return _respond(commands.cmd_homogeneity(data['matrix'], data['weight'], scalar, current_app.config['MAX_DIM'],
                                             data['tolerance']))


# Error handlers
@api_v1_bp.errorhandler(ValidationError)
def api_validation_error(error):
    return jsonify({'error': 'invalid request', 'kind': 'ParseError', 'errors': error.messages}), 400


@api_v1_bp.errorhandler(NtraceError)
def api_ntrace_error(error):
    if error.status_code >= 500:
        logger.error(f'{error.kind}: {error.message}')
    else:
        logger.info(f'{request.path} rejected: {error.kind}: {error.message}')
    return jsonify(to_jsonable(error.to_dict())), error.status_code


@api_v1_bp.errorhandler(404)
def api_not_found(error):
    return jsonify({'error': 'Resource not found'}), 404


@api_v1_bp.errorhandler(405)
def api_method_not_allowed(error):
    return jsonify({'error': 'Method not allowed'}), 405


@api_v1_bp.errorhandler(429)
def api_rate_limited(error):
    return jsonify({'error': 'Rate limit exceeded', 'limit': str(error.description)}), 429


@api_v1_bp.errorhandler(500)
def api_internal_error(error):
    return jsonify({'error': 'Internal server error'}), 500
