"""
ntrace - Test Suite

Test Categories:
- Weights, integrals and spectral primitives (test_weights.py, test_integrals.py, test_spectral.py)
- Traces and norms (test_traces.py, test_norms.py)
- Majorization and counterexample search (test_majorization.py, test_falsify.py)
- Property suites (test_suites.py)
- Command line and JSON API (test_cli.py, test_api_flow.py)
- Export Functionality Tests (test_export.py)

To run all tests:
    pytest tests/

To run specific test file:
    pytest tests/test_norms.py -v

Randomized tests use fixed seeds and small trial counts so every run is
reproducible; the full-size suites are exercised through `ntrace check`.
"""

import json
import os
import sys

# Add the parent directory to the path so we can import the package
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

TEST_SEED = 20240607
TEST_TRIALS = 6
TEST_DIM = 3

# Weight documents
TEST_WEIGHTS = {
    'linear': {'increments': [1.0], 'tail': 1.0},
    'operator': {'increments': [1.0], 'tail': 0.0},
    'top2': {'increments': [1.0, 1.0], 'tail': 0.0},
    'concave': {'increments': [3.0, 2.0, 1.0], 'tail': 1.0},
    'jump': {'increments': [1.0, 2.0], 'tail': 0.0},
    'late_jump': {'increments': [1.0, 1.0, 5.0], 'tail': 0.0},
}

# Weights whose increments rise somewhere
NONCONCAVE_REGRESSION = [
    (1.0, 2.0),
    (1.0, 1.0, 5.0),
    (2.0, 1.0, 1.5),
    (0.5, 0.5, 0.5, 0.6),
    (1.0, 0.2, 3.0),
    (0.0, 1.0),
]

# Matrix documents
TEST_MATRICES = {
    'diag_3_1': {'n': 2, 'data': [[3, 0], [0, 1]]},
    'diag_3_4': {'n': 2, 'data': [3, 0, 0, 4]},
    'diag_5_3_half': {'n': 3, 'data': [[5, 0, 0], [0, 3, 0], [0, 0, 0.5]]},
    'diag_2_neg3': {'n': 2, 'data': [[2, 0], [0, -3]]},
    'small': {'n': 2, 'data': [[0.3, 0.1], [0.1, 0.2]]},
    'complex_i': {'n': 2, 'complex': True, 'data': [[0, 1], [0, 0], [0, 0], [0, 1]]},
}


class TestHelpers:
    """Helper functions for testing"""

    @staticmethod
    def write_json(directory, name, document):
        """
        Write a JSON document into a temporary directory

        Returns:
            Path of the written file as a string
        """
        path = os.path.join(str(directory), name)
        with open(path, 'w', encoding='utf-8') as handle:
            json.dump(document, handle)
        return path

    @staticmethod
    def check_named(report_dict, name):
        """Return the check called `name` from a serialized report"""
        for check in report_dict['checks']:
            if check['name'] == name:
                return check
        raise AssertionError(f"check '{name}' missing from {[c['name'] for c in report_dict['checks']]}")

    @staticmethod
    def assert_api_error(response, expected_status=400, expected_kind=None):
        """
        Helper to assert API error responses

        Args:
            response: Response object to check
            expected_status: Expected HTTP status code
            expected_kind: Error class name the body should report
        """
        assert response.status_code == expected_status
        data = response.get_json()
        assert 'error' in data
        assert data['error']
        if expected_kind is not None:
            assert data['kind'] == expected_kind

    @staticmethod
    def assert_api_success(response, expected_status=200, required_fields=None):
        """
        Helper to assert successful API responses

        Args:
            response: Response object to check
            expected_status: Expected HTTP status code
            required_fields: List of result fields that must be present
        """
        assert response.status_code == expected_status
        data = response.get_json()

        if required_fields:
            for field in required_fields:
                assert field in data['results'], f"Required field '{field}' missing from response"


__all__ = [
    'TEST_SEED',
    'TEST_TRIALS',
    'TEST_DIM',
    'TEST_WEIGHTS',
    'NONCONCAVE_REGRESSION',
    'TEST_MATRICES',
    'TestHelpers'
]
