import pytest

from ntrace import create_app

from tests import TEST_MATRICES, TEST_SEED, TEST_WEIGHTS, TestHelpers


class TestAPIFlow:
    """JSON API over the report commands"""

    @pytest.fixture
    def app(self):
        """Create test application"""
        app = create_app('testing')
        yield app

    @pytest.fixture
    def client(self, app):
        return app.test_client()

    def test_index(self, client):
        response = client.get('/')
        assert response.status_code == 200
        assert response.get_json()['api'] == '/api/v1'

    def test_trace(self, client):
        response = client.post('/api/v1/trace', json={
            'matrix': TEST_MATRICES['diag_3_1'],
            'weight': TEST_WEIGHTS['linear'],
        })
        TestHelpers.assert_api_success(response, required_fields=['trace', 'eigenvalues'])
        assert response.get_json()['results']['trace'] == 4

    def test_trace_sugeno(self, client):
        response = client.post('/api/v1/trace', json={
            'matrix': TEST_MATRICES['diag_5_3_half'],
            'weight': TEST_WEIGHTS['linear'],
            'kind': 'sugeno',
        })
        TestHelpers.assert_api_success(response)
        assert response.get_json()['results']['trace'] == 2

    def test_trace_not_positive(self, client):
        response = client.post('/api/v1/trace', json={
            'matrix': TEST_MATRICES['diag_2_neg3'],
            'weight': TEST_WEIGHTS['linear'],
        })
        TestHelpers.assert_api_error(response, 422, 'NotPositive')

    def test_missing_fields(self, client):
        response = client.post('/api/v1/trace', json={'weight': TEST_WEIGHTS['linear']})
        TestHelpers.assert_api_error(response, 400, 'ParseError')
        assert 'matrix' in response.get_json()['errors']

    def test_bad_kind(self, client):
        response = client.post('/api/v1/trace', json={
            'matrix': TEST_MATRICES['diag_3_1'],
            'weight': TEST_WEIGHTS['linear'],
            'kind': 'lebesgue',
        })
        TestHelpers.assert_api_error(response, 400)

    def test_invalid_matrix_document(self, client):
        response = client.post('/api/v1/trace', json={
            'matrix': {'n': 2, 'data': [1, 2, 3]},
            'weight': TEST_WEIGHTS['linear'],
        })
        TestHelpers.assert_api_error(response, 400, 'ParseError')

    def test_norm(self, client):
        response = client.post('/api/v1/norm', json={
            'matrix': TEST_MATRICES['diag_3_4'],
            'weight': TEST_WEIGHTS['linear'],
            'p': 2,
        })
        TestHelpers.assert_api_success(response, required_fields=['norm', 'singular_values', 'operator_norm'])
        assert response.get_json()['results']['norm'] == pytest.approx(5)

    def test_norm_ky_fan(self, client):
        response = client.post('/api/v1/norm', json={
            'matrix': {'n': 3, 'data': [[3, 0, 0], [0, 2, 0], [0, 0, 1]]},
            'family': 'kyfan',
            'k': 2,
        })
        TestHelpers.assert_api_success(response)
        assert response.get_json()['results']['norm'] == pytest.approx(5)

    def test_major(self, client):
        response = client.post('/api/v1/major', json={'x': '3,1', 'y': '2,2'})
        TestHelpers.assert_api_success(response)
        verdict = response.get_json()['results']['weak_majorization']
        assert verdict['relation_holds'] is False
        assert verdict['failing_index'] == 1

    def test_integral_with_measure_table(self, client):
        response = client.post('/api/v1/integral', json={
            'x': '2,1',
            'measure': {'n': 2, 'values': {'': 0, '1': 0.5, '2': 0.25, '1,2': 1}},
        })
        TestHelpers.assert_api_success(response)
        results = response.get_json()['results']
        assert results['choquet'] == pytest.approx(1 * 0.5 + 1 * 1)
        assert results['sugeno'] == pytest.approx(1)

    def test_suites(self, client):
        response = client.get('/api/v1/suites')
        assert response.status_code == 200
        assert 'triangle-sugeno' in response.get_json()['suites']

    def test_check(self, client):
        response = client.post('/api/v1/check', json={
            'suite': 'dual-formula', 'seed': TEST_SEED, 'trials': 3, 'dim': 3,
        })
        TestHelpers.assert_api_success(response, required_fields=['suite', 'failed'])
        assert response.get_json()['results']['failed'] == []

    def test_check_unknown_suite(self, client):
        response = client.post('/api/v1/check', json={'suite': 'unknown'})
        TestHelpers.assert_api_error(response, 400, 'UnknownSuite')

    def test_check_dimension_limit(self, client):
        response = client.post('/api/v1/check', json={'suite': 'dual-formula', 'dim': 1000})
        TestHelpers.assert_api_error(response, 400, 'MatrixTooLarge')

    def test_falsify(self, client):
        response = client.post('/api/v1/falsify', json={'weight': TEST_WEIGHTS['late_jump'], 'p': 2})
        TestHelpers.assert_api_success(response, required_fields=['counterexample', 'verification'])
        assert response.get_json()['results']['verification']['verified'] is True

    def test_falsify_projection(self, client):
        response = client.post('/api/v1/falsify', json={'weight': TEST_WEIGHTS['jump'], 'mode': 'projection'})
        TestHelpers.assert_api_success(response)
        assert response.get_json()['results']['counterexample']['margin'] == pytest.approx(1)

    def test_homogeneity(self, client):
        response = client.post('/api/v1/homogeneity', json={
            'matrix': TEST_MATRICES['diag_5_3_half'],
            'weight': TEST_WEIGHTS['linear'],
            'k': 2,
        })
        TestHelpers.assert_api_success(response, required_fields=['gap'])
        assert response.get_json()['results']['gap'] == -2

    def test_wrong_method(self, client):
        response = client.get('/api/v1/trace')
        assert response.status_code == 405

    def test_trace_tolerance(self, client):
        near = {'n': 2, 'data': [[1, 0], [0, -1e-6]]}
        response = client.post('/api/v1/trace', json={'matrix': near, 'weight': TEST_WEIGHTS['linear']})
        TestHelpers.assert_api_error(response, 422, 'NotPositive')
        response = client.post('/api/v1/trace', json={
            'matrix': near,
            'weight': TEST_WEIGHTS['linear'],
            'tolerance': 1e-5,
        })
        TestHelpers.assert_api_success(response)
        assert response.get_json()['results']['trace'] == pytest.approx(1)

    def test_falsify_threshold(self, client):
        response = client.post('/api/v1/falsify', json={
            'weight': TEST_WEIGHTS['jump'],
            'mode': 'projection',
            'tolerance': 2.0,
        })
        TestHelpers.assert_api_error(response, 409, 'SearchExhausted')
