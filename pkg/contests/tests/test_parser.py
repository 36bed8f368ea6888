import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from contests.services.contest_core import Contest
from contests.services.errors import ContestSpecError, ModelSpecError
from contests.services.parser import (
    parse_contest,
    parse_model,
    parse_n_range,
    validate_contest_literal,
    validate_model_spec,
)
from contests.services.payoff_model import make_exponential, make_linear, make_tullock


class ParseModelTests(SimpleTestCase):

    def test_literal(self):
        self.assertEqual(parse_model('tullock:1,1'), make_tullock(1, 1))
        self.assertEqual(parse_model(' Linear:2, 3 '), make_linear(2, 3))
        self.assertEqual(parse_model('exponential:2,2,0'), make_exponential(2, 2, 0))

    def test_json_object(self):
        self.assertEqual(parse_model('{"family": "tullock", "v": 2, "c": 1}'), make_tullock(2, 1))

    def test_json_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'model.json'
            path.write_text(json.dumps({'family': 'linear', 'a': 1, 'xbar': 1}))
            self.assertEqual(parse_model(str(path)), make_linear(1, 1))

    def test_power_series_dotted_path(self):
        model = parse_model(json.dumps({
            'family': 'power_series',
            'coefficients': 'contests.tests.test_payoff_model.linear_coefficients',
            'xbar': 1,
        }))
        self.assertEqual(model.family, 'power_series')
        self.assertAlmostEqual(float(model.h(0.25)), 0.75)

    def test_errors(self):
        for spec in ('', 'gaussian:1,1', 'tullock:1', 'tullock:a,b', '{"family": "tullock", "v": 1}',
                     '{not json', '[1, 2]', 'missing.json', 'tullock:0,1',
                     '{"family": "power_series", "coefficients": "contests.nowhere.fn", "xbar": 1}'):
            with self.subTest(spec=spec), self.assertRaises(ModelSpecError):
                parse_model(spec)

    def test_validate_model_spec(self):
        self.assertEqual(validate_model_spec('tullock:1,1'), (True, ''))
        ok, message = validate_model_spec('tullock:1')
        self.assertFalse(ok)
        self.assertIn('2 parameters', message)


class ParseContestTests(SimpleTestCase):

    def test_parse_contest(self):
        self.assertEqual(parse_contest(' 1,2,2,1 '), Contest((1, 2, 2, 1)))
        with self.assertRaises(ContestSpecError):
            parse_contest('1,0')

    def test_validate_contest_literal(self):
        self.assertEqual(validate_contest_literal('1,2', n=3), (True, ''))
        ok, message = validate_contest_literal('1,2', n=4)
        self.assertFalse(ok)
        self.assertIn('expected 4', message)
        self.assertFalse(validate_contest_literal('one')[0])


class ParseNRangeTests(SimpleTestCase):

    def test_forms(self):
        self.assertEqual(parse_n_range('7'), (7,))
        self.assertEqual(parse_n_range('2..5'), (2, 3, 4, 5))
        self.assertEqual(parse_n_range('2,3,5'), (2, 3, 5))

    def test_errors(self):
        for text in ('5..2', 'x', '0', '', '2..x'):
            with self.subTest(text=text), self.assertRaises(ContestSpecError):
                parse_n_range(text)
