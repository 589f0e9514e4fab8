import json
import unittest

import sympy

from structctrl import casestudies
from structctrl import classify
from structctrl import exceptions
from structctrl import extend
from structctrl import report
from structctrl.casestudies import CaseStudyId
from structctrl.network import system_graph


class TestCover(unittest.TestCase):

    def test_round_trip(self):
        for family in ('fig2a', 'fig2b', 'fig2c'):
            with self.subTest(family=family):
                c = casestudies.paper_cover(family)
                doc = json.loads(json.dumps(report.cover(c)))
                self.assertEqual(report.load_cover(doc), c)

    def test_one_based(self):
        g = system_graph(casestudies.generate(CaseStudyId('fig2b')))
        doc = report.cover(casestudies.paper_cover('fig2b'), g)
        self.assertEqual(doc['stems'], [{'input': 1, 'nodes': [1, 2, 3, 4]}])
        self.assertEqual(doc['cycles'], [[2, 5, 6]])
        self.assertEqual(doc['labels']['stems'], [['e1', 'z', '2', 'd1']])
        self.assertIsNone(report.cover(None))

    def test_malformed(self):
        for doc in ([], {'stems': [{'nodes': [1]}]}, {'stems': [{'input': 'x', 'nodes': [1]}]}, {'cycles': [[]]}):
            with self.subTest(doc=doc):
                with self.assertRaises(exceptions.ValidationError):
                    report.load_cover(doc)


class TestDocuments(unittest.TestCase):

    def test_envelope(self):
        doc = report.envelope('analyze', '0' * 40, 7, {'d_c': 3})
        self.assertEqual(set(doc), {'tool', 'version', 'command', 'seed', 'input_sha1', 'd_c'})
        self.assertEqual(doc['tool'], 'structctrl')
        doc = report.envelope('verify', '0' * 40, None, {}, config={'trials': 5})
        self.assertEqual(doc['config'], {'trials': 5})

    def test_dumps(self):
        text = report.dumps({'b': 1, 'a': [1, 2]})
        self.assertTrue(text.endswith('}\n'))
        self.assertLess(text.index('"a"'), text.index('"b"'))

    def test_classification(self):
        g = system_graph(casestudies.generate(CaseStudyId('fig2a')))
        doc = report.classification(g, classify.classify(g))
        self.assertEqual(doc['label'], 'X')
        self.assertEqual((doc['d_c'], doc['n']), (5, 7))
        self.assertEqual(doc['diagnostics']['overlaps'], [{'inputs': [1, 2], 'nodes': [3, 4, 5, 6, 7]}])

    def test_plan(self):
        plan = extend.extend_general(casestudies.generate(CaseStudyId('fig2d')))
        doc = report.plan(plan)
        self.assertEqual(doc['modified_subsystems'], [1, 5, 6, 7])
        self.assertEqual((doc['S_hat'], doc['S'], doc['delta'], doc['n_hat']), (4, 3, -1, 8))
        self.assertEqual(doc['extended']['orders'], [2, 1, 1, 1, 1, 1, 1])


class TestNumber(unittest.TestCase):

    def test_values(self):
        self.assertEqual(report.number(sympy.Integer(3)), 3)
        self.assertIsInstance(report.number(sympy.Integer(3)), int)
        self.assertEqual(report.number(sympy.Rational(1, 2)), '1/2')
        self.assertEqual(report.number(sympy.sqrt(2)), 'sqrt(2)')
        self.assertEqual(report.number(1.5), 1.5)
        self.assertEqual(report.number(complex(1, -2)), {'re': 1.0, 'im': -2.0})


if __name__ == '__main__':
    unittest.main()
