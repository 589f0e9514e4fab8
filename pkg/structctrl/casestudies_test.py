import unittest

from structctrl import casestudies
from structctrl import cover
from structctrl import exceptions
from structctrl import extend
from structctrl.casestudies import CaseStudyId, Metrics
from structctrl.network import ExtendedNetwork, StructuredNetwork, expanded_graph, system_graph


class TestGenerate(unittest.TestCase):

    def test_binary_tree(self):
        net = casestudies.generate(CaseStudyId('binary_tree', 3))
        self.assertIsInstance(net, StructuredNetwork)
        self.assertEqual((net.n, net.m), (15, 1))
        self.assertEqual(len(net.state_edges), 14)
        self.assertEqual(net.input_edges, frozenset({(0, 0)}))

    def test_single_node(self):
        net = casestudies.generate(CaseStudyId('binary_tree', 0))
        self.assertEqual((net.n, len(net.state_edges)), (1, 0))
        net = casestudies.generate(CaseStudyId('bifurcation', 0))
        self.assertEqual((net.n, len(net.state_edges)), (1, 0))

    def test_extended_binary_tree(self):
        for h in range(1, 5):
            with self.subTest(h=h):
                ext = casestudies.generate(CaseStudyId('binary_tree', h, extended=True))
                self.assertIsInstance(ext, ExtendedNetwork)
                self.assertEqual(ext.n_hat, 2 * (2 ** h - 1) + 2 ** h)
                self.assertEqual(len(ext.modified()), 2 ** h - 1)
                g = expanded_graph(ext)
                self.assertEqual(g.inaccessible(), ())

    def test_extended_bifurcation(self):
        ext = casestudies.generate(CaseStudyId('bifurcation', 4, extended=True))
        self.assertEqual(ext.n_hat, 11)
        self.assertEqual(ext.modified(), (5, 7))
        self.assertEqual(ext.orders, (1, 1, 1, 1, 1, 2, 1, 2, 1))

    def test_bifurcation(self):
        net = casestudies.bifurcation(2)
        self.assertEqual(net.state_edges, frozenset({(0, 1), (1, 2), (0, 3), (3, 4)}))

    def test_stem_cycle(self):
        net = casestudies.stem_cycle(4)
        self.assertEqual(net.state_edges, frozenset({(0, 1), (0, 2), (2, 3), (3, 0)}))

    def test_fixtures(self):
        fig2a = casestudies.generate(CaseStudyId('fig2a'))
        self.assertEqual(fig2a.labels, ('e1', 'e2', 'z', 'a', 'b', 'd1', 'd2'))
        fig1b = casestudies.generate(CaseStudyId('fig1b'))
        self.assertEqual(fig1b.heterogeneous, (False, False, True))
        fig1c = casestudies.generate(CaseStudyId('fig1c'))
        self.assertEqual(fig1c.n_hat, 5)
        for family, n_hat in (('fig3a', 8), ('fig3b', 7), ('fig3c', 8)):
            with self.subTest(family=family):
                ext = casestudies.generate(CaseStudyId(family))
                self.assertEqual(ext.n_hat, n_hat)
                self.assertEqual(cover.generic_dimension(expanded_graph(ext)).d_c, n_hat)

    def test_invalid(self):
        invalid = [
            CaseStudyId('triangle'),
            CaseStudyId('binary_tree'),
            CaseStudyId('binary_tree', -1),
            CaseStudyId('bifurcation', 3),
            CaseStudyId('stem_cycle', 3),
        ]
        for cid in invalid:
            with self.subTest(cid=cid):
                with self.assertRaises(exceptions.ParameterError):
                    casestudies.generate(cid)

    def test_paper_cover(self):
        for family in ('fig2a', 'fig2b', 'fig2c'):
            with self.subTest(family=family):
                g = system_graph(casestudies.generate(CaseStudyId(family)))
                c = casestudies.paper_cover(family)
                c.validate(g)
                self.assertEqual(c.covered, frozenset(range(g.n)))
        with self.assertRaises(exceptions.ParameterError):
            casestudies.paper_cover('fig2d')


class TestExpectedMetrics(unittest.TestCase):

    def test_values(self):
        self.assertEqual(casestudies.expected_metrics(CaseStudyId('binary_tree', 3)), Metrics(4, 11, 7, 4))
        self.assertEqual(casestudies.expected_metrics(CaseStudyId('bifurcation', 4)), Metrics(5, 4, 2, 2))
        self.assertEqual(casestudies.expected_metrics(CaseStudyId('binary_tree', 1)).delta, 0)
        self.assertEqual(casestudies.expected_metrics(CaseStudyId('stem_cycle', 10)), Metrics(6, 4, 1, 3))

    def test_no_closed_form(self):
        with self.assertRaises(exceptions.ParameterError):
            casestudies.expected_metrics(CaseStudyId('fig2a'))

    def test_consistency(self):
        ids = ([CaseStudyId('binary_tree', h) for h in range(1, 6)] +
               [CaseStudyId('bifurcation', h) for h in (2, 4, 6)])
        for cid in ids:
            with self.subTest(cid=cid):
                expected = casestudies.expected_metrics(cid)
                net = casestudies.generate(cid)
                ext = casestudies.generate(cid._replace(extended=True))
                self.assertEqual(cover.generic_dimension(system_graph(net)).d_c, expected.d_c)
                self.assertEqual(extend.first_order_minimum(net), expected.S)
                self.assertEqual(len(ext.modified()), expected.S_hat)
                self.assertEqual(expected.S - expected.S_hat, expected.delta)

    def test_stem_cycle(self):
        for n in range(4, 13):
            with self.subTest(n=n):
                expected = casestudies.expected_metrics(CaseStudyId('stem_cycle', n))
                g = system_graph(casestudies.generate(CaseStudyId('stem_cycle', n)))
                self.assertEqual(cover.generic_dimension(g).d_c, expected.d_c)


if __name__ == '__main__':
    unittest.main()
