import random
import unittest

from structctrl import casestudies
from structctrl import classify
from structctrl import cover
from structctrl import exceptions
from structctrl import extend
from structctrl.cover import PathCycleCover, Stem
from structctrl.network import StructuredNetwork, expanded_graph, system_graph
from structctrl.tests import utils


def generate(family, parameter=None, extended=False):
    return casestudies.generate(casestudies.CaseStudyId(family, parameter, extended))


STAR = generate('fig1a')


class TestExtendXNetwork(unittest.TestCase):

    def test_figure_fixtures(self):
        metrics = {'fig2a': (8, 2, 1), 'fig2b': (7, 2, 1), 'fig2c': (8, 1, 0)}
        for family, (n_hat, s, delta) in metrics.items():
            with self.subTest(family=family):
                plan = extend.extend_x_network(generate(family), casestudies.paper_cover(family))
                self.assertEqual(plan.result, generate('fig3' + family[-1]))
                self.assertEqual(plan.result.n_hat, n_hat)
                self.assertEqual(plan.S_hat, 1)
                self.assertEqual(plan.S_first_order, s)
                self.assertEqual(plan.delta, delta)
                self.assertEqual(extend.delta_index(plan), delta)
                self.assertEqual(cover.generic_dimension(expanded_graph(plan.result)).d_c, n_hat)

    def test_copy_tags(self):
        plan = extend.extend_x_network(generate('fig2a'), casestudies.paper_cover('fig2a'))
        self.assertEqual(plan.result.copy_tags[2], (0, 1))
        self.assertEqual(plan.result.copy_tags[0], ())

    def test_classifier_witness(self):
        for family in ('fig2a', 'fig2b', 'fig2c'):
            with self.subTest(family=family):
                net = generate(family)
                witness = classify.exists_distinct_input_cover(system_graph(net))
                plan = extend.extend_x_network(net, witness)
                self.assertTrue(plan.certificate.vertex_disjoint)
                self.assertEqual(len(plan.certificate.covered), plan.result.n_hat)

    def test_stem_cycle(self):
        deltas = []
        for n in (10, 20, 40):
            with self.subTest(n=n):
                net = generate('stem_cycle', n)
                witness = classify.exists_distinct_input_cover(system_graph(net), max_nodes=n)
                plan = extend.extend_x_network(net, witness)
                expected = casestudies.expected_metrics(casestudies.CaseStudyId('stem_cycle', n))
                self.assertEqual(plan.S_hat, 1)
                self.assertEqual(plan.S_first_order, expected.S)
                self.assertEqual(plan.delta, expected.S - 1)
                deltas.append(plan.delta)
        self.assertEqual(deltas, [3, 8, 18])

    def test_shared_input(self):
        source = PathCycleCover((Stem(0, (0, 1)), Stem(0, (0, 2))))
        with self.assertRaises(exceptions.PreconditionError):
            extend.extend_x_network(STAR, source)

    def test_invalid_cover(self):
        with self.assertRaisesRegex(exceptions.ValidationError, 'uncovered'):
            extend.extend_x_network(STAR, PathCycleCover((Stem(0, (0, 1)),)))
        with self.assertRaises(exceptions.ValidationError):
            extend.extend_x_network(STAR, PathCycleCover((Stem(0, (1,)), Stem(0, (0, 2)))))


class TestExtendGeneral(unittest.TestCase):

    def test_y_network(self):
        plan = extend.extend_general(generate('fig2d'))
        self.assertEqual(plan.result.orders, (2, 1, 1, 1, 1, 1, 1))
        self.assertEqual(plan.result.heterogeneous, (True, False, False, False, True, True, True))
        self.assertEqual(plan.modified_subsystems, (0, 4, 5, 6))
        self.assertEqual((plan.S_hat, plan.S_first_order, plan.delta), (4, 3, -1))
        self.assertEqual(plan.cover, PathCycleCover((Stem(0, (0, 1, 2, 3)), Stem(0, (0, 4, 5, 6)))))

    def test_x_network(self):
        net = generate('fig2a')
        plan = extend.extend_general(net, casestudies.paper_cover('fig2a'))
        self.assertEqual(plan.result, extend.extend_x_network(net, casestudies.paper_cover('fig2a')).result)

    def test_certificates(self):
        for family, parameter in [('fig1a', None), ('fig2b', None), ('fig2c', None),
                                  ('binary_tree', 2), ('bifurcation', 4), ('stem_cycle', 7)]:
            with self.subTest(family=family):
                plan = extend.extend_general(generate(family, parameter))
                g = expanded_graph(plan.result)
                plan.certificate.validate(g)
                self.assertTrue(plan.certificate.vertex_disjoint)
                self.assertTrue(cover.generic_dimension(g).is_structurally_controllable)

    def test_random_networks(self):
        rng = random.Random(11)
        for _ in range(60):
            net = utils.random_network(rng)
            g = system_graph(net)
            source = extend.synthesize_cover(g)
            source.validate(g)
            self.assertEqual(source.covered, frozenset(range(net.n)))
            if cover.generic_dimension(g).is_structurally_controllable:
                continue
            plan = extend.extend_general(net, source)
            self.assertEqual(plan.delta, plan.S_first_order - plan.S_hat)
            self.assertLessEqual(plan.S_hat, net.n)

    def test_already_controllable(self):
        with self.assertRaises(exceptions.PreconditionError):
            extend.extend_general(StructuredNetwork(2, 1, [(0, 1)], [(0, 0)]))

    def test_not_input_accessible(self):
        with self.assertRaises(exceptions.NotInputAccessibleError):
            extend.extend_general(StructuredNetwork(2, 1, [], [(0, 0)]))


class TestFirstOrder(unittest.TestCase):

    def test_first_order(self):
        plan = extend.extend_first_order(generate('fig2d'))
        self.assertEqual(plan.result.orders, (1,) * 7)
        self.assertEqual(sum(plan.result.heterogeneous), 3)
        self.assertEqual((plan.S_hat, plan.S_first_order, plan.delta), (3, 3, 0))

    def test_all_heterogeneous(self):
        plan = extend.extend_all_heterogeneous(generate('fig2d'))
        self.assertEqual(plan.S_hat, 7)
        self.assertEqual(plan.delta, 3 - 7)
        self.assertIsNone(plan.cover)

    def test_first_order_minimum(self):
        for h in range(1, 6):
            with self.subTest(h=h):
                expected = casestudies.expected_metrics(casestudies.CaseStudyId('binary_tree', h))
                self.assertEqual(extend.first_order_minimum(generate('binary_tree', h)), expected.S)
        for h in (2, 4, 6):
            with self.subTest(h=h):
                self.assertEqual(extend.first_order_minimum(generate('bifurcation', h)), h)


class TestHeterogeneityBounds(unittest.TestCase):

    def test_bifurcation(self):
        for h in (2, 4, 6):
            with self.subTest(h=h):
                bounds = extend.heterogeneity_bounds(generate('bifurcation', h), 2)
                self.assertEqual(bounds.z_size, h + 1)
                self.assertEqual(bounds.upper, h)
                self.assertEqual(bounds.lower, h // 2)
                extended = generate('bifurcation', h, extended=True)
                self.assertEqual(len(extended.modified()), bounds.lower)
                self.assertEqual(bounds.plan.S_hat, bounds.upper)

    def test_tree(self):
        bounds = extend.heterogeneity_bounds(generate('binary_tree', 3), 2)
        self.assertEqual((bounds.lower, bounds.upper), (6, 11))

    def test_errors(self):
        with self.assertRaises(exceptions.ParameterError):
            extend.heterogeneity_bounds(generate('fig2d'), 0)
        with self.assertRaises(exceptions.PreconditionError):
            extend.heterogeneity_bounds(generate('fig2a'), 2)


if __name__ == '__main__':
    unittest.main()
