import random
import unittest

from structctrl import casestudies
from structctrl import classify
from structctrl import exceptions
from structctrl.classify import Label
from structctrl.network import StructuredNetwork, system_graph
from structctrl.tests import utils


def fixture(family, parameter=None):
    return system_graph(casestudies.generate(casestudies.CaseStudyId(family, parameter)))


# A star with an extra cycle: the leaves need two stems from the only
# input, and the cycle rules out the Y class.
MIXED = StructuredNetwork(5, 1, [(0, 1), (0, 2), (0, 3), (3, 4), (4, 3)], [(0, 0)])


class TestHelpers(unittest.TestCase):

    def test_is_input_accessible(self):
        self.assertEqual(classify.is_input_accessible(fixture('fig2a')), (True, frozenset()))
        g = system_graph(StructuredNetwork(3, 1, [(1, 2)], [(0, 0)]))
        self.assertEqual(classify.is_input_accessible(g), (False, frozenset({1, 2})))

    def test_cycle_nodes(self):
        self.assertEqual(classify.cycle_nodes(fixture('fig2b')), frozenset({1, 4, 5}))
        self.assertEqual(classify.cycle_nodes(fixture('fig2c')), frozenset({2, 3, 4, 5, 6}))
        self.assertEqual(classify.cycle_nodes(fixture('fig2d')), frozenset())

    def test_diagnostics(self):
        diag = classify.diagnostics(fixture('fig2a'))
        self.assertEqual(diag.inaccessible, ())
        self.assertEqual(diag.overlaps, ((0, 1, (2, 3, 4, 5, 6)),))
        self.assertTrue(diag.acyclic)

    def test_maximal_chains(self):
        below = {1: frozenset({2, 3}), 2: frozenset({3}), 3: frozenset()}
        self.assertEqual(classify._maximal_chains([1, 2, 3], below), [(1, 2, 3)])
        below = {1: frozenset({2, 3}), 2: frozenset(), 3: frozenset()}
        self.assertEqual(classify._maximal_chains([1, 2, 3], below), [(1, 2), (1, 3)])
        self.assertEqual(classify._maximal_chains([2, 3], below), [(2,), (3,)])


class TestDistinctInputCover(unittest.TestCase):

    def test_fixtures(self):
        for family in ('fig2a', 'fig2b', 'fig2c'):
            with self.subTest(family=family):
                g = fixture(family)
                witness = classify.exists_distinct_input_cover(g)
                witness.validate(g)
                self.assertEqual(witness.covered, frozenset(range(g.n)))
                inputs = [stem.input for stem in witness.stems]
                self.assertEqual(len(inputs), len(set(inputs)))

    def test_none(self):
        self.assertIsNone(classify.exists_distinct_input_cover(fixture('fig2d')))
        self.assertIsNone(classify.exists_distinct_input_cover(system_graph(MIXED)))

    def test_controllable(self):
        with self.assertRaises(exceptions.PreconditionError):
            classify.exists_distinct_input_cover(fixture('binary_tree', 0))

    def test_size_limit(self):
        with self.assertRaises(exceptions.SizeLimitError):
            classify.exists_distinct_input_cover(fixture('binary_tree', 4))
        with self.assertRaises(exceptions.SizeLimitError):
            classify.exists_distinct_input_cover(fixture('fig2a'), max_nodes=6)


class TestClassify(unittest.TestCase):

    def test_fixtures(self):
        expected = {
            'fig1a': Label.Y,
            'fig2a': Label.X,
            'fig2b': Label.X,
            'fig2c': Label.X,
            'fig2d': Label.Y,
        }
        for family, label in expected.items():
            with self.subTest(family=family):
                self.assertIs(classify.classify(fixture(family)).label, label)

    def test_families(self):
        for h in range(1, 5):
            with self.subTest(h=h):
                self.assertIs(classify.classify(fixture('binary_tree', h)).label, Label.Y)
        for h in (2, 4, 6):
            with self.subTest(h=h):
                self.assertIs(classify.classify(fixture('bifurcation', h)).label, Label.Y)
        for n in (4, 5, 10):
            with self.subTest(n=n):
                self.assertIs(classify.classify(fixture('stem_cycle', n)).label, Label.X)

    def test_other_labels(self):
        label = classify.classify(system_graph(StructuredNetwork(3, 1, [(0, 1)], [(0, 0)])))
        self.assertIs(label.label, Label.NOT_INPUT_ACCESSIBLE)
        self.assertIsNone(label.d_c)
        self.assertEqual(label.diagnostics.inaccessible, (2,))

        label = classify.classify(system_graph(StructuredNetwork(3, 1, [(0, 1), (1, 2)], [(0, 0)])))
        self.assertIs(label.label, Label.STRUCTURALLY_CONTROLLABLE)
        self.assertEqual(label.d_c, 3)

        label = classify.classify(system_graph(MIXED))
        self.assertIs(label.label, Label.MIXED)
        self.assertEqual(label.d_c, 4)

    def test_heterogeneous_extension(self):
        ext = casestudies.generate(casestudies.CaseStudyId('fig1b'))
        self.assertIs(classify.classify(system_graph(ext)).label, Label.STRUCTURALLY_CONTROLLABLE)

    def test_oracle(self):
        rng = random.Random(7)
        for index in range(200):
            net = utils.random_network(rng)
            g = system_graph(net)
            label = classify.classify(g).label
            if label is Label.STRUCTURALLY_CONTROLLABLE:
                continue
            x = utils.oracle_x(g)
            y = not x and not utils.oracle_intersections(g)
            with self.subTest(index=index, net=net):
                self.assertEqual(label is Label.X, x)
                self.assertEqual(label is Label.Y, y)
                self.assertEqual(label is Label.MIXED, not x and not y)


if __name__ == '__main__':
    unittest.main()
