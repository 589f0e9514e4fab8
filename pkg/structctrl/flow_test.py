import unittest

from structctrl import flow


class TestCirculation(unittest.TestCase):

    def test_empty(self):
        circulation = flow.Circulation()
        self.assertIsNone(circulation.find_negative_cycle())
        self.assertEqual(circulation.minimize(), 0)
        self.assertEqual(circulation.cost(), 0)

    def test_isolated_node(self):
        circulation = flow.Circulation()
        circulation.add_node()
        self.assertIsNone(circulation.find_negative_cycle())
        self.assertEqual(circulation.minimize(), 0)

    def test_no_negative_cycle(self):
        circulation = flow.Circulation()
        a, b = circulation.add_node(), circulation.add_node()
        forward = circulation.add_arc(a, b, cap=1, cost=1)
        circulation.add_arc(b, a, cap=1, cost=0)
        self.assertEqual(circulation.minimize(), 0)
        self.assertEqual(circulation.flow(forward), 0)

    def test_cycle(self):
        circulation = flow.Circulation()
        a, b = circulation.add_node(), circulation.add_node()
        forward = circulation.add_arc(a, b, cap=2, cost=-1)
        back = circulation.add_arc(b, a, cap=1, cost=0)
        self.assertEqual(circulation.minimize(), -1)
        self.assertEqual(circulation.flow(forward), 1)
        self.assertEqual(circulation.flow(back), 1)
        self.assertEqual(circulation.arcs[forward ^ 1].flow, -1)

    def test_best_parallel_arc(self):
        circulation = flow.Circulation()
        a, b = circulation.add_node(), circulation.add_node()
        cheap = circulation.add_arc(a, b, cap=1, cost=-1)
        cheaper = circulation.add_arc(a, b, cap=1, cost=-2)
        circulation.add_arc(b, a, cap=1, cost=0)
        self.assertEqual(circulation.minimize(), -2)
        self.assertEqual(circulation.flow(cheap), 0)
        self.assertEqual(circulation.flow(cheaper), 1)

    def test_push(self):
        circulation = flow.Circulation()
        a, b = circulation.add_node(), circulation.add_node()
        arc = circulation.add_arc(a, b, cap=3, cost=2)
        circulation.push(arc, 2)
        self.assertEqual(circulation.arcs[arc].residual, 1)
        self.assertEqual(circulation.arcs[arc ^ 1].residual, 2)
        self.assertEqual(circulation.cost(), 4)


if __name__ == '__main__':
    unittest.main()
