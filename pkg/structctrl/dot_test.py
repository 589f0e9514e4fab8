import textwrap
import unittest

from structctrl import casestudies
from structctrl import dot
from structctrl import network


class TestExportDot(unittest.TestCase):

    def test_star(self):
        g = network.system_graph(casestudies.generate(casestudies.CaseStudyId('fig1a')))
        self.assertEqual(dot.export_dot(g), textwrap.dedent('''\
            digraph "network" {
              rankdir=LR;
              "u1" [shape=box, style=filled, fillcolor=lightgray];
              "x1" [label="1", shape=circle];
              "x2" [label="2", shape=circle];
              "x3" [label="3", shape=circle];
              "u1" -> "x1";
              "x1" -> "x2";
              "x1" -> "x3";
            }
        '''))

    def test_clusters(self):
        ext = casestudies.generate(casestudies.CaseStudyId('bifurcation', 2, extended=True))
        g = network.expanded_graph(ext)
        text = dot.export_dot(g, 'bifurcation')
        self.assertTrue(text.startswith('digraph "bifurcation" {\n'))
        self.assertEqual(text.count('subgraph'), 1)
        self.assertIn('subgraph "cluster_subsys_4" {', text)
        self.assertIn('label="subsys_4";', text)
        src, dst = g.labels.index('4.2') + 1, g.labels.index('5') + 1
        self.assertIn(f'"x{src}" -> "x{dst}";', text)
        self.assertIn(f'"x{src}" [label="4.2", shape=circle];', text)

    def test_deterministic(self):
        ext = casestudies.extended_binary_tree(3)
        g = network.expanded_graph(ext)
        self.assertEqual(dot.export_dot(g), dot.export_dot(network.expanded_graph(ext)))
        self.assertEqual(dot.export_dot(g).count('subgraph'), 7)

    def test_repeated_labels(self):
        g = network.system_graph(network.StructuredNetwork(2, 1, [(0, 1)], [(0, 0)], ('a', 'a')))
        text = dot.export_dot(g)
        self.assertIn('"x1" [label="a", shape=circle];', text)
        self.assertIn('"x2" [label="a", shape=circle];', text)
        self.assertIn('"x1" -> "x2";', text)

    def test_quoted_labels(self):
        g = network.system_graph(network.StructuredNetwork(1, 1, [], [(0, 0)], ('a"b\\',)))
        text = dot.export_dot(g, 'say "hi"')
        self.assertTrue(text.startswith('digraph "say \\"hi\\"" {\n'))
        self.assertIn('"x1" [label="a\\"b\\\\", shape=circle];', text)
        self.assertIn('"u1" -> "x1";', text)


if __name__ == '__main__':
    unittest.main()
