"""JSON report documents.

Every report is a single JSON object carrying the tool version, the
seed, and the SHA1 digest of the input document, so that a report can
be traced back to the exact input that produced it. Node indices are
1-based, as in network documents. Reports are serialized with sorted
keys and contain no timestamps: identical inputs and options produce
identical bytes.
"""

from typing import Any, Dict, Optional
import importlib.metadata
import json

import sympy

from structctrl import schemas
from structctrl.classify import ClassLabel
from structctrl.cover import PathCycleCover, Stem
from structctrl.extend import ExtensionPlan, HeterogeneityBounds
from structctrl.network import SystemGraph, to_document
from structctrl.pbh import NaiveReport, PbhReport
from structctrl.verify import RankEstimate, TriangularCertificate


def version() -> str:
    try:
        return importlib.metadata.version('structctrl')
    except importlib.metadata.PackageNotFoundError:
        return 'unknown'


def envelope(command: str, digest: str, seed: Optional[int], body: Dict, config: Optional[Dict] = None) -> Dict:
    doc = {
        'tool': 'structctrl',
        'version': version(),
        'command': command,
        'seed': seed,
        'input_sha1': digest,
    }
    if config is not None:
        doc['config'] = config
    doc.update(body)
    return doc


def dumps(doc: Dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + '\n'


def cover(c: Optional[PathCycleCover], g: Optional[SystemGraph] = None) -> Optional[Dict]:
    if c is None:
        return None
    doc: Dict[str, Any] = {
        'stems': [{'input': stem.input + 1, 'nodes': [k + 1 for k in stem.nodes]} for stem in c.stems],
        'cycles': [[k + 1 for k in cycle] for cycle in c.cycles],
    }
    if g is not None:
        doc['labels'] = {
            'stems': [[g.labels[k] for k in stem.nodes] for stem in c.stems],
            'cycles': [[g.labels[k] for k in cycle] for cycle in c.cycles],
        }
    return doc


def load_cover(doc: Any) -> PathCycleCover:
    """Parse a cover document, as produced by cover().

    Raises:
      ValidationError: The document is malformed.
    """
    parsed = schemas.validate(schemas.CoverDocument, doc, 'cover document')
    stems = tuple(Stem(item.input - 1, tuple(k - 1 for k in item.nodes)) for item in parsed.stems)
    cycles = tuple(tuple(k - 1 for k in cycle) for cycle in parsed.cycles)
    return PathCycleCover(stems, cycles)


def classification(g: SystemGraph, label: ClassLabel) -> Dict:
    diag = label.diagnostics
    return {
        'label': label.label.value,
        'd_c': label.d_c,
        'n': g.n,
        'witness': cover(label.witness, g),
        'diagnostics': {
            'inaccessible': [g.labels[k] for k in diag.inaccessible],
            'overlaps': [{'inputs': [s + 1, t + 1], 'nodes': [k + 1 for k in shared]}
                         for s, t, shared in diag.overlaps],
            'cycle_nodes': [k + 1 for k in diag.cycle_nodes],
            'acyclic': diag.acyclic,
        },
    }


def plan(p: ExtensionPlan) -> Dict:
    return {
        'extended': to_document(p.result),
        'n_hat': p.result.n_hat,
        'modified_subsystems': [i + 1 for i in p.modified_subsystems],
        'S_hat': p.S_hat,
        'S': p.S_first_order,
        'delta': p.delta,
        'certificate': cover(p.certificate),
        'cover': cover(p.cover),
    }


def bounds(b: HeterogeneityBounds) -> Dict:
    return {
        'lower': b.lower,
        'upper': b.upper,
        'n_hat_max': b.n_hat_max,
        'z_size': b.z_size,
        'plan': plan(b.plan),
    }


def rank_estimate(estimate: RankEstimate) -> Dict:
    return {
        'field': {'kind': 'prime', 'p': estimate.p},
        'trials': len(estimate.ranks),
        'seeds': list(estimate.seeds),
        'ranks': list(estimate.ranks),
        'rank': estimate.rank,
        'target': estimate.target,
        'verdict': 'pass' if estimate.full else 'fail',
    }


def number(value: Any) -> Any:
    """JSON rendering of an exact or floating point scalar."""
    if isinstance(value, sympy.Basic):
        if value.is_Integer:
            return int(value)
        return str(value)
    value = complex(value)
    if value.imag == 0:
        return value.real
    return {'re': value.real, 'im': value.imag}


def pbh(r: PbhReport) -> Dict:
    return {
        'mode': r.mode,
        'eigenvalues': [{'value': number(value), 'multiplicity': k} for value, k in r.eigenvalues],
        'uncontrollable_eigenvalues': (None if r.uncontrollable_eigenvalues is None
                                       else [number(value) for value in r.uncontrollable_eigenvalues]),
        'diagonalizable': r.diagonalizable,
        'condition': r.condition,
        'N_basis': (None if r.n_basis is None
                    else [[number(x) for x in vector] for vector in r.n_basis]),
        'hypothesis_ok': r.hypothesis_ok,
        'verdict': r.verdict.value,
        'which_test': r.which_test,
        'certificate': (None if r.certificate is None else
                        {'rank': r.certificate.rank, 'target': r.certificate.target,
                         'passed': r.certificate.passed}),
        'reason': r.reason,
    }


def naive(r: NaiveReport) -> Dict:
    return {
        'ranks': [{'eigenvalue': number(value), 'rank': rank} for value, rank in r.ranks],
        'target': r.target,
        'passed': r.passed,
    }


def triangular(t: TriangularCertificate) -> Dict:
    return {
        'columns': [j + 1 for j in t.columns],
        'size': t.matrix.rows,
        'triangular': t.triangular,
    }
