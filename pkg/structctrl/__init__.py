"""Structural controllability analysis of networks of subsystems.

This package decides input accessibility and structural
controllability of networks of first-order subsystems, classifies
uncontrollable networks, synthesizes higher-order subsystem extensions
making them controllable, and verifies (output) controllability
numerically. The command line interface reads network documents in
JSON format and writes JSON reports.

"""

from typing import NamedTuple, Optional
import json
import sys

import click

from structctrl import casestudies
from structctrl import classify
from structctrl import cover
from structctrl import dot
from structctrl import exceptions
from structctrl import extend
from structctrl import network
from structctrl import pbh
from structctrl import report
from structctrl import schemas
from structctrl import utils
from structctrl import verify


class RunConfig(NamedTuple):
    command: str
    input: str
    output: str
    seed: Optional[int] = 0
    trials: Optional[int] = None
    field: Optional[str] = None
    jobs: int = 1
    max_search_nodes: int = classify.MAX_SEARCH_NODES
    verbosity: int = 0


FAMILY_ALIASES = {
    'tree': 'binary_tree',
    'stem-cycle': 'stem_cycle',
}


def _document(text: str):
    """Parse a network document.

    Reports of the extend command are accepted too: the extended
    network they carry is used.
    """
    doc = network.parse(text)
    if isinstance(doc, dict) and isinstance(doc.get('extended'), dict):
        doc = doc['extended']
    return doc


def _write(output, doc):
    output.write(report.dumps(doc))


def _verbosity(quiet, verbose):
    return verbose - quiet


def _print_schema(ctx, param, value):
    if not value or ctx.resilient_parsing:
        return
    click.echo(report.dumps(schemas.SCHEMAS), nl=False)
    ctx.exit()


_input = click.argument('src', type=click.File('r'), default='-')
_output = click.option('--out', '-o', 'output', type=click.File('w'), default='-',
                       help='Output file.')
_quiet = click.option('--quiet', '-q', count=True,
                      help='Suppress all output.')
_verbose = click.option('--verbose', '-v', count=True,
                        help='Show more details.')
_max_search_nodes = click.option('--max-search-nodes', type=click.IntRange(1), default=classify.MAX_SEARCH_NODES,
                                 show_default=True, help='Size guard for exhaustive searches.')


@click.command('analyze')
@_input
@_output
@click.option('--expect-controllable', is_flag=True,
              help='Exit with status 1 when the network is not structurally controllable.')
@_max_search_nodes
@_quiet
@_verbose
def _analyze(src, output, expect_controllable, max_search_nodes, quiet, verbose):
    """Analyze a network.

    Read the network document SRC, or the standard input, and report
    input accessibility, the generic dimension of the controllable
    subspace with a witness cover, and the network class.

    """
    log = utils.logger(_verbosity(quiet, verbose), err=True)
    errors = exceptions.ExceptionsTrap(log)
    config = RunConfig('analyze', src.name, output.name, None,
                       max_search_nodes=max_search_nodes, verbosity=_verbosity(quiet, verbose))
    controllable = False

    log(f'* {src.name}', nl=False)
    with errors:
        text = src.read()
        g = network.system_graph(network.from_document(_document(text)))
        log(' ...', nl=False)
        label = classify.classify(g, max_search_nodes)
        accessible, inaccessible = classify.is_input_accessible(g)
        controllable = label.label is classify.Label.STRUCTURALLY_CONTROLLABLE
        body = report.classification(g, label)
        body['input_accessible'] = accessible
        body['structurally_controllable'] = controllable
        # Maximum vertex-disjoint family of stems and cycles.
        body['cover'] = report.cover(cover.generic_dimension(g).witness, g) if accessible else None
        _write(output, report.envelope('analyze', utils.sha1sum(text), None, body, config._asdict()))
        log(' OK', fg='green')
        log(f'  d_c = {label.d_c}, n = {g.n}, label = {label.label.value}')
        if inaccessible:
            log('  inaccessible: ' + ', '.join(g.labels[k] for k in sorted(inaccessible)), 1)

    if errors:
        sys.exit(errors.exit_code)
    if expect_controllable and not controllable:
        sys.exit(1)


@click.command('classify')
@_input
@_output
@_max_search_nodes
@_quiet
@_verbose
def _classify(src, output, max_search_nodes, quiet, verbose):
    """Classify a network.

    Assign one of the labels NotInputAccessible,
    StructurallyControllable, X, Y, or Mixed to the network document
    SRC and report it with a witness cover where one exists.

    """
    log = utils.logger(_verbosity(quiet, verbose), err=True)
    errors = exceptions.ExceptionsTrap(log)
    config = RunConfig('classify', src.name, output.name, None,
                       max_search_nodes=max_search_nodes, verbosity=_verbosity(quiet, verbose))

    log(f'* {src.name}', nl=False)
    with errors:
        text = src.read()
        g = network.system_graph(network.from_document(_document(text)))
        log(' ...', nl=False)
        label = classify.classify(g, max_search_nodes)
        _write(output, report.envelope('classify', utils.sha1sum(text), None,
                                       report.classification(g, label), config._asdict()))
        log(' OK', fg='green')
        log(f'  {label.label.value}')

    if errors:
        sys.exit(errors.exit_code)


@click.command('extend')
@_input
@_output
@click.option('--mode', type=click.Choice(['x', 'general', 'first-order', 'heterogeneous']), default='general',
              show_default=True, help='Extension construction.')
@click.option('--cover', 'cover_file', type=click.File('r'),
              help='Cover document to build the extension from.')
@_max_search_nodes
@_quiet
@_verbose
def _extend(src, output, mode, cover_file, max_search_nodes, quiet, verbose):
    """Extend a network to make it structurally controllable.

    The x mode splits the nodes shared by the paths of a cover whose
    stems originate from distinct inputs into homogeneous higher-order
    subsystems. Without an explicit --cover, such a cover is searched.
    The general mode works for any input accessible network and adds
    heterogeneous dynamics where stems share an input. The first-order
    and heterogeneous modes make the nodes outside a maximum disjoint
    cover, respectively all the nodes, first-order heterogeneous.

    """
    log = utils.logger(_verbosity(quiet, verbose), err=True)
    errors = exceptions.ExceptionsTrap(log)
    config = RunConfig('extend', src.name, output.name, None,
                       max_search_nodes=max_search_nodes, verbosity=_verbosity(quiet, verbose))

    log(f'* {src.name}', nl=False)
    with errors:
        text = src.read()
        net = network.from_document(_document(text))
        if isinstance(net, network.ExtendedNetwork):
            raise exceptions.ValidationError('Expected a network document, found an extended network.')
        source = report.load_cover(network.parse(cover_file.read())) if cover_file is not None else None
        log(' ...', nl=False)
        if mode == 'x':
            if source is None:
                source = classify.exists_distinct_input_cover(network.system_graph(net), max_search_nodes)
                if source is None:
                    raise exceptions.PreconditionError('The network is not an X-network.')
            plan = extend.extend_x_network(net, source)
        elif mode == 'general':
            plan = extend.extend_general(net, source)
        elif mode == 'first-order':
            plan = extend.extend_first_order(net)
        else:
            plan = extend.extend_all_heterogeneous(net)
        body = report.plan(plan)
        body['mode'] = mode
        _write(output, report.envelope('extend', utils.sha1sum(text), None, body, config._asdict()))
        log(' OK', fg='green')
        log(f'  n_hat = {plan.result.n_hat}, S_hat = {plan.S_hat}, S = {plan.S_first_order}, delta = {plan.delta}')

    if errors:
        sys.exit(errors.exit_code)


@click.command('bounds')
@_input
@_output
@click.option('--nmax', type=int, required=True,
              help='Maximum order of the subsystems.')
@_quiet
@_verbose
def _bounds(src, output, nmax, quiet, verbose):
    """Bound the number of heterogeneous subsystems of a Y-network."""
    log = utils.logger(_verbosity(quiet, verbose), err=True)
    errors = exceptions.ExceptionsTrap(log)
    config = RunConfig('bounds', src.name, output.name, None, verbosity=_verbosity(quiet, verbose))

    log(f'* {src.name}', nl=False)
    with errors:
        text = src.read()
        net = network.from_document(_document(text))
        if isinstance(net, network.ExtendedNetwork):
            raise exceptions.ValidationError('Expected a network document, found an extended network.')
        log(' ...', nl=False)
        result = extend.heterogeneity_bounds(net, nmax)
        _write(output, report.envelope('bounds', utils.sha1sum(text), None, report.bounds(result), config._asdict()))
        log(' OK', fg='green')
        log(f'  {result.lower} <= S_hat <= {result.upper}')

    if errors:
        sys.exit(errors.exit_code)


@click.command('gen')
@click.argument('family', type=click.Choice([*casestudies.FAMILIES, *FAMILY_ALIASES]))
@click.option('--height', type=int,
              help='Height of the tree or bifurcation.')
@click.option('--size', type=int,
              help='Number of nodes of the stem and cycle network.')
@click.option('--extended', is_flag=True,
              help='Generate the extended network.')
@_output
@_quiet
def _gen(family, height, size, extended, output, quiet):
    """Generate a case study network.

    Write the network document of FAMILY. Extended trees and
    bifurcations carry case_study metadata, used by verify --witness.

    """
    log = utils.logger(-quiet, err=True)
    errors = exceptions.ExceptionsTrap(log)

    with errors:
        family = FAMILY_ALIASES.get(family, family)
        parameter = size if family == 'stem_cycle' else height
        cid = casestudies.CaseStudyId(family, parameter, extended)
        doc = network.to_document(casestudies.generate(cid))
        if extended and family in ('binary_tree', 'bifurcation'):
            doc['case_study'] = {'family': family, 'parameter': parameter}
        output.write(json.dumps(doc, indent=2, sort_keys=True) + '\n')

    if errors:
        sys.exit(errors.exit_code)


def _pbh_sample(doc, ext, kind, seed, witness, log):
    if not witness:
        return verify.sample_realization(ext, kind, verify.trial_seeds(seed, 1)[0]), None
    meta = doc.get('case_study') if isinstance(doc, dict) else None
    if not isinstance(meta, dict):
        raise exceptions.PreconditionError('The document carries no case study metadata.')
    family, h = meta.get('family'), meta.get('parameter')
    expected = casestudies.generate(casestudies.CaseStudyId(family, h, True))
    if expected != ext:
        raise exceptions.ValidationError('The network does not match its case study metadata.', f'{family} {h}')
    if family == 'binary_tree':
        sample = verify.proposition3_witness(h)
    elif family == 'bifurcation':
        sample = verify.proposition4_witness(h)
    else:
        raise exceptions.ParameterError('No witness for this family.', family)
    log(f'  witness realization of {family} h = {h}', 1)
    return sample, verify.triangular_certificate(sample, family, h)


@click.command('verify')
@_input
@_output
@click.option('--what', type=click.Choice(['structural', 'output', 'pbh']), default='output', show_default=True,
              help='Property to verify.')
@click.option('--trials', type=click.IntRange(1), default=5, show_default=True,
              help='Number of random realizations.')
@click.option('--seed', type=int, default=0, show_default=True,
              help='Random seed.')
@click.option('--field', 'field_name', type=click.Choice(['prime', 'float', 'rational']),
              help='Arithmetic: prime for ranks, float or rational for PBH tests.')
@click.option('--jobs', '-j', type=click.IntRange(1), default=1, show_default=True,
              help='Number of worker processes for the trials.')
@click.option('--witness', is_flag=True,
              help='Use the exact output controllable realization of the case study.')
@click.option('--expect-controllable', is_flag=True,
              help='Exit with status 1 when the verification fails.')
@_quiet
@_verbose
def _verify(src, output, what, trials, seed, field_name, jobs, witness, expect_controllable, quiet, verbose):
    """Verify controllability numerically.

    For structural and output controllability, estimate the generic
    rank of the (output) controllability matrix of the extended
    network SRC over a prime field, maximizing over random
    realizations. For pbh, run the eigenvalue test for output
    controllability on one realization.

    """
    log = utils.logger(_verbosity(quiet, verbose), err=True)
    errors = exceptions.ExceptionsTrap(log)
    if field_name is None:
        field_name = 'rational' if what == 'pbh' else 'prime'
    config = RunConfig('verify', src.name, output.name, seed, trials, field_name, jobs,
                       verbosity=_verbosity(quiet, verbose))
    passed = False

    log(f'* {src.name}', nl=False)
    with errors:
        text = src.read()
        doc = _document(text)
        net = network.from_document(doc)
        ext = net if isinstance(net, network.ExtendedNetwork) else network.identity_extension(net)
        kind = verify.field(field_name)
        log(' ...', nl=False)
        body = {'what': what}
        if what == 'pbh':
            if kind.kind == 'prime':
                raise exceptions.ParameterError('The PBH test runs over the float or rational field.')
            sample, certificate = _pbh_sample(doc, ext, kind, seed, witness, log)
            result = pbh.pbh_output_test(sample.A, sample.B, sample.C, 'rational' if witness else kind.kind)
            body['pbh'] = report.pbh(result)
            if certificate is not None:
                body['triangular_certificate'] = report.triangular(certificate)
            passed = result.verdict is pbh.Verdict.OUTPUT_CONTROLLABLE
            summary = result.verdict.value
        else:
            if kind.kind != 'prime':
                raise exceptions.ParameterError('Generic ranks are estimated over the prime field.', field_name)
            if what == 'structural':
                estimate = verify.generic_rank_controllability(ext, trials, seed, jobs)
                body.update(report.rank_estimate(estimate))
            else:
                inaccessible = network.system_graph(ext.base).inaccessible()
                body['input_accessible'] = not inaccessible
                if inaccessible:
                    # Extensions of networks that are not input accessible are never output controllable.
                    body['inaccessible'] = [ext.base.label(i) for i in inaccessible]
                    estimate = None
                    body['verdict'] = 'fail'
                else:
                    estimate = verify.generic_rank_output_controllability(ext, trials, seed, jobs)
                    body.update(report.rank_estimate(estimate))
                    body['necessary_condition'] = verify.output_controllability_necessary(ext)
            passed = body['verdict'] == 'pass'
            summary = body['verdict'] if estimate is None else f'rank {estimate.rank} / {estimate.target}'
        _write(output, report.envelope('verify', utils.sha1sum(text), seed, body, config._asdict()))
        log(' OK', fg='green')
        log(f'  {summary}')

    if errors:
        sys.exit(errors.exit_code)
    if expect_controllable and not passed:
        sys.exit(1)


@click.command('export-dot')
@_input
@_output
@click.option('--name', default='network', show_default=True,
              help='Graph name.')
@_quiet
def _export_dot(src, output, name, quiet):
    """Render a network or extended network as a Graphviz DOT graph."""
    log = utils.logger(-quiet, err=True)
    errors = exceptions.ExceptionsTrap(log)

    with errors:
        net = network.from_document(_document(src.read()))
        output.write(dot.export_dot(network.system_graph(net), name))

    if errors:
        sys.exit(errors.exit_code)


@click.command('schema')
def _schema():
    """Print the JSON schemas of the documents."""
    click.echo(report.dumps(schemas.SCHEMAS), nl=False)


@click.group('structctrl')
@click.version_option(package_name='structctrl')
@click.option('--schema', is_flag=True, expose_value=False, is_eager=True, callback=_print_schema,
              help='Print the JSON schemas of the documents and exit.')
def cli():
    """Structural controllability of networks of subsystems."""


cli.add_command(_analyze)
cli.add_command(_classify)
cli.add_command(_extend)
cli.add_command(_bounds)
cli.add_command(_gen)
cli.add_command(_verify)
cli.add_command(_export_dot)
cli.add_command(_schema)


def main():
    return cli()

