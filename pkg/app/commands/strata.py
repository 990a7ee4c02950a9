import click
from flask import Blueprint, current_app
from flask_babel import gettext as _

from .utils import domain_errors, emit, finish, n_option, output_options

strata_blueprint = Blueprint('strata', __name__, cli_group=None)

REPORTS = ('all', 'boundary', 'g', 'intersection', 'induction')


@strata_blueprint.cli.command('strata')
@n_option
@click.option('--side', type=click.Choice(['upper', 'lower']), default='upper', show_default=True,
              help='Facet u(1,n) = lambda1 (upper) or u(n,1) = lambda3 (lower).')
@click.option('--report', 'which', type=click.Choice(REPORTS), default='all', show_default=True)
@output_options
@domain_errors
def strata(n, side, which, fmt, out):
    """Verify the dimension counts behind the boundary of the pseudocycle."""
    from ..strata import (boundary_report, full_ledger, g_stratification, induction_check,
                          intersection_bound_check)

    builders = {
        'boundary': boundary_report,
        'g': g_stratification,
        'intersection': intersection_bound_check,
        'induction': induction_check,
    }
    reports = full_ledger(n, side) if which == 'all' else [builders[which](n, side)]
    passed = all(report.passed for report in reports)

    lines = [f"n = {n}, side = {side}"]
    tables = {}
    for report in reports:
        verdict = _('passed') if report.passed else _('FAILED')
        lines.append(f"{report.title}: {verdict}")
        tables[f"{report.title} checks"] = [
            {'check': c.name, 'lhs': c.lhs, 'relation': c.relation, 'rhs': c.rhs, 'passed': c.passed}
            for c in report.checks]
    strata_rows = next((r.strata for r in reports if r.strata), ())
    if strata_rows:
        tables['strata'] = [{
            'label': s.label,
            'face': str(s.face),
            'sphere': f"S^{s.sphere_dim}" if s.sphere_dim else 'point',
            'torus': s.torus_rank,
            'total_dim': s.total_fiber_dim,
            'witness': str(s.witness),
        } for s in strata_rows]

    payload = {'n': n, 'side': side, 'reports': [r.to_dict() for r in reports], 'passed': passed}
    current_app.logger.info(f"strata n={n} side={side} report={which}: passed={passed}")
    emit(payload, fmt, out, lines, tables)
    finish(passed, 'strata')
