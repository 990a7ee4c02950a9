import json

import click
from flask import Blueprint, current_app
from flask_babel import gettext as _

from ..models import GZFloerError, fraction_str
from .utils import (RATIONAL, domain_errors, emit, finish, n_option, output_options,
                    parse_t_list, resolve_trunc, trunc_option)

potential_blueprint = Blueprint('potential', __name__, cli_group=None)


def t_option(f):
    return click.option('--t', type=RATIONAL, required=True,
                        help='Position 0 < t <= 1 on the segment from u0 to u1.')(f)


def _assignment_rows(cert):
    rows = [{'variable': str(v), 'value': str(x), 'leading': str(x.constant_term())}
            for v, x in cert.assignment.items()]
    rows.append({'variable': 'c', 'value': str(cert.bulk.c), 'leading': str(cert.bulk.c.constant_term())})
    rows.append({'variable': 'c_under', 'value': str(cert.bulk.c_under),
                 'leading': str(cert.bulk.c_under.constant_term())})
    return rows


def _residual_rows(report):
    return [{'variable': r.var, 'valuation': fraction_str(r.valuation),
             'threshold': fraction_str(r.threshold), 'passed': r.passed} for r in report.rows]


def _verdict(ok):
    return _('VALID') if ok else _('INVALID')


# ----------------------------
# Potential and split equation
# ----------------------------
@potential_blueprint.cli.command('potential')
@n_option
@t_option
@trunc_option
@click.option('--bulk', type=click.Choice(['trivial', 'solved']), default='trivial', show_default=True,
              help='c = c_under = 1, or the bulk parameters of the critical point.')
@output_options
@domain_errors
def potential(n, t, trunc, bulk, fmt, out):
    """Print the monomials of the bulk-deformed potential."""
    from ..potential import block_exponents, build_potential, extend_to_critical_point

    trunc = resolve_trunc(n, t, trunc)
    params = extend_to_critical_point(n, t, trunc).bulk if bulk == 'solved' else None
    W = build_potential(n, t, params, trunc)
    low, high = block_exponents(n, t)
    lines = [f"n = {n}, t = {fraction_str(t)}, trunc = {fraction_str(trunc)}",
             f"block exponents = {fraction_str(low)}, {fraction_str(high)}",
             f"monomials = {len(W)}"]
    current_app.logger.info(f"potential n={n} t={t} trunc={trunc} bulk={bulk}: {len(W)} monomials")
    emit(W.to_dict(), fmt, out, lines, {'monomials': W.rows()})


@potential_blueprint.cli.command('split')
@n_option
@output_options
@domain_errors
def split(n, fmt, out):
    """Solve the split leading term equation over C and check it exactly."""
    from ..potential import solve_split_leading, split_residuals

    solution = solve_split_leading(n)
    rows = [{'variable': str(v), 'value': str(x)} for v, x in solution.assignment.items()]
    rows += [{'variable': name, 'value': str(getattr(solution, name))}
             for name in ('c', 'c_under', 'a', 'a_under')]
    residuals = [{'piece': piece, 'variable': str(var), 'residual': str(r)}
                 for piece, var, r in split_residuals(solution)]
    payload = solution.to_dict()
    payload['residuals'] = residuals
    current_app.logger.info(f"split n={n}")
    emit(payload, fmt, out, [f"n = {n}", _('every split derivative vanishes')],
         {'solution': rows, 'residuals': residuals})


# ----------------------------
# Critical points
# ----------------------------
@potential_blueprint.cli.command('solve')
@n_option
@t_option
@trunc_option
@output_options
@domain_errors
def solve(n, t, trunc, fmt, out):
    """Extend the split solution to a critical point over the Novikov field."""
    from ..potential import build_potential, certify, extend_to_critical_point

    trunc = resolve_trunc(n, t, trunc)
    cert = extend_to_critical_point(n, t, trunc)
    report = certify(build_potential(n, t, cert.bulk, trunc), cert)
    lines = [f"n = {n}, t = {fraction_str(t)}, trunc = {fraction_str(trunc)}",
             f"certificate = {_verdict(cert.valid)}"]
    current_app.logger.info(f"solve n={n} t={t} trunc={trunc}: valid={cert.valid}")
    emit(cert.to_dict(), fmt, out, lines,
         {'assignment': _assignment_rows(cert), 'residuals': _residual_rows(report)})
    finish(cert.valid and report.passed, 'solve')


def _read_certificate(path):
    from ..potential import certificate_from_dict

    try:
        with open(path, encoding='utf-8') as handle:
            data = json.load(handle)
    except (OSError, ValueError) as e:
        raise click.BadParameter(str(e), param_hint="'--certificate'")
    return certificate_from_dict(data)


def _flip(cert, name):
    from dataclasses import replace
    from ..potential import VarId

    var = VarId.parse(name).check(cert.n)
    assignment = dict(cert.assignment)
    assignment[var] = -assignment[var]
    return replace(cert, assignment=assignment)


@potential_blueprint.cli.command('certify')
@click.option('--certificate', 'path', type=click.Path(exists=True, dir_okay=False), default=None,
              help='Certificate JSON written by solve --out.')
@click.option('--n', 'n', type=int, default=3, show_default=True)
@click.option('--t', type=RATIONAL, default=None)
@trunc_option
@click.option('--flip', default=None, help='Negate one variable, e.g. "y(1,3)", before certifying.')
@output_options
@domain_errors
def certify_command(path, n, t, trunc, flip, fmt, out):
    """Independently re-evaluate every logarithmic derivative at a certificate."""
    from ..potential import build_potential, certify, extend_to_critical_point

    if path is not None:
        cert = _read_certificate(path)
    elif t is not None:
        cert = extend_to_critical_point(n, t, resolve_trunc(n, t, trunc))
    else:
        raise click.UsageError(_('give either --certificate or --t'))
    if flip:
        cert = _flip(cert, flip)
    report = certify(build_potential(cert.n, cert.t, cert.bulk, cert.trunc), cert)
    lines = [f"n = {cert.n}, t = {fraction_str(cert.t)}, trunc = {fraction_str(cert.trunc)}",
             f"certification = {_verdict(report.passed)}"]
    if report.failures():
        lines.append(f"failing = {', '.join(report.failures())}")
    current_app.logger.info(f"certify n={cert.n} t={cert.t} flip={flip}: passed={report.passed}")
    emit(report.to_dict(), fmt, out, lines, {'residuals': _residual_rows(report)})
    finish(report.passed, 'certify')


@potential_blueprint.cli.command('sweep')
@n_option
@click.option('--t-list', 't_list', required=True, help='Comma separated t values, e.g. "1/4,1/2,1".')
@trunc_option
@output_options
@domain_errors
def sweep(n, t_list, trunc, fmt, out):
    """Certify a critical point at each sampled t and report the fiber over I_n(t)."""
    from ..models import Weight
    from ..polytope import fiber_type, segment_point
    from ..potential import build_potential, certify, check_n, extend_to_critical_point

    values = parse_t_list(t_list)
    check_n(n)
    entries, rows = [], []
    error = None
    for t in values:
        try:
            cert = extend_to_critical_point(n, t, resolve_trunc(n, t, trunc))
            report = certify(build_potential(n, t, cert.bulk, cert.trunc), cert)
            u = segment_point(n, t)
            fiber_kind = fiber_type(Weight.monotone(n), u)
        except GZFloerError as e:
            current_app.logger.error(f"sweep n={n} t={t}: {e}")
            error = f"t = {fraction_str(t)}: {e}"
            break
        valid = cert.valid and report.passed
        entries.append({'t': fraction_str(t), 'certificate': cert.to_dict(), 'valid': valid,
                        'segment_point': u.to_dict(), 'fiber': fiber_kind.to_dict()})
        rows.append({'t': fraction_str(t), 'trunc': fraction_str(cert.trunc), 'certificate': _verdict(valid),
                     'segment_point': str(u), 'fiber': str(fiber_kind)})
        if not valid:
            current_app.logger.warning(f"sweep n={n} t={t}: certificate invalid")

    passed = error is None and all(entry['valid'] for entry in entries)
    payload = {'n': n, 'entries': entries, 'valid': passed}
    lines = [f"n = {n}", f"sweep = {_verdict(passed)}"]
    if error:
        payload['error'] = error
        lines.append(_('aborted at {}').format(error))
    emit(payload, fmt, out, lines, {'sweep': rows})
    if error:
        raise click.exceptions.Exit(2)
    finish(passed, 'sweep')
