import click
from flask import Blueprint, current_app
from flask_babel import gettext as _

from ..models import DomainError, PluckerVector, fraction_str
from ..novikov import ComplexRational
from .utils import (RATIONAL, domain_errors, emit, finish, n_option, output_options,
                    resolve_point, resolve_weight, weight_option)

polytope_blueprint = Blueprint('polytope', __name__, cli_group=None)


def _point_source(n, point, t):
    from ..polytope import segment_point

    if point is not None:
        return resolve_point(n, point)
    if t is not None:
        return segment_point(n, t)
    raise click.UsageError(_('give either --point or --t'))


# ----------------------------
# Membership and distinguished points
# ----------------------------
@polytope_blueprint.cli.command('polytope')
@n_option
@weight_option
@click.option('--point', default=None, help='Coordinates u(1,1..n),u(2..n,1) as a CSV of p/q.')
@output_options
@domain_errors
def polytope(n, weight, point, fmt, out):
    """Print the inequality system and the distinguished points, or test one point."""
    from ..polytope import (active_face, center_point, contains, corner_point, monotone_point,
                            pattern_covers, pattern_values)

    w = resolve_weight(n, weight)
    points = [('u0', center_point(n)), ('u1', corner_point(n))]
    points += [(f"monotone j={j}", monotone_point(n, j)) for j in range(n)]
    point_rows = [{'name': name, 'point': str(u), 'inside': contains(w, u)} for name, u in points]
    cover_rows = [{'upper': c.upper, 'lower': c.lower} for c in pattern_covers(n)]
    payload = {'n': n, 'weight': w.to_dict(),
               'covers': cover_rows,
               'points': [{'name': name, 'point': u.to_dict()} for name, u in points]}
    lines = [f"n = {n}", f"weight = ({', '.join(fraction_str(x) for x in w.as_tuple())})"]

    if point is not None:
        u = resolve_point(n, point)
        inside = contains(w, u)
        values = pattern_values(w, u)
        cover_rows = [{**row, 'slack': fraction_str(values[row['upper']] - values[row['lower']])}
                      for row in cover_rows]
        payload['covers'] = cover_rows
        payload['query'] = {'point': u.to_dict(), 'inside': inside}
        lines.append(f"point = {u}")
        lines.append(f"inside = {inside}")
        if inside:
            face = active_face(w, u)
            payload['query']['face'] = face.to_dict()
            lines.append(f"face = {face} (dimension {face.dimension})")

    current_app.logger.info(f"polytope n={n} point={point}")
    emit(payload, fmt, out, lines, {'covers': cover_rows, 'points': point_rows})


@polytope_blueprint.cli.command('faces')
@n_option
@weight_option
@click.option('--check', is_flag=True, help='Compare with the ladder diagram subgraphs.')
@output_options
@domain_errors
def faces(n, weight, check, fmt, out):
    """List every face of the polytope with a relative-interior point and its fiber."""
    from ..ladder import face_correspondence
    from ..polytope import enumerate_faces, fiber_type

    limit = current_app.config['MAX_ORACLE_N']
    if n > limit:
        raise DomainError(f"the face oracle is limited to n <= {limit}, got {n}")
    w = resolve_weight(n, weight)
    rows = []
    for face in enumerate_faces(w, n):
        fiber = fiber_type(w, face.witness)
        rows.append({
            'dimension': face.descriptor.dimension,
            'equalities': str(face.descriptor),
            'witness': str(face.witness),
            'fiber': str(fiber),
        })
    census = [sum(1 for r in rows if r['dimension'] == d) for d in range(2 * n)]
    lagrangian = sum(1 for r in rows if r['fiber'].endswith('(Lagrangian)'))
    payload = {'n': n, 'weight': w.to_dict(), 'faces': rows, 'census': census,
               'lagrangian_count': lagrangian}
    lines = [f"n = {n}", f"faces per dimension = {census}", f"Lagrangian faces = {lagrangian}"]
    passed = True
    if check:
        report = face_correspondence(n, w)
        payload['correspondence'] = report.to_dict()
        lines.append(f"ladder correspondence = {_('passed') if report.passed else _('FAILED')}")
        passed = report.passed

    current_app.logger.info(f"faces n={n}: {len(rows)} faces, check={check}")
    emit(payload, fmt, out, lines, {'faces': rows})
    finish(passed, 'faces')


@polytope_blueprint.cli.command('fiber')
@n_option
@weight_option
@click.option('--point', default=None, help='Coordinates u(1,1..n),u(2..n,1) as a CSV of p/q.')
@click.option('--t', type=RATIONAL, default=None, help='Use the segment point between u0 and u1.')
@output_options
@domain_errors
def fiber(n, weight, point, t, fmt, out):
    """Topology of the fiber over a point of the polytope."""
    from ..polytope import active_face, condition_j, fiber_type, is_monotone

    w = resolve_weight(n, weight)
    u = _point_source(n, point, t)
    face = active_face(w, u)
    fiber_kind = fiber_type(w, u)
    payload = {
        'n': n,
        'point': u.to_dict(),
        'face': face.to_dict(),
        'condition_j': condition_j(w, u),
        'fiber': fiber_kind.to_dict(),
        'monotone': is_monotone(n, u) if weight is None else None,
    }
    lines = [f"point = {u}", f"face = {face} (dimension {face.dimension})", f"fiber = {fiber_kind}"]
    if weight is None:
        lines.append(f"monotone = {payload['monotone']}")
    current_app.logger.info(f"fiber n={n} point={u}: {fiber_kind}")
    emit(payload, fmt, out, lines, {'fiber': [fiber_kind.to_dict()]})


def _complex_list(text, flag):
    try:
        return [ComplexRational.parse(part) for part in text.split(',')]
    except DomainError as e:
        raise click.BadParameter(str(e), param_hint=flag)


@polytope_blueprint.cli.command('moment-map')
@weight_option
@click.option('--p', 'p', required=True, help='p_1..p_(n+1) as a CSV of "re" or "re:im".')
@click.option('--p-under', 'p_under', required=True, help='The underlined coordinates, same format.')
@output_options
@domain_errors
def moment_map(weight, p, p_under, fmt, out):
    """Evaluate the toric moment map at Plucker coordinates."""
    from ..polytope import degeneration_residual, moment_map_eval, plucker_residual

    pv = PluckerVector(_complex_list(p, "'--p'"), _complex_list(p_under, "'--p-under'"))
    w = resolve_weight(pv.n, weight)
    u = moment_map_eval(pv, w)
    residual = plucker_residual(pv)
    central = degeneration_residual(pv, 0)
    payload = {'n': pv.n, 'plucker': pv.to_dict(), 'point': u.to_dict(),
               'plucker_residual': residual.to_dict(), 'central_residual': central.to_dict()}
    lines = [f"point = {u}", f"Plucker residual = {residual}", f"central fiber residual = {central}"]
    current_app.logger.info(f"moment-map n={pv.n}: {u}")
    emit(payload, fmt, out, lines, {'point': [{'point': str(u)}]})
