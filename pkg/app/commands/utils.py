import functools
from fractions import Fraction

import click
import pandas as pd
from flask import current_app
from flask_babel import gettext as _

from ..models import GZFloerError, GZPoint, VerificationError, Weight, parse_rational


class CommandError(click.ClickException):
    """Domain failure reported to the user with the module's message"""
    exit_code = 2


class RationalParam(click.ParamType):
    name = 'p/q'

    def convert(self, value, param, ctx):
        if isinstance(value, Fraction):
            return value
        try:
            return parse_rational(value)
        except GZFloerError as e:
            self.fail(str(e), param, ctx)


RATIONAL = RationalParam()


# ----------------------------
# Shared options
# ----------------------------
def n_option(f):
    return click.option('--n', 'n', type=int, default=3, show_default=True, help='Flag length n.')(f)


def weight_option(f):
    return click.option('--lambda', 'weight', default=None,
                        help='Weight "a,b,c" with a > b > c; defaults to (n(n-1), 0, -n(n-1)).')(f)


def trunc_option(f):
    return click.option('--trunc', type=RATIONAL, default=None,
                        help='Truncation order p/q of the Novikov field.')(f)


def output_options(f):
    f = click.option('--out', 'out', type=click.Path(dir_okay=False), default=None,
                     help='Write the report to a file (.json, .xlsx or text).')(f)
    f = click.option('--format', 'fmt', type=click.Choice(['json', 'text']), default='text',
                     show_default=True)(f)
    return f


def domain_errors(f):
    """Turn module errors into exit codes: failed verification 1, everything else 2."""
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except VerificationError as e:
            current_app.logger.error(f"{click.get_current_context().info_name}: {e}")
            click.echo(_('Verification failed: {}').format(str(e)), err=True)
            click.get_current_context().exit(1)
        except GZFloerError as e:
            current_app.logger.error(f"{click.get_current_context().info_name}: {e}")
            raise CommandError(str(e))
    return wrapper


# ----------------------------
# Flag resolution
# ----------------------------
def resolve_weight(n, text):
    return Weight.monotone(n) if text is None else Weight.from_csv(text)


def resolve_point(n, text):
    return GZPoint.from_csv(text, n)


def resolve_trunc(n, t, flag):
    """--trunc, then GZ_FLOER_TRUNC, then the level-based default."""
    from ..potential import default_trunc

    if flag is not None:
        return flag
    configured = current_app.config.get('DEFAULT_TRUNC')
    if configured:
        return parse_rational(configured)
    return default_trunc(n, t, current_app.config['TRUNC_LEVELS'])


def parse_t_list(text):
    values = [part for part in (text or '').split(',') if part.strip()]
    if not values:
        raise click.BadParameter(_('the t-list is empty'), param_hint="'--t-list'")
    try:
        return [parse_rational(part) for part in values]
    except GZFloerError as e:
        raise click.BadParameter(str(e), param_hint="'--t-list'")


# ----------------------------
# Report emission
# ----------------------------
def render_table(rows):
    if not rows:
        return _('(none)')
    return pd.DataFrame(rows).to_string(index=False)


def render_text(lines, tables):
    blocks = ['\n'.join(lines)] if lines else []
    for title, rows in tables.items():
        blocks.append(f"{title}\n{render_table(rows)}")
    return '\n\n'.join(blocks)


def render_json(payload):
    return current_app.json.dumps(payload, indent=current_app.config['JSON_INDENT'])


def emit(payload, fmt, out, lines=(), tables=None):
    """Print or write a report: JSON from payload, text from lines and tables."""
    tables = tables or {}
    if out and out.endswith('.xlsx'):
        with pd.ExcelWriter(out, engine='openpyxl') as writer:
            for title, rows in tables.items():
                pd.DataFrame(rows).to_excel(writer, sheet_name=title[:31], index=False)
        click.echo(_('Report written to {}').format(out))
        return
    if fmt == 'json' or (out and out.endswith('.json')):
        rendered = render_json(payload)
    else:
        rendered = render_text(list(lines), tables)
    if out:
        with open(out, 'w', encoding='utf-8') as handle:
            handle.write(rendered + '\n')
        click.echo(_('Report written to {}').format(out))
    else:
        click.echo(rendered)


def finish(passed, what):
    if not passed:
        current_app.logger.warning(f"{what}: verification failed")
        click.get_current_context().exit(1)
