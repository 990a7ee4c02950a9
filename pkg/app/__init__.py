import os
from flask import Flask, current_app
from flask_babel import Babel


def get_locale():
    return current_app.config['BABEL_DEFAULT_LOCALE']


def create_app(config_overrides=None):
    app = Flask(__name__)

    # Load configurations
    app.config['DEFAULT_TRUNC'] = os.getenv('GZ_FLOER_TRUNC')
    app.config['TRUNC_LEVELS'] = int(os.getenv('GZ_FLOER_TRUNC_LEVELS', '4'))
    app.config['MAX_ORACLE_N'] = int(os.getenv('GZ_FLOER_MAX_ORACLE_N', '6'))
    app.config['JSON_INDENT'] = 2

    app.config['BABEL_DEFAULT_LOCALE'] = os.getenv('GZ_FLOER_LOCALE', 'en')
    app.config['BABEL_TRANSLATION_DIRECTORIES'] = '../translations'

    if config_overrides:
        app.config.update(config_overrides)

    app.logger.setLevel(os.getenv('GZ_FLOER_LOG_LEVEL', 'WARNING').upper())

    Babel(app, locale_selector=get_locale)

    # Register command blueprints
    from .commands import polytope_blueprint, strata_blueprint, potential_blueprint
    app.register_blueprint(polytope_blueprint)
    app.register_blueprint(strata_blueprint)
    app.register_blueprint(potential_blueprint)

    return app
