import pytest

from app import create_app


@pytest.fixture
def app():
    return create_app({'TESTING': True, 'DEFAULT_TRUNC': None, 'TRUNC_LEVELS': 4, 'MAX_ORACLE_N': 6})


@pytest.fixture
def runner(app):
    return app.test_cli_runner()
