from flask.cli import FlaskGroup

from app import create_app

# Command line entry point: python run.py <command> [options]
cli = FlaskGroup(create_app=create_app, add_default_commands=False, load_dotenv=False)

if __name__ == "__main__":
    cli()
