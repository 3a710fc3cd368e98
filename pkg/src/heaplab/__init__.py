from .cli import app
