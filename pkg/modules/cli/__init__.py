# modules/cli/__init__.py

from modules.cli.main import build_parser, main, run
from modules.cli.report import RunReport
