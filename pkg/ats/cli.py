"""
Project:     Sorani ATS
Name:        ats/cli.py
Author:      Sorani ATS contributors
Date:        2025-09-02
Description: The `ats` console script
"""

import os
import sys


def main(argv: list[str] | None = None):
    """Run an `ats` subcommand.

    Subcommands are Django management commands. The CLI spells them with
    hyphens (`train-segmenter`), the command modules with underscores.
    """

    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "conf.settings")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc

    argv = list(sys.argv if argv is None else argv)
    if len(argv) > 1 and not argv[1].startswith("-"):
        argv[1] = argv[1].replace("-", "_")

    execute_from_command_line(argv)


if __name__ == "__main__":
    main()
