#!/usr/bin/env python
"""Django's command-line utility; the same entry point as the `ats` script."""

from ats.cli import main

if __name__ == "__main__":
    main()
