"""
This work is licensed under CC BY-NC 4.0 International.

This document is part of the KiteCC central-configuration toolkit.
"""

from kite_cli import cli

if __name__ == "__main__":
    cli()
