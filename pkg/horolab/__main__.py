"""Run the horolab command line: python -m horolab."""

import sys

from horolab.cli.app import main

if __name__ == "__main__":
    sys.exit(main())
