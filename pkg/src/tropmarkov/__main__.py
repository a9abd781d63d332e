import sys

from .core.cli import main

# Entry point for `python -m tropmarkov`
if __name__ == "__main__":
    sys.exit(main())
