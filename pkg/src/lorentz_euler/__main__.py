import sys

from lorentz_euler.cli import main

if __name__ == "__main__":
    sys.exit(main())
