import sys

from src.roundspec.bench.cli import main

if __name__ == "__main__":
    sys.exit(main())
