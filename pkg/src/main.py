import sys

from hypercsi.cli import main

if __name__ == "__main__":
    sys.exit(main())
