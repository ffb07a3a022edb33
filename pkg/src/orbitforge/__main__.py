import sys

from orbitforge.cli import main

sys.exit(main())
