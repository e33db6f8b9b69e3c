import sys

from freeindex.cli import main

sys.exit(main())
