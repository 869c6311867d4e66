import sys

from repi.cli.cli import main

sys.exit(main())
