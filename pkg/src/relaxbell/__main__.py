import sys

from relaxbell.cli import main

sys.exit(main())
