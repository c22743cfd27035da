import sys

from lkapprox.cli import main

sys.exit(main())
