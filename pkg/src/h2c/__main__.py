import sys

from h2c.cli import main

sys.exit(main())
