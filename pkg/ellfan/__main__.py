import sys

from ellfan.cli import main

sys.exit(main())
