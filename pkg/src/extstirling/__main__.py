import sys

from extstirling.cli import main

sys.exit(main())
