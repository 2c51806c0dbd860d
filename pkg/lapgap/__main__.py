import sys

from lapgap.cli import main

sys.exit(main())
