import sys

from apps.cei_cli.cli import main

sys.exit(main())
