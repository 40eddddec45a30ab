import sys

from germkit.cli import main

sys.exit(main())
