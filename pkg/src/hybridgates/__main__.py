import sys

from hybridgates.cli import main

sys.exit(main())
