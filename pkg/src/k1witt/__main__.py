import sys

from k1witt.cli import main

sys.exit(main())
