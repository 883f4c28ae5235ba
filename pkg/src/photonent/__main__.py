# pylint: disable=missing-module-docstring
import sys

from photonent.cli import main

sys.exit(main())
