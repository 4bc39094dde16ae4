"""
This allows calling the boxcount cli via ``python -m``

>>> python -m boxcount verify mcmahon --order 6
"""

import sys
from boxcount.cli import main

if __name__ == "__main__":
    sys.argv[0] = "boxcount"
    main()
