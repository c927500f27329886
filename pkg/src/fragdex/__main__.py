"""Allow running fragdex as a module: python -m fragdex"""

import sys
from .main import main

if __name__ == "__main__":
    sys.exit(main())
