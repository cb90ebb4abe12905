#!/usr/bin/env python3
"""
Startup script for the nzflows command line.
"""

import sys
from pathlib import Path

# Add the current directory to Python path so imports work
current_dir = Path(__file__).parent
sys.path.insert(0, str(current_dir))

from commands.cli import main  # noqa: E402

if __name__ == "__main__":
    sys.exit(main())
