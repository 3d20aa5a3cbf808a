#!/usr/bin/env python3
"""
Launcher for the leibniz_lab command line.
Equivalent to the installed ``leibniz-lab`` script.
"""
from modules.cli.main import main

if __name__ == "__main__":
    main()
