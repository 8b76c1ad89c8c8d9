"""Allow running as `python -m saw_lab`."""

from saw_lab.cli import main

main()
