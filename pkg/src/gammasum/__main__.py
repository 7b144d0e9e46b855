"""Allow `python -m gammasum`."""

from .cli import main

main()
