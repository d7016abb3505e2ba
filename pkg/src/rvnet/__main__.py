"""Allow running as: python -m rvnet [command]"""
from rvnet.cli import main

main()
