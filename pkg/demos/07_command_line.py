"""
The command-line harness
========================

Every capability is also reachable as ``rssroute <command>``; here the
same entry point is called in-process.
"""

from rssroute.cli import main
from rssroute.formats import data_path

main(["cost", str(data_path("E-n22-k4.txt")), str(data_path("opt-E-n22-k4.txt"))])
main(["sweep", str(data_path("E-n22-k4.txt")), "--from", "60", "--to", "90", "--step", "10"])
main(["batch", str(data_path("benchmarks_tight.csv"))])
