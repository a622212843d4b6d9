"""Toolchain for splitting smart-contract workflow FSMs across the chain boundary.

The pipeline: parse a workflow model, discover single-entry/single-exit
regions, classify their interaction pattern, estimate the gas trade-off of
moving each region off chain, fold accepted regions into a hierarchical
machine, generate the bridge artifacts, and replay traces against a mock
ledger to check the arithmetic.
"""

__version__ = "0.1.0"
