"""
Running the verification suites
===============================

Each suite checks closed-form algebra against independent numerics and
returns Check records with a residual and timing.
"""
from hermite_coords.verify import SUITES, run_suite

for name in SUITES:
    for check in run_suite(name):
        print(check.line())
