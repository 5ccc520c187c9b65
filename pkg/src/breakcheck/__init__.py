"""breakcheck: measures visible web breakage caused by content blockers.

Compares control (unblocked) and treatment (blocked) browser sessions across
five breakage categories, on top of a deterministic record/replay harness so
results reproduce bit-for-bit on a local fixture corpus.
"""

__version__ = "0.1.0"
