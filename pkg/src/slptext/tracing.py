"""Optional per-query instrumentation.

Both encodings accept a QueryTrace; when given, queries record how the
answer was produced so tests can assert the structural properties
(descent length bounded by grammar height, every size handed to the
hash really is an expansion size, amortized frame pushes).  The hot
paths skip all of it when no trace is passed.
"""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class QueryTrace:
    steps: int = 0                 # descent loop iterations
    pushes: int = 0                # pending-subtree frames pushed
    start_symbols_touched: int = 0
    start_symbol: int = 0          # 1-based index into the start rule
    start_offset: int = 0          # character offset inside that symbol
    start_size: int = 0            # that symbol's expansion size
    queried_sizes: list = field(default_factory=list)

    def reset(self) -> None:
        self.steps = 0
        self.pushes = 0
        self.start_symbols_touched = 0
        self.start_symbol = 0
        self.start_offset = 0
        self.start_size = 0
        self.queried_sizes.clear()
