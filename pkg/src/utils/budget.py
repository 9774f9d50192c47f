from __future__ import annotations

import time
from typing import Optional

from src.utils.config import get_budget_config
from src.utils.errors import BudgetExceededError


class Budget:
    """状態数と経過時間の上限。tick()で消費し、超えたらBudgetExceededError"""

    def __init__(self, max_states: Optional[int] = None, max_seconds: Optional[float] = None):
        self.max_states = max_states
        self.max_seconds = max_seconds
        self.states = 0
        self.start = time.monotonic()

    @classmethod
    def from_config(cls, max_states: Optional[int] = None, max_seconds: Optional[float] = None) -> "Budget":
        config = get_budget_config()
        return cls(
            max_states=max_states if max_states is not None else config["max_states"],
            max_seconds=max_seconds if max_seconds is not None else config["max_seconds"],
        )

    @classmethod
    def unlimited(cls) -> "Budget":
        return cls(None, None)

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.start

    def tick(self, count: int = 1) -> None:
        self.states += count
        if self.max_states is not None and self.states > self.max_states:
            raise BudgetExceededError(f"状態数の上限を超えた: states={self.states}, max={self.max_states}")
        # 時刻の取得は間引く
        if self.max_seconds is not None and self.states % 1024 < count and self.elapsed > self.max_seconds:
            raise BudgetExceededError(f"実行時間の上限を超えた: elapsed={self.elapsed:.1f}s, max={self.max_seconds}s")

    def check_time(self) -> None:
        if self.max_seconds is not None and self.elapsed > self.max_seconds:
            raise BudgetExceededError(f"実行時間の上限を超えた: elapsed={self.elapsed:.1f}s, max={self.max_seconds}s")
