from typing import Protocol

from ..core.terms import Hedge


class InteractionChannel(Protocol):
    """Where the ``interactive`` strategy reads its instructions from."""
    def read_strategy(self, current: Hedge) -> str | None: ...
    def show(self, current: Hedge) -> None: ...
    def notify(self, message: str) -> None: ...
