from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import TYPE_CHECKING, Callable, ClassVar, Iterator

from ..core.clauses import Literal
from ..core.substitution import IDENTITY, Substitution
from ..core.terms import App, Hedge

if TYPE_CHECKING:
    from ..engine.solver import Derivation


@dataclass(frozen=True, slots=True)
class Commit:
    """
    Drops the alternatives the producing step has not tried yet.

    A hard commit also drops every choice point left by the literals before
    it, so only their first result survives. A soft commit keeps them.
    """
    soft: bool = False

    def __str__(self) -> str:
        return "commit(soft)" if self.soft else "commit"


@dataclass(frozen=True, slots=True)
class Effect:
    """Calls ``action`` with the instantiated ``subject`` and succeeds once."""
    action: Callable[[Hedge], None]
    subject: Hedge

    def __str__(self) -> str:
        return f"effect {getattr(self.action, '__name__', 'action')}"


@dataclass(frozen=True, slots=True)
class Step:
    """One alternative of a native strategy: literals that replace the selected one."""
    literals: tuple[Literal | Commit | Effect, ...]
    bindings: Substitution = IDENTITY


class Strategy(ABC):
    """
    A strategy the engine evaluates natively instead of looking up clauses.

    ``expand`` receives the ground strategy term and input hedge and the
    caller's output pattern; every step it yields is one alternative, tried in
    the order produced.
    """
    name: ClassVar[str]
    min_arity: ClassVar[int] = 0
    max_arity: ClassVar[int | None] = None

    @classmethod
    def accepts(cls, arity: int) -> bool:
        return arity >= cls.min_arity and (cls.max_arity is None or arity <= cls.max_arity)

    @abstractmethod
    def expand(self, run: Derivation, strategy: App, lhs: Hedge, rhs: Hedge) -> Iterator[Step]: ...

    def __repr__(self) -> str:
        return f"<native {self.name}>"
