"""Subjects, objects, rights, requests, and history records.

Objects come in three shapes: classical registers, quantum subsystems
(non-empty sets of quantum registers), and attribute cells.  Rights are
plain strings from the system's declared set; ``all`` subsumes every
right on an object it is granted for.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Tuple

ALL = "all"
READ = "read"
WRITE = "write"
FLIP = "flip"
MEASURE = "measure"


def rights_allow(granted, right: str) -> bool:
    """Membership with the `all` supremum rule."""
    return right in granted or ALL in granted


@dataclass(frozen=True)
class ClassicalRef:
    """A classical register."""

    reg: str

    @cached_property
    def repr_str(self) -> str:
        return f"c:{self.reg}"

    @cached_property
    def row_key(self) -> tuple:
        return ("c", self.reg)

    def size(self) -> int:
        return 1


@dataclass(frozen=True)
class SubsystemRef:
    """A non-empty set of quantum registers addressed as one object."""

    regs: frozenset

    def __init__(self, regs: Iterable[str]):
        object.__setattr__(self, "regs", frozenset(regs))
        if not self.regs:
            raise ValueError("quantum subsystem must be nonempty")

    @cached_property
    def sorted_regs(self) -> Tuple[str, ...]:
        return tuple(sorted(self.regs))

    @cached_property
    def repr_str(self) -> str:
        return "q:{" + ",".join(self.sorted_regs) + "}"

    @cached_property
    def row_key(self) -> tuple:
        return ("q", self.sorted_regs)

    def size(self) -> int:
        return len(self.regs)


@dataclass(frozen=True)
class AttrCellRef:
    """One cell of a named attribute, addressed by its key tuple."""

    attr: str
    key: tuple

    def __post_init__(self):
        object.__setattr__(self, "key", tuple(self.key))

    @cached_property
    def repr_str(self) -> str:
        parts = ",".join(_key_part(p) for p in self.key)
        return f"attr:{self.attr}[{parts}]"

    @cached_property
    def row_key(self) -> tuple:
        # Cells of one attribute share an authorization row: the whole
        # attribute is a single guarded pseudo-object.
        return ("attr", self.attr)

    def size(self) -> int:
        return 1


def _key_part(part) -> str:
    if isinstance(part, frozenset):
        return "{" + ",".join(sorted(part)) + "}"
    return str(part)


ObjectRef = ClassicalRef | SubsystemRef | AttrCellRef


@dataclass(frozen=True)
class Request:
    subject: str
    obj: ObjectRef
    right: str

    def length(self) -> int:
        return self.obj.size()


@dataclass(frozen=True)
class HistoryEntry:
    step: int
    request: Request
    authorized: bool

    def line(self) -> str:
        r = self.request
        auth = "true" if self.authorized else "false"
        return (f"step={self.step} subject={r.subject} object={r.obj.repr_str} "
                f"right={r.right} authorized={auth}")


def is_authorized_history(history: Sequence[HistoryEntry]) -> bool:
    """True iff every entry in the history was authorized (vacuously true)."""
    return all(entry.authorized for entry in history)


def export_history(history: Sequence[HistoryEntry]) -> list[str]:
    return [entry.line() for entry in history]


class RequestError(Exception):
    """Malformed request: component not declared in the owning system."""


class EffectError(Exception):
    """Program effect incompatible with its target object."""


class ConfigError(Exception):
    """Invalid system or scenario configuration."""
