"""Exception types shared by the lexicon, the parsers, the CLI and the service."""

from __future__ import annotations


class IconParseError(Exception):
    """Base class for all errors raised by this package."""


class LexiconError(IconParseError):
    """Malformed lexicon document.  ``path`` points at the offending node."""

    def __init__(self, message: str, path: str | None = None):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)


class UnknownIconError(IconParseError):
    """A lexicon lookup for an id that is not declared."""

    def __init__(self, icon_id: str):
        self.icon_id = icon_id
        super().__init__(f"unknown icon: {icon_id!r}")


class UnknownInstanceError(IconParseError):
    """An edit referenced sequence instances that are not present."""

    def __init__(self, instance_ids):
        self.instance_ids = tuple(instance_ids)
        listed = ", ".join(str(iid) for iid in self.instance_ids)
        super().__init__(f"unknown sequence instances: {listed}")


class SequenceTooLongError(IconParseError):
    """The sequence would exceed the configured hard length cap."""

    def __init__(self, length: int, cap: int):
        self.length = length
        self.cap = cap
        super().__init__(f"sequence too long: {length} icons exceeds the cap of {cap}")


class ParseStateError(IconParseError):
    """The operation needs a parse that has not happened yet."""


class WorkBudgetError(IconParseError):
    """Predicted recursive work exceeds the configured safety budget."""

    def __init__(self, predicted: int, budget: int):
        self.predicted = predicted
        self.budget = budget
        super().__init__(
            f"predicted work {predicted} exceeds the recursive engine budget {budget}"
        )
