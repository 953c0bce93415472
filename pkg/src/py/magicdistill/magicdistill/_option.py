from __future__ import annotations

import os
from collections.abc import Iterator
from contextlib import contextmanager
from logging import getLogger
from typing import Any, Callable, Generic, TypeVar

_O = TypeVar("_O")
logger = getLogger(__name__)

_UNSET: Any = object()


def _identity(value: Any) -> Any:
    return value


class Option(Generic[_O]):
    """A setting read from the environment variable of the same name

    Child options follow their parent until they are set explicitly, which is how
    the debug mode switches on the individual checks.
    """

    def __init__(
        self,
        name: str,
        default: _O = _UNSET,
        mutable: bool = True,
        parent: Option[_O] | None = None,
        validator: Callable[[Any], _O] = _identity,
    ) -> None:
        self._name = name
        self._mutable = mutable
        self._validator = validator
        self._handlers: list[Callable[[_O], None]] = []
        self._value: _O = _UNSET
        raw = os.environ.get(name)
        if raw is not None:
            self._value = self._validate(raw)

        if parent is None:
            if default is _UNSET:
                msg = "Must specify either a default or a parent option"
                raise TypeError(msg)
            self._default = default
        else:
            if not (self._mutable and parent.mutable):
                msg = "Parent and child options must be mutable"
                raise TypeError(msg)
            self._default = parent.default
            parent.subscribe(self._on_parent_change)

        logger.debug("%s=%r", name, self.current)

    @property
    def name(self) -> str:
        return self._name

    @property
    def mutable(self) -> bool:
        """False for options fixed once the environment has been read"""
        return self._mutable

    @property
    def default(self) -> _O:
        """The parent's value for child options"""
        return self._default

    @property
    def current(self) -> _O:
        return self._default if self._value is _UNSET else self._value

    @current.setter
    def current(self, new: Any) -> None:
        self.set_current(new)

    @current.deleter
    def current(self) -> None:
        self.unset()

    def is_set(self) -> bool:
        return self._value is not _UNSET

    def set_current(self, new: Any) -> None:
        """Validate and store a new value, notifying subscribers on change"""
        value = self._validate(new)
        self._replace(value)
        logger.debug("%s=%r", self._name, value)

    def unset(self) -> None:
        """Drop the explicit value so the default applies again"""
        self._replace(_UNSET)

    def reload(self) -> None:
        """Reload the value from the environment, falling back to the default"""
        raw = os.environ.get(self._name)
        if raw is None:
            self.unset()
        else:
            self.set_current(raw)

    def subscribe(self, handler: Callable[[_O], None]) -> Callable[[_O], None]:
        """Call ``handler`` now and whenever the value changes"""
        if not self._mutable:
            msg = "Immutable options cannot be subscribed to."
            raise TypeError(msg)
        self._handlers.append(handler)
        handler(self.current)
        return handler

    @contextmanager
    def override(self, value: Any) -> Iterator[_O]:
        """Temporarily set the option, restoring the previous state on exit"""
        saved = self._value
        self.set_current(value)
        try:
            yield self.current
        finally:
            self._replace(saved)

    def _replace(self, value: _O) -> None:
        if not self._mutable:
            msg = f"{self} cannot be modified after initial load"
            raise TypeError(msg)
        before = self.current
        self._value = value
        self._changed(before)

    def _on_parent_change(self, value: _O) -> None:
        before = self.current
        self._default = value
        self._changed(before)

    def _changed(self, before: _O) -> None:
        after = self.current
        if after == before:
            return
        for handler in self._handlers:
            handler(after)

    def _validate(self, value: Any) -> _O:
        try:
            return self._validator(value)
        except ValueError as error:
            msg = f"Invalid value for {self._name}: {value!r}"
            raise ValueError(msg) from error

    def __repr__(self) -> str:
        return f"Option({self._name}={self.current!r})"
