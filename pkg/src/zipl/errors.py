"""Exception types and ISO-style error term constructors.

Runtime errors travel as Prolog terms wrapped in PrologError; the helper
constructors build the conventional error(Formal, Context) shapes.
"""

from __future__ import annotations


class PrologError(Exception):
    """An uncaught Prolog exception carrying the thrown term (the ball)."""

    def __init__(self, term):
        self.term = term
        super().__init__(term)

    def __str__(self):
        from .writer import term_text

        return term_text(self.term, quoted=True)


class Halt(Exception):
    """Raised by halt/0 and halt/1 to terminate the process cleanly."""

    def __init__(self, status=0):
        self.status = status
        super().__init__(status)


class ProtocolError(Exception):
    """Host-level misuse of the engine API (non-LIFO foreign frames etc.)."""


def _err(formal, context=None):
    from .terms import Atom, Struct

    ctx = context if context is not None else Atom("?")
    return Struct("error", [formal, ctx])


def type_error(expected, culprit, context=None):
    from .terms import Atom, Struct

    return _err(Struct("type_error", [Atom(expected), culprit]), context)


def domain_error(domain, culprit, context=None):
    from .terms import Atom, Struct

    return _err(Struct("domain_error", [Atom(domain), culprit]), context)


def instantiation_error(context=None):
    from .terms import Atom

    return _err(Atom("instantiation_error"), context)


def uninstantiation_error(culprit, context=None):
    from .terms import Struct

    return _err(Struct("uninstantiation_error", [culprit]), context)


def existence_error(kind, culprit, context=None):
    from .terms import Atom, Struct

    return _err(Struct("existence_error", [Atom(kind), culprit]), context)


def permission_error(action, kind, culprit, context=None):
    from .terms import Atom, Struct

    return _err(
        Struct("permission_error", [Atom(action), Atom(kind), culprit]), context
    )


def evaluation_error(what, context=None):
    from .terms import Atom, Struct

    return _err(Struct("evaluation_error", [Atom(what)]), context)


def representation_error(what, context=None):
    from .terms import Atom, Struct

    return _err(Struct("representation_error", [Atom(what)]), context)


def occurs_check_error(var, term, context=None):
    from .terms import Struct

    return _err(Struct("occurs_check", [var, term]), context)


def resource_error(what, context=None):
    from .terms import Atom, Struct

    return _err(Struct("resource_error", [Atom(what)]), context)


def syntax_error_term(message, line, column):
    from .terms import Atom, Struct

    return _err(
        Struct("syntax_error", [Atom(message)]),
        Struct("position", [line, column]),
    )


def assertion_failed(goal):
    from .terms import Struct

    return _err(Struct("assertion_failed", [goal]))
