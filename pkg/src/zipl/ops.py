"""Operator definitions and tables.

An operator table maps (name, fixity-class) to (priority, type).  Each
module owns one local table; reader and writer see operators through a
resolver object exposing lookup(name, cls) that walks the module's
import chain.
"""

from __future__ import annotations

INFIX = "infix"
PREFIX = "prefix"
POSTFIX = "postfix"

_CLASS_OF_TYPE = {
    "xfx": INFIX,
    "xfy": INFIX,
    "yfx": INFIX,
    "fy": PREFIX,
    "fx": PREFIX,
    "xf": POSTFIX,
    "yf": POSTFIX,
}

OP_TYPES = tuple(_CLASS_OF_TYPE)


def fixity_class(op_type):
    return _CLASS_OF_TYPE[op_type]


class OpTable:
    """One module's local operator definitions."""

    def __init__(self, defs=()):
        self._by_key = {}
        for p, t, n in defs:
            self.add(p, t, n)

    def add(self, priority, op_type, name):
        if op_type not in _CLASS_OF_TYPE:
            raise ValueError("bad operator type %r" % (op_type,))
        if not 0 <= priority <= 1200:
            raise ValueError("operator priority out of range: %r" % (priority,))
        key = (name, _CLASS_OF_TYPE[op_type])
        if priority == 0:
            self._by_key.pop(key, None)
        else:
            self._by_key[key] = (priority, op_type)

    def lookup(self, name, cls):
        return self._by_key.get((name, cls))

    def items(self):
        return [
            (p, t, name) for (name, _cls), (p, t) in sorted(self._by_key.items())
        ]

    def copy(self):
        t = OpTable()
        t._by_key = dict(self._by_key)
        return t


class StaticOps:
    """Standalone resolver over a single table (no module chain)."""

    def __init__(self, table):
        self.table = table

    def lookup(self, name, cls):
        return self.table.lookup(name, cls)


STANDARD_OPS = [
    (1200, "xfx", ":-"),
    (1200, "xfx", "-->"),
    (1200, "fx", ":-"),
    (1200, "fx", "?-"),
    (1150, "fx", "dynamic"),
    (1150, "fx", "discontiguous"),
    (1150, "fx", "meta_predicate"),
    (1100, "xfy", ";"),
    (1050, "xfy", "->"),
    (1000, "xfy", ","),
    (990, "xfx", ":="),
    (900, "fy", "\\+"),
    (700, "xfx", "="),
    (700, "xfx", "\\="),
    (700, "xfx", "=="),
    (700, "xfx", "\\=="),
    (700, "xfx", "@<"),
    (700, "xfx", "@>"),
    (700, "xfx", "@=<"),
    (700, "xfx", "@>="),
    (700, "xfx", "=.."),
    (700, "xfx", "is"),
    (700, "xfx", "=:="),
    (700, "xfx", "=\\="),
    (700, "xfx", "<"),
    (700, "xfx", ">"),
    (700, "xfx", "=<"),
    (700, "xfx", ">="),
    (600, "xfy", ":"),
    (500, "yfx", "+"),
    (500, "yfx", "-"),
    (500, "yfx", "/\\"),
    (500, "yfx", "\\/"),
    (500, "yfx", "xor"),
    (400, "yfx", "*"),
    (400, "yfx", "/"),
    (400, "yfx", "//"),
    (400, "yfx", "mod"),
    (400, "yfx", "rem"),
    (400, "yfx", "div"),
    (400, "yfx", "<<"),
    (400, "yfx", ">>"),
    (200, "xfx", "**"),
    (200, "xfy", "^"),
    (200, "fy", "-"),
    (200, "fy", "+"),
    (200, "fy", "\\"),
    (1, "fx", "$"),
]


def standard_table():
    return OpTable(STANDARD_OPS)


DEFAULT_OPS = StaticOps(standard_table())
