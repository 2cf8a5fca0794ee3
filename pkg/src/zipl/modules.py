"""Predicate-based module system.

Every module owns a predicate table, a local operator table, an export
list and an ordered list of import modules.  Name resolution (for
predicates and operators alike) is depth-first along the import list.
The default wiring imports every user-defined module from `user`,
which imports from `system`; `system` carries the built-ins and the
standard operators.
"""

from __future__ import annotations

import threading

from . import errors, ops
from .errors import PrologError
from .terms import Atom, Struct

# Predicate supervisor states
VIRGIN = "S_VIRGIN"
DEFINED = "S_DEFINED"
UNDEF = "S_UNDEF"
FOREIGN = "S_FOREIGN"


class Predicate:
    __slots__ = (
        "name",
        "arity",
        "module",
        "clauses",
        "supervisor",
        "dynamic",
        "meta_spec",
        "protected",
        "handler",
        "nondet",
        "special",
        "undef_warned",
    )

    def __init__(self, name, arity, module):
        self.name = name
        self.arity = arity
        self.module = module
        self.clauses = []
        self.supervisor = VIRGIN
        self.dynamic = False
        self.meta_spec = None
        self.protected = False
        self.handler = None
        self.nondet = False
        self.special = None
        self.undef_warned = False

    @property
    def indicator(self):
        return "%s/%d" % (self.name, self.arity)

    def qualified(self):
        return "%s:%s" % (self.module.name, self.indicator)

    def is_defined(self):
        return (
            self.supervisor == FOREIGN
            or self.dynamic
            or bool(self.clauses)
            or self.special is not None
        )

    def __repr__(self):
        return "<pred %s %s>" % (self.qualified(), self.supervisor)


class Module:
    __slots__ = (
        "name",
        "predicates",
        "exports",
        "op_exports",
        "operators",
        "import_modules",
        "source",
    )

    def __init__(self, name):
        self.name = name
        self.predicates = {}
        self.exports = set()  # (name, arity)
        self.op_exports = []  # (priority, type, name)
        self.operators = ops.OpTable()
        self.import_modules = []
        self.source = None  # (file, line) of the module directive

    def __repr__(self):
        return "<module %s>" % self.name

    def _chain(self):
        """Modules in resolution order: self, then imports depth-first."""
        seen = set()
        order = []
        stack = [self]
        while stack:
            m = stack.pop(0)
            if m.name in seen:
                continue
            seen.add(m.name)
            order.append(m)
            stack = list(m.import_modules) + stack
        return order

    def resolve_pred(self, name, arity):
        """Find a predicate along the import chain; None when absent."""
        key = (name, arity)
        for m in self._chain():
            p = m.predicates.get(key)
            if p is not None and (m is self or p.is_defined()):
                return p
        return None

    def lookup(self, name, cls):
        """Operator resolution along the same chain as predicates."""
        for m in self._chain():
            d = m.operators.lookup(name, cls)
            if d is not None:
                return d
        return None

    def local_pred(self, name, arity, create=False):
        key = (name, arity)
        p = self.predicates.get(key)
        if p is None and create:
            p = Predicate(name, arity, self)
            self.predicates[key] = p
        return p

    def visible_predicates(self):
        """(key, pred) pairs visible from this module, nearest first."""
        seen = set()
        out = []
        for m in self._chain():
            for key, p in m.predicates.items():
                if key in seen:
                    continue
                seen.add(key)
                out.append((key, p))
        return out


class Store:
    """The shared program store: modules plus load bookkeeping.

    Reads may run concurrently from several engines; mutations take
    the store lock (loads and asserts are serialized).
    """

    def __init__(self):
        self.lock = threading.RLock()
        self.modules = {}
        self.system = self._new_raw("system")
        self.system.operators = ops.standard_table()
        self.user = self._new_raw("user")
        self.user.import_modules.append(self.system)
        self.autoload_index = {}  # (name, arity) -> loader spec
        self.loaded_files = {}  # path -> LoadedFileRecord
        self.library_dirs = []
        self.native_libraries = {}  # name -> install fn(store)
        self.loaded_native = set()

    def _new_raw(self, name):
        m = Module(name)
        self.modules[name] = m
        return m

    def module(self, name, create=True):
        m = self.modules.get(name)
        if m is None and create:
            m = self._new_raw(name)
            m.import_modules.append(self.user)
        return m

    def declare_module(self, name, exports, op_exports=(), source=None):
        """Create or refresh a module with the given export lists."""
        if name == "system":
            raise PrologError(
                errors.permission_error("modify", "module", Atom(name))
            )
        with self.lock:
            m = self.module(name)
            m.exports = set(exports)
            m.op_exports = list(op_exports)
            for p, t, n in op_exports:
                m.operators.add(p, t, n)
            if source is not None:
                m.source = source
            return m

    def import_pred(self, into, from_module, name, arity):
        key = (name, arity)
        src = from_module.predicates.get(key)
        if src is None:
            src = from_module.resolve_pred(name, arity)
        if src is None:
            raise PrologError(
                errors.existence_error(
                    "procedure",
                    Struct(
                        ":",
                        [Atom(from_module.name),
                         Struct("/", [Atom(name), arity])],
                    ),
                )
            )
        with self.lock:
            existing = into.predicates.get(key)
            if existing is not None and existing is not src:
                if existing.module is into and existing.is_defined():
                    raise PrologError(
                        errors.permission_error(
                            "import_into",
                            "procedure",
                            Struct("/", [Atom(name), arity]),
                        )
                    )
                if existing.module is not into and existing.is_defined():
                    # Already imported from elsewhere: a second source
                    # for the same predicate is an error.
                    raise PrologError(
                        errors.permission_error(
                            "import_into",
                            "procedure",
                            Struct("/", [Atom(name), arity]),
                        )
                    )
            into.predicates[key] = src

    def import_all(self, into, from_module):
        for name, arity in sorted(from_module.exports):
            self.import_pred(into, from_module, name, arity)
        for p, t, n in from_module.op_exports:
            into.operators.add(p, t, n)

    def add_import_module(self, module, parent, position="end"):
        if self._would_cycle(module, parent):
            raise PrologError(
                errors.permission_error(
                    "add_import_module", "module", Atom(parent.name)
                )
            )
        with self.lock:
            if parent in module.import_modules:
                return
            if position == "start":
                module.import_modules.insert(0, parent)
            else:
                module.import_modules.append(parent)

    def _would_cycle(self, module, parent):
        stack = [parent]
        seen = set()
        while stack:
            m = stack.pop()
            if m is module:
                return True
            if m.name in seen:
                continue
            seen.add(m.name)
            stack.extend(m.import_modules)
        return False

    def dangling_exports(self, module):
        out = []
        for name, arity in sorted(module.exports):
            p = module.predicates.get((name, arity))
            if p is None or not p.is_defined():
                out.append((name, arity))
        return out


def parse_meta_spec(args):
    """Validate a meta_predicate argument list into a spec tuple."""
    spec = []
    for a in args:
        if isinstance(a, int) and 0 <= a <= 9:
            spec.append(a)
        elif isinstance(a, Atom) and a.name in (":", "?", "+", "-"):
            spec.append(a.name)
        else:
            raise PrologError(errors.domain_error("meta_argument_specifier", a))
    return tuple(spec)
