"""Term representation and the core term algorithms.

A term is one of:
    Var     -- mutable binding cell, optionally carrying attributes
    Atom    -- interned constant with an unbounded code-point name
    int     -- native arbitrary-precision integer
    float   -- 64-bit float
    str     -- a Prolog string (distinct from atoms and code lists)
    Struct  -- compound with arity >= 1; args list is mutable (setarg)

Terms may be rational trees: a Struct argument may reach the Struct
itself.  Every traversal in this module carries a visited set (or a
descent stack) so cyclic input terminates.

Bindings are recorded on a caller-supplied trail list.  Trail entries:
    Var                      -- variable binding; undo resets .ref
    ('a', var, mod, had, old)-- attribute update on a variable
    ('c', struct, i, old)    -- value cell overwrite (two-cell entry)
    ('g', table, key, had, old) -- backtrackable global-variable update
"""

from __future__ import annotations

from . import errors

_var_counter = 0


class Var:
    __slots__ = ("ref", "attrs", "vid")

    def __init__(self):
        global _var_counter
        _var_counter += 1
        self.vid = _var_counter
        self.ref = None
        self.attrs = None  # None | dict module-name -> attribute term

    def __repr__(self):
        return "_G%d" % self.vid


class Atom:
    """Interned atom; identical names share one instance."""

    __slots__ = ("name",)
    _table: dict = {}

    def __new__(cls, name):
        a = cls._table.get(name)
        if a is None:
            a = object.__new__(cls)
            object.__setattr__(a, "name", name)
            cls._table[name] = a
        return a

    def __setattr__(self, *_):
        raise AttributeError("atoms are immutable")

    def __repr__(self):
        return self.name

    def __hash__(self):
        return hash(self.name)


class Struct:
    __slots__ = ("name", "args")

    def __init__(self, name, args):
        self.name = name
        self.args = list(args)

    @property
    def arity(self):
        return len(self.args)

    def __repr__(self):
        from .writer import term_text

        return term_text(self, quoted=True, max_depth=8)


NIL = Atom("[]")
TRUE = Atom("true")


def deref(t):
    while type(t) is Var:
        r = t.ref
        if r is None:
            return t
        t = r
    return t


def bind(var, value, trail):
    var.ref = value
    trail.append(var)


def undo_to(trail, mark):
    """Undo trail entries down to mark, newest first."""
    while len(trail) > mark:
        e = trail.pop()
        if type(e) is Var:
            e.ref = None
        else:
            tag = e[0]
            if tag == "c":
                _, s, i, old = e
                s.args[i] = old
            elif tag == "a":
                _, v, mod, had, old = e
                if had:
                    if v.attrs is None:
                        v.attrs = {}
                    v.attrs[mod] = old
                elif v.attrs is not None:
                    v.attrs.pop(mod, None)
            elif tag == "g":
                _, table, key, had, old = e
                if had:
                    table[key] = old
                else:
                    table.pop(key, None)


def occurs_in(var, term):
    """True when var occurs inside term; safe on cyclic terms."""
    seen = set()
    stack = [term]
    while stack:
        t = deref(stack.pop())
        if t is var:
            return True
        if type(t) is Struct:
            if id(t) in seen:
                continue
            seen.add(id(t))
            stack.extend(t.args)
    return False


def unify(a, b, trail, mode="default", wake=None):
    """Unify a and b, recording bindings on trail.

    mode selects the occurs-check behavior: 'default' admits rational
    trees, 'fail' rejects them, 'error' raises.  wake, when given, is a
    list receiving (var, attr-items, value) for every attributed
    variable bound during this call.

    On failure the caller is responsible for undoing the trail; the
    entries recorded up to the failure point are left in place so one
    undo restores everything.
    """
    stack = [(a, b)]
    memo = None
    while stack:
        x, y = stack.pop()
        x = deref(x)
        y = deref(y)
        if x is y:
            continue
        tx = type(x)
        ty = type(y)
        if tx is Var:
            if ty is Var:
                # Bind the younger variable to keep chains short-lived.
                if x.vid >= y.vid:
                    x, y = x, y
                else:
                    x, y = y, x
                if x.attrs:
                    if wake is not None:
                        wake.append((x, list(x.attrs.items()), y))
                bind(x, y, trail)
                continue
            if mode != "default" and ty is Struct and occurs_in(x, y):
                if mode == "error":
                    raise errors.PrologError(errors.occurs_check_error(x, y))
                return False
            if x.attrs:
                if wake is not None:
                    wake.append((x, list(x.attrs.items()), y))
            bind(x, y, trail)
            continue
        if ty is Var:
            if mode != "default" and tx is Struct and occurs_in(y, x):
                if mode == "error":
                    raise errors.PrologError(errors.occurs_check_error(y, x))
                return False
            if y.attrs:
                if wake is not None:
                    wake.append((y, list(y.attrs.items()), x))
            bind(y, x, trail)
            continue
        if tx is Struct:
            if (
                ty is not Struct
                or x.name != y.name
                or len(x.args) != len(y.args)
            ):
                return False
            # Pair memo terminates unification of rational trees.
            if memo is None:
                memo = set()
            key = (id(x), id(y))
            if key in memo:
                continue
            memo.add(key)
            stack.extend(zip(x.args, y.args))
            continue
        if tx is not ty:
            # int/float cross-comparison by exact value.
            if tx in (int, float) and ty in (int, float):
                if x == y:
                    continue
            return False
        if x == y:
            continue
        return False
    return True


_RANK_VAR = 0
_RANK_NUM = 1
_RANK_ATOM = 2
_RANK_STR = 3
_RANK_STRUCT = 4


def _rank(t):
    tt = type(t)
    if tt is Var:
        return _RANK_VAR
    if tt is int or tt is float:
        return _RANK_NUM
    if tt is Atom:
        return _RANK_ATOM
    if tt is str:
        return _RANK_STR
    return _RANK_STRUCT


def compare_terms(a, b):
    """Standard order: Var < Number < Atom < Str < Compound.

    Returns -1, 0 or 1.  Compounds order by arity, then name, then
    arguments left to right.  The order is total and terminates on
    cyclic terms (repeated compound pairs compare equal).
    """
    stack = [(a, b)]
    memo = set()
    while stack:
        x, y = stack.pop()
        x = deref(x)
        y = deref(y)
        if x is y:
            continue
        rx = _rank(x)
        ry = _rank(y)
        if rx != ry:
            return -1 if rx < ry else 1
        if rx == _RANK_VAR:
            if x.vid != y.vid:
                return -1 if x.vid < y.vid else 1
            continue
        if rx == _RANK_NUM:
            if x < y:
                return -1
            if x > y:
                return 1
            if type(x) is not type(y):
                # Equal value, distinct types: float precedes int.
                return -1 if type(x) is float else 1
            continue
        if rx == _RANK_ATOM:
            if x.name != y.name:
                return -1 if x.name < y.name else 1
            continue
        if rx == _RANK_STR:
            if x != y:
                return -1 if x < y else 1
            continue
        if len(x.args) != len(y.args):
            return -1 if len(x.args) < len(y.args) else 1
        if x.name != y.name:
            return -1 if x.name < y.name else 1
        key = (id(x), id(y))
        if key in memo:
            continue
        memo.add(key)
        for pair in zip(reversed(x.args), reversed(y.args)):
            stack.append(pair)
    return 0


def term_variables(t):
    """Distinct unbound variables of t in first-encounter order."""
    out = []
    seen_vars = set()
    seen_structs = set()
    stack = [t]
    while stack:
        x = deref(stack.pop())
        if type(x) is Var:
            if x.vid not in seen_vars:
                seen_vars.add(x.vid)
                out.append(x)
        elif type(x) is Struct:
            if id(x) in seen_structs:
                continue
            seen_structs.add(id(x))
            stack.extend(reversed(x.args))
    return out


def attributed_variables(t):
    return [v for v in term_variables(t) if v.attrs]


def is_cyclic(t):
    """True when t contains a cycle through compound arguments."""
    on_path = set()
    done = set()
    stack = [(t, False)]
    while stack:
        x, leaving = stack.pop()
        x = deref(x)
        if type(x) is not Struct:
            continue
        if leaving:
            on_path.discard(id(x))
            done.add(id(x))
            continue
        if id(x) in on_path:
            return True
        if id(x) in done:
            continue
        on_path.add(id(x))
        stack.append((x, True))
        for a in x.args:
            stack.append((a, False))
    return False


def copy_term(t, keep_attrs=True, memo=None):
    """Fresh-variable copy preserving sharing and cycles.

    With keep_attrs, attribute lists are copied structurally as well.
    The memo maps id(original) -> copy and may be shared across calls
    to keep several copies consistent.
    """
    if memo is None:
        memo = {}
    return _copy_iter(t, keep_attrs, memo)


def _copy_iter(t, keep_attrs, memo):
    root = [None]
    # Work items: (term, setter)
    stack = [(t, (root, 0))]
    while stack:
        x, (holder, idx) = stack.pop()
        x = deref(x)
        tx = type(x)
        if tx is Var:
            c = memo.get(id(x))
            if c is None:
                c = Var()
                memo[id(x)] = c
                if keep_attrs and x.attrs:
                    c.attrs = {}
                    for m, v in x.attrs.items():
                        c.attrs[m] = _copy_iter(v, keep_attrs, memo)
            _store(holder, idx, c)
        elif tx is Struct:
            c = memo.get(id(x))
            if c is None:
                c = Struct(x.name, [None] * len(x.args))
                memo[id(x)] = c
                for i, a in enumerate(x.args):
                    stack.append((a, (c, i)))
            _store(holder, idx, c)
        else:
            _store(holder, idx, x)
    return root[0]


def _store(holder, idx, value):
    if type(holder) is Struct:
        holder.args[idx] = value
    else:
        holder[idx] = value


# Residual-goal projectors for attributed variables, keyed by attribute
# module name.  Signature: fn(var, value, copier, seen) -> list of goal
# terms over copied variables; `seen` is a per-projection scratch set so
# constraints shared by several variables are emitted once.
_PROJECTORS: dict = {}


def register_attr_projector(module_name, fn):
    _PROJECTORS[module_name] = fn


def copy_term_with_goals(t, fallback=None):
    """Copy t stripping attributes; return (copy, residual goals).

    Residual goals reference variables of the copy and, when executed
    against it, reinstate equivalent constraints.  fallback(module,
    var, value, copier, seen) handles attribute modules without a
    registered projector (e.g. Prolog-defined projections).
    """
    memo = {}
    copy = copy_term(t, keep_attrs=False, memo=memo)
    goals = []
    seen = set()

    def copier(x):
        return copy_term(x, keep_attrs=False, memo=memo)

    for v in attributed_variables(t):
        for mod, value in list(v.attrs.items()):
            proj = _PROJECTORS.get(mod)
            if proj is not None:
                goals.extend(proj(v, value, copier, seen))
            elif fallback is not None:
                goals.extend(fallback(mod, v, value, copier, seen))
    return copy, goals


def variant(a, b):
    """True when a and b are equal up to a variable renaming."""
    fwd = {}
    bwd = {}
    memo = set()
    stack = [(a, b)]
    while stack:
        x, y = stack.pop()
        x = deref(x)
        y = deref(y)
        tx = type(x)
        ty = type(y)
        if tx is Var:
            if ty is not Var:
                return False
            if fwd.get(x.vid, y.vid) != y.vid or bwd.get(y.vid, x.vid) != x.vid:
                return False
            fwd[x.vid] = y.vid
            bwd[y.vid] = x.vid
            continue
        if ty is Var:
            return False
        if tx is Struct:
            if ty is not Struct or x.name != y.name or len(x.args) != len(y.args):
                return False
            key = (id(x), id(y))
            if key in memo:
                continue
            memo.add(key)
            stack.extend(zip(x.args, y.args))
            continue
        if tx is not ty or x != y:
            return False
    return True


def make_list(items, tail=NIL):
    out = tail
    for x in reversed(items):
        out = Struct(".", [x, out])
    return out


def list_parts(t):
    """Split a list term into (items, tail); tail is NIL when proper."""
    items = []
    seen = set()
    t = deref(t)
    while type(t) is Struct and t.name == "." and len(t.args) == 2:
        if id(t) in seen:
            return items, t  # cyclic: report remaining as improper tail
        seen.add(id(t))
        items.append(t.args[0])
        t = deref(t.args[1])
    return items, t


def proper_list(t):
    """Python list of elements, or None when t is not a proper list."""
    items, tail = list_parts(t)
    if tail is NIL:
        return items
    return None
