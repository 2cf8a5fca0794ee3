"""Term output: canonical and operator-aware writing.

All modes are cycle safe: a compound encountered on its own descent
path prints as the marker **cycle**.  Tokens are separated lazily so
adjacent symbolic or alphanumeric tokens never merge, which keeps
write/read round trips exact.
"""

from __future__ import annotations

from .ops import DEFAULT_OPS, INFIX, POSTFIX, PREFIX
from .terms import Atom, Struct, Var, deref

_SYMBOL_CHARS = set("#$&*+-./:<=>?@^~\\")
_SOLO_ATOMS = {"[]", "{}", "!", ";"}

_ESCAPES = {
    "\\": "\\\\",
    "\n": "\\n",
    "\t": "\\t",
    "\r": "\\r",
    "\x08": "\\b",
    "\x0c": "\\f",
    "\x07": "\\a",
    "\x0b": "\\v",
}


def atom_needs_quotes(name):
    if name in _SOLO_ATOMS:
        return False
    if not name:
        return True
    c = name[0]
    if c.isalpha() and c.islower() and c.isascii():
        return not all(ch.isalnum() and ch.isascii() or ch == "_" for ch in name[1:])
    if all(ch in _SYMBOL_CHARS for ch in name):
        return False
    return True


def _escape(text, quote):
    out = []
    for ch in text:
        if ch == quote:
            out.append("\\" + quote)
        elif ch in _ESCAPES:
            out.append(_ESCAPES[ch])
        elif ord(ch) < 32 or ord(ch) == 127:
            out.append("\\%o\\" % ord(ch))
        else:
            out.append(ch)
    return "".join(out)


def quoted_atom_text(name):
    if atom_needs_quotes(name):
        return "'" + _escape(name, "'") + "'"
    return name


def _char_class(ch):
    if ch.isalnum() or ch == "_":
        return "a"
    if ch in _SYMBOL_CHARS:
        return "s"
    return "p"


class _Out:
    """Accumulates text, inserting a space when tokens would merge."""

    def __init__(self):
        self.parts = []
        self._last = "p"

    def emit(self, text):
        if not text:
            return
        first = _char_class(text[0])
        if first != "p" and first == self._last:
            self.parts.append(" ")
        self.parts.append(text)
        self._last = _char_class(text[-1])

    def emit_exact(self, text):
        # No separator logic; for quoted material.
        if not text:
            return
        self.parts.append(text)
        self._last = "p"

    def text(self):
        return "".join(self.parts)


class TermWriter:
    def __init__(
        self,
        ops=None,
        quoted=False,
        ignore_ops=False,
        max_depth=0,
        var_names=None,
    ):
        self.ops = ops or DEFAULT_OPS
        self.quoted = quoted
        self.ignore_ops = ignore_ops
        self.max_depth = max_depth
        self.var_names = var_names or {}

    def format(self, term):
        out = _Out()
        self._write(out, term, 1200, 0, set())
        return out.text()

    def _atom_text(self, name):
        if self.quoted:
            return quoted_atom_text(name)
        return name

    def _write(self, out, t, prio, depth, path):
        t = deref(t)
        if self.max_depth and depth > self.max_depth:
            out.emit("...")
            return
        tt = type(t)
        if tt is Var:
            name = self.var_names.get(t.vid)
            out.emit(name if name else "_G%d" % t.vid)
            return
        if tt is int:
            if t < 0 and prio < 200:
                out.emit_exact("(")
                out.emit(str(t))
                out.emit_exact(")")
            else:
                out.emit(str(t))
            return
        if tt is float:
            text = repr(t)
            if "e" not in text and "." not in text and "inf" not in text and "nan" not in text:
                text += ".0"
            if t < 0 and prio < 200:
                out.emit_exact("(" + text + ")")
            else:
                out.emit(text)
            return
        if tt is Atom:
            # An atom that is also an operator needs parens in tight slots.
            if not self.ignore_ops and self._is_op_atom(t.name) and prio < 1201:
                needs = prio < self._max_op_priority(t.name)
                if needs:
                    out.emit_exact("(")
                    out.emit(self._atom_text(t.name))
                    out.emit_exact(")")
                    return
            out.emit(self._atom_text(t.name))
            return
        if tt is str:
            if self.quoted:
                out.emit_exact('"' + _escape(t, '"') + '"')
            else:
                out.emit_exact(t)
            return
        # Compound
        if id(t) in path:
            out.emit("**cycle**")
            return
        path.add(id(t))
        try:
            self._write_struct(out, t, prio, depth, path)
        finally:
            path.discard(id(t))

    def _is_op_atom(self, name):
        return (
            self.ops.lookup(name, INFIX)
            or self.ops.lookup(name, PREFIX)
            or self.ops.lookup(name, POSTFIX)
        )

    def _max_op_priority(self, name):
        best = 0
        for cls in (INFIX, PREFIX, POSTFIX):
            d = self.ops.lookup(name, cls)
            if d and d[0] > best:
                best = d[0]
        return best

    def _write_struct(self, out, t, prio, depth, path):
        name = t.name
        arity = len(t.args)
        if name == "." and arity == 2 and not self.ignore_ops:
            self._write_list(out, t, depth, path)
            return
        if name == "{}" and arity == 1 and not self.ignore_ops:
            out.emit_exact("{")
            self._write(out, t.args[0], 1200, depth + 1, path)
            out.emit_exact("}")
            return
        if not self.ignore_ops:
            if arity == 2:
                d = self.ops.lookup(name, INFIX)
                if d:
                    p, op_type = d
                    lp = p if op_type == "yfx" else p - 1
                    rp = p if op_type == "xfy" else p - 1
                    open_paren = p > prio
                    if open_paren:
                        out.emit_exact("(")
                    self._write(out, t.args[0], lp, depth + 1, path)
                    if name == ",":
                        out.emit_exact(",")
                    else:
                        out.emit(self._atom_text(name))
                    self._write(out, t.args[1], rp, depth + 1, path)
                    if open_paren:
                        out.emit_exact(")")
                    return
            if arity == 1:
                d = self.ops.lookup(name, PREFIX)
                if d:
                    p, op_type = d
                    ap = p if op_type == "fy" else p - 1
                    open_paren = p > prio
                    if open_paren:
                        out.emit_exact("(")
                    out.emit(self._atom_text(name))
                    arg = deref(t.args[0])
                    # `- 1` must not merge into the literal -1.
                    if name == "-" and type(arg) in (int, float) and arg >= 0:
                        out.emit_exact(" ")
                    self._write(out, t.args[0], ap, depth + 1, path)
                    if open_paren:
                        out.emit_exact(")")
                    return
                d = self.ops.lookup(name, POSTFIX)
                if d:
                    p, op_type = d
                    ap = p if op_type == "yf" else p - 1
                    open_paren = p > prio
                    if open_paren:
                        out.emit_exact("(")
                    self._write(out, t.args[0], ap, depth + 1, path)
                    out.emit(self._atom_text(name))
                    if open_paren:
                        out.emit_exact(")")
                    return
        out.emit(self._atom_text(name))
        out.emit_exact("(")
        for i, a in enumerate(t.args):
            if i:
                out.emit_exact(",")
            self._write(out, a, 999, depth + 1, path)
        out.emit_exact(")")

    def _write_list(self, out, t, depth, path):
        out.emit_exact("[")
        first = True
        d = depth
        local = []
        while True:
            d += 1
            if self.max_depth and d > self.max_depth:
                out.emit_exact("|" if not first else "")
                out.emit("...")
                break
            if not first:
                out.emit_exact(",")
            self._write(out, t.args[0], 999, d, path)
            first = False
            tail = deref(t.args[1])
            if type(tail) is Struct and tail.name == "." and len(tail.args) == 2:
                if id(tail) in path or id(tail) in local:
                    out.emit_exact("|")
                    out.emit("**cycle**")
                    break
                local.append(id(tail))
                t = tail
                continue
            if type(tail) is Atom and tail.name == "[]":
                break
            out.emit_exact("|")
            self._write(out, tail, 999, d, path)
            break
        out.emit_exact("]")


def term_text(
    term, ops=None, quoted=False, ignore_ops=False, max_depth=0, var_names=None
):
    return TermWriter(
        ops=ops,
        quoted=quoted,
        ignore_ops=ignore_ops,
        max_depth=max_depth,
        var_names=var_names,
    ).format(term)


def write_canonical(term, ops=None):
    """Quoted, operator-free output (lists still bracketed)."""
    return term_text(term, ops=ops, quoted=True, ignore_ops=True)
