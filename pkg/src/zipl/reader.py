"""Tokenizer and operator-precedence parser.

Parsing is a pure function of the token stream and an operator
resolver (an object with lookup(name, fixity-class)); the resolver is
normally a module, so operator visibility follows the same chain as
predicate visibility.
"""

from __future__ import annotations

from . import errors
from .ops import DEFAULT_OPS, INFIX, POSTFIX, PREFIX
from .terms import Atom, Struct, Var, make_list

_SYMBOL_CHARS = set("#$&*+-./:<=>?@^~\\")
_SOLO = {"!", ";"}


class Token:
    __slots__ = ("kind", "text", "value", "line", "col", "layout_before")

    def __init__(self, kind, text, value, line, col, layout_before):
        self.kind = kind
        self.text = text
        self.value = value
        self.line = line
        self.col = col
        self.layout_before = layout_before

    def __repr__(self):
        return "Token(%s,%r,%d:%d)" % (self.kind, self.text, self.line, self.col)


def syntax_error(message, line, col):
    return errors.PrologError(errors.syntax_error_term(message, line, col))


_SINGLE_ESCAPES = {
    "n": "\n",
    "t": "\t",
    "r": "\r",
    "b": "\x08",
    "f": "\x0c",
    "a": "\x07",
    "v": "\x0b",
    "e": "\x1b",
    "0": "\0",
    "\\": "\\",
    "'": "'",
    '"': '"',
    "`": "`",
}


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def _advance(self, n):
        t = self.text
        for i in range(self.pos, self.pos + n):
            if t[i] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n

    def skip_layout(self):
        """Skip whitespace and comments; True if anything was skipped."""
        t = self.text
        start = self.pos
        while self.pos < len(t):
            c = t[self.pos]
            if c in " \t\r\n\f\v":
                self._advance(1)
            elif c == "%":
                n = t.find("\n", self.pos)
                self._advance((n - self.pos + 1) if n >= 0 else len(t) - self.pos)
            elif c == "/" and t.startswith("/*", self.pos):
                n = t.find("*/", self.pos + 2)
                if n < 0:
                    raise syntax_error("unterminated block comment", self.line, self.col)
                self._advance(n + 2 - self.pos)
            else:
                break
        return self.pos != start

    def scan(self):
        tokens = []
        while True:
            layout = self.skip_layout()
            if self.pos >= len(self.text):
                break
            tok = self._token(layout or not tokens)
            tokens.append(tok)
            if tok.kind == "error":
                break
        return tokens

    def _token(self, layout_before):
        t = self.text
        i = self.pos
        line, col = self.line, self.col
        c = t[i]

        def tok(kind, end, value=None):
            text = t[i:end]
            self._advance(end - i)
            return Token(kind, text, value, line, col, layout_before)

        if c.isdigit():
            return self._number(layout_before)
        if c == "_" or (c.isalpha() and c.isupper()):
            j = i + 1
            while j < len(t) and (t[j].isalnum() or t[j] == "_"):
                j += 1
            return tok("var", j, t[i:j])
        if c.isalpha():
            j = i + 1
            while j < len(t) and (t[j].isalnum() or t[j] == "_"):
                j += 1
            return tok("atom", j, t[i:j])
        if c == "'":
            return self._quoted(layout_before, "'", "atom")
        if c == '"':
            return self._quoted(layout_before, '"', "string")
        if c in "()[]{},|":
            return tok("punct", i + 1, c)
        if c in _SOLO:
            return tok("atom", i + 1, c)
        if c in _SYMBOL_CHARS:
            j = i
            while j < len(t) and t[j] in _SYMBOL_CHARS:
                j += 1
            text = t[i:j]
            # A full stop: '.' followed by layout, '%', or end of input.
            if text[0] == ".":
                if len(text) == 1 and (
                    j >= len(t) or t[j] in " \t\r\n\f\v" or t[j] == "%"
                ):
                    return tok("end", j, ".")
                if j >= len(t) and text == ".":
                    return tok("end", j, ".")
            return tok("atom", j, text)
        return tok("error", i + 1, "unexpected character %r" % c)

    def _number(self, layout_before):
        t = self.text
        i = self.pos
        line, col = self.line, self.col
        j = i
        while j < len(t) and t[j].isdigit():
            j += 1
        is_float = False
        if j < len(t) and t[j] == "." and j + 1 < len(t) and t[j + 1].isdigit():
            is_float = True
            j += 1
            while j < len(t) and t[j].isdigit():
                j += 1
        if j < len(t) and t[j] in "eE":
            k = j + 1
            if k < len(t) and t[k] in "+-":
                k += 1
            if k < len(t) and t[k].isdigit():
                is_float = True
                j = k
                while j < len(t) and t[j].isdigit():
                    j += 1
            else:
                return Token(
                    "error", t[i:j], "malformed number", line, col, layout_before
                )
        text = t[i:j]
        self._advance(j - i)
        value = float(text) if is_float else int(text)
        return Token(
            "float" if is_float else "int", text, value, line, col, layout_before
        )

    def _quoted(self, layout_before, quote, kind):
        t = self.text
        i = self.pos
        line, col = self.line, self.col
        j = i + 1
        chars = []
        while True:
            if j >= len(t):
                return Token(
                    "error", t[i:j], "unterminated quoted token", line, col,
                    layout_before,
                )
            c = t[j]
            if c == quote:
                if j + 1 < len(t) and t[j + 1] == quote:
                    chars.append(quote)
                    j += 2
                    continue
                j += 1
                break
            if c == "\\":
                j2, ch = self._escape(j)
                if j2 < 0:
                    return Token(
                        "error", t[i:j + 1], ch, line, col, layout_before
                    )
                if ch is not None:
                    chars.append(ch)
                j = j2
                continue
            chars.append(c)
            j += 1
        text = t[i:j]
        self._advance(j - i)
        return Token(kind, text, "".join(chars), line, col, layout_before)

    def _escape(self, j):
        """Handle backslash escape at index j; return (next index, char)."""
        t = self.text
        k = j + 1
        if k >= len(t):
            return -1, "unterminated escape"
        c = t[k]
        if c == "\n":
            return k + 1, None  # line continuation
        if c == "x":
            m = k + 1
            while m < len(t) and t[m] in "0123456789abcdefABCDEF":
                m += 1
            if m == k + 1 or m >= len(t) or t[m] != "\\":
                return -1, "malformed hex escape"
            return m + 1, chr(int(t[k + 1 : m], 16))
        if c.isdigit():
            m = k
            while m < len(t) and t[m] in "01234567":
                m += 1
            if m < len(t) and t[m] == "\\":
                return m + 1, chr(int(t[k:m], 8))
            # Plain \0 style single escape
            if c in _SINGLE_ESCAPES and m == k + 1:
                return k + 1, _SINGLE_ESCAPES[c]
            return -1, "malformed octal escape"
        if c in _SINGLE_ESCAPES:
            return k + 1, _SINGLE_ESCAPES[c]
        return -1, "unknown escape \\%s" % c


def tokenize(text):
    """Tokenize text; the last token may be an 'error' token."""
    return _Scanner(text).scan()


_TERM_STOPPERS = {")", "]", "}", ",", "|"}


class Parser:
    """Parses one term per read() call from a token list."""

    def __init__(self, tokens, resolver=None):
        self.tokens = tokens
        self.pos = 0
        self.resolver = resolver or DEFAULT_OPS
        self.varmap = {}

    def at_end(self):
        return self.pos >= len(self.tokens)

    def _peek(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def _next(self):
        tok = self._peek()
        if tok is None:
            raise syntax_error("unexpected end of input", 0, 0)
        if tok.kind == "error":
            raise syntax_error(tok.value, tok.line, tok.col)
        self.pos += 1
        return tok

    def _expect_punct(self, ch):
        tok = self._next()
        if tok.kind != "punct" or tok.value != ch:
            raise syntax_error("expected %r" % ch, tok.line, tok.col)

    def read(self):
        """Read one clause term up to its full stop.

        Returns (term, varnames) or None at end of input.
        """
        if self.at_end():
            return None
        self.varmap = {}
        term, _ = self._parse(1200)
        tok = self._peek()
        if tok is None:
            raise syntax_error("operator expected before end of input", 0, 0)
        if tok.kind == "error":
            raise syntax_error(tok.value, tok.line, tok.col)
        if tok.kind != "end":
            raise syntax_error(
                "operator expected before %r" % tok.text, tok.line, tok.col
            )
        self.pos += 1
        names = {n: v for n, v in self.varmap.items() if n != "_"}
        return term, names

    # --- precedence parsing ---

    def _parse(self, maxprec):
        left, lp = self._primary(maxprec)
        return self._infix_loop(left, lp, maxprec)

    def _infix_loop(self, left, lp, maxprec):
        while True:
            tok = self._peek()
            if tok is None or tok.kind in ("end", "error"):
                return left, lp
            name = None
            if tok.kind == "atom":
                name = tok.value
            elif tok.kind == "punct" and tok.value in (",", "|"):
                name = tok.value
            if name is None:
                return left, lp
            d = self.resolver.lookup(name, INFIX)
            if d:
                p, op_type = d
                larg = p if op_type == "yfx" else p - 1
                rarg = p if op_type == "xfy" else p - 1
                if p <= maxprec and lp <= larg:
                    self.pos += 1
                    right, _ = self._parse(rarg)
                    left = Struct(name if name != "|" else ";", [left, right])
                    lp = p
                    continue
            d = self.resolver.lookup(name, POSTFIX)
            if d:
                p, op_type = d
                larg = p if op_type == "yf" else p - 1
                if p <= maxprec and lp <= larg:
                    self.pos += 1
                    left = Struct(name, [left])
                    lp = p
                    continue
            return left, lp

    def _var(self, name):
        if name == "_":
            return Var()
        v = self.varmap.get(name)
        if v is None:
            v = Var()
            self.varmap[name] = v
        return v

    def _primary(self, maxprec):
        tok = self._next()
        kind = tok.kind
        if kind == "int" or kind == "float":
            return tok.value, 0
        if kind == "string":
            return tok.value, 0
        if kind == "var":
            return self._var(tok.value), 0
        if kind == "punct":
            v = tok.value
            if v == "(":
                term, _ = self._parse(1200)
                self._expect_punct(")")
                return term, 0
            if v == "[":
                return self._list(tok), 0
            if v == "{":
                nxt = self._peek()
                if nxt and nxt.kind == "punct" and nxt.value == "}":
                    self.pos += 1
                    return self._maybe_functor(Atom("{}"), tok)
                term, _ = self._parse(1200)
                self._expect_punct("}")
                return Struct("{}", [term]), 0
            raise syntax_error("unexpected %r" % tok.text, tok.line, tok.col)
        if kind == "atom":
            return self._atom_primary(tok, maxprec)
        if kind == "end":
            raise syntax_error("unexpected end of clause", tok.line, tok.col)
        raise syntax_error("unexpected token %r" % tok.text, tok.line, tok.col)

    def _maybe_functor(self, atom, tok):
        nxt = self._peek()
        if (
            nxt is not None
            and nxt.kind == "punct"
            and nxt.value == "("
            and not nxt.layout_before
        ):
            self.pos += 1
            args = [self._parse(999)[0]]
            while True:
                t2 = self._next()
                if t2.kind == "punct" and t2.value == ",":
                    args.append(self._parse(999)[0])
                    continue
                if t2.kind == "punct" and t2.value == ")":
                    break
                raise syntax_error("expected , or ) in arguments", t2.line, t2.col)
            return Struct(atom.name, args), 0
        return atom, 0

    def _atom_primary(self, tok, maxprec):
        name = tok.value
        nxt = self._peek()
        # Functional notation binds tightest: name immediately before '('.
        if (
            nxt is not None
            and nxt.kind == "punct"
            and nxt.value == "("
            and not nxt.layout_before
        ):
            return self._maybe_functor(Atom(name), tok)
        # Negative numeric literal: '-' directly attached to a number.
        if name == "-" and nxt is not None and nxt.kind in ("int", "float"):
            if not nxt.layout_before:
                self.pos += 1
                return -nxt.value, 0
        d = self.resolver.lookup(name, PREFIX)
        if d and self._starts_term(nxt):
            p, op_type = d
            if p <= maxprec:
                argmax = p if op_type == "fy" else p - 1
                arg, _ = self._parse(argmax)
                return Struct(name, [arg]), p
        return Atom(name), 0

    def _starts_term(self, tok):
        """Whether tok can begin an operand (prefix-op lookahead)."""
        if tok is None or tok.kind in ("end", "error"):
            return False
        if tok.kind == "punct":
            if tok.value in _TERM_STOPPERS:
                return False
            return True  # ( [ {
        if tok.kind == "atom":
            # An atom that is only an infix operator cannot start a term
            # unless it is in turn followed by something term-like.
            if (
                self.resolver.lookup(tok.value, INFIX)
                and not self.resolver.lookup(tok.value, PREFIX)
            ):
                follow = (
                    self.tokens[self.pos + 1]
                    if self.pos + 1 < len(self.tokens)
                    else None
                )
                if follow is None or follow.kind in ("end", "error"):
                    return True
                if follow.kind == "punct" and follow.value in _TERM_STOPPERS:
                    return True
                return False
            return True
        return True

    def _list(self, open_tok):
        nxt = self._peek()
        if nxt and nxt.kind == "punct" and nxt.value == "]":
            self.pos += 1
            return Atom("[]")
        items = [self._parse(999)[0]]
        tail = Atom("[]")
        while True:
            tok = self._next()
            if tok.kind == "punct" and tok.value == ",":
                items.append(self._parse(999)[0])
                continue
            if tok.kind == "punct" and tok.value == "|":
                tail = self._parse(999)[0]
                self._expect_punct("]")
                break
            if tok.kind == "punct" and tok.value == "]":
                break
            raise syntax_error("expected , | or ] in list", tok.line, tok.col)
        return make_list(items, tail)


def read_term_text(text, resolver=None):
    """Parse a single term from text ending in a full stop."""
    p = Parser(tokenize(text), resolver)
    r = p.read()
    if r is None:
        raise syntax_error("no term found", 1, 1)
    return r
