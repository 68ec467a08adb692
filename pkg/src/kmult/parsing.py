"""Polynomial text syntax and the line-oriented model file format.

Polynomials look like `3/2*z1^2*z2 - z2^3 + 1`; for d = 2 the variables
may be written z and w.  Vector polynomials are parenthesized component
tuples, `(z^2 - w^2, 0)`.  Model files are line oriented with `#`
comments; see parse_model_text.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError, ValidationError
from .poly import (Polynomial, VectorPolynomial, format_polynomial, format_vector,
                   var_names)

_TOKEN = re.compile(r"\s*(\d+/\d+|\d+|[A-Za-z][A-Za-z0-9]*|\^|\*|\+|-|\(|\)|,)")


def _tokenize(text, line=None):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
            break
        out.append((m.group(1), pos))
        pos = m.end()
    return out


def _var_map(d):
    names = {f"z{i + 1}": i for i in range(d)}
    for i, alias in enumerate(var_names(d)):
        names[alias] = i
    return names


class _Parser:
    def __init__(self, tokens, d, line=None):
        self.tokens = tokens
        self.pos = 0
        self.d = d
        self.vars = _var_map(d)
        self.line = line

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok[0]

    def fail(self, msg):
        col = self.tokens[self.pos][1] + 1 if self.pos < len(self.tokens) else None
        raise ParseError(msg, self.line, col)

    def parse_sum(self):
        sign = 1
        while self.peek() in ("+", "-"):
            if self.next() == "-":
                sign = -sign
        acc = self.parse_product() * sign
        while self.peek() in ("+", "-"):
            sign = 1
            while self.peek() in ("+", "-"):
                if self.next() == "-":
                    sign = -sign
            acc = acc + self.parse_product() * sign
        return acc

    def parse_product(self):
        acc = self.parse_factor()
        while self.peek() == "*":
            self.next()
            acc = acc * self.parse_factor()
        return acc

    def parse_factor(self):
        tok = self.peek()
        if tok is None:
            self.fail("unexpected end of expression")
        if tok == "(":
            self.next()
            inner = self.parse_sum()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.next()
            return self._maybe_power(inner)
        if re.fullmatch(r"\d+/\d+|\d+", tok):
            self.next()
            return self._maybe_power(Polynomial.constant(self.d, Fraction(tok)))
        if tok in self.vars:
            self.next()
            return self._maybe_power(Polynomial.variable(self.d, self.vars[tok]))
        self.fail(f"unknown symbol {tok!r}")

    def _maybe_power(self, base):
        if self.peek() == "^":
            self.next()
            tok = self.peek()
            if tok is None or not tok.isdigit():
                self.fail("exponent must be a nonnegative integer")
            self.next()
            return base ** int(tok)
        return base


def parse_polynomial(text: str, d: int, line=None) -> Polynomial:
    tokens = _tokenize(text, line)
    if not tokens:
        raise ParseError("empty polynomial", line)
    p = _Parser(tokens, d, line)
    result = p.parse_sum()
    if p.pos != len(tokens):
        p.fail("trailing input after polynomial")
    return result


def _split_top_level(text, line=None):
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parentheses", line)
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    if depth != 0:
        raise ParseError("unbalanced parentheses", line)
    parts.append("".join(current))
    return parts


def parse_vector_polynomial(text: str, d: int, line=None) -> VectorPolynomial:
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        inner = text[1:-1]
        parts = _split_top_level(inner, line)
        if len(parts) > 1:
            return VectorPolynomial([parse_polynomial(part, d, line) for part in parts])
    return VectorPolynomial.wrap(parse_polynomial(text, d, line))


def _parse_kv(words, line):
    out = {}
    for w in words:
        if "=" not in w:
            raise ParseError(f"expected key=value, got {w!r}", line)
        k, v = w.split("=", 1)
        out[k] = v
    return out


def parse_model_text(text: str):
    """Parse one model from the line grammar.

        ring d=<int>
        module presented gens=<g>   followed by `rel <vector>` lines
        module submodule N=<n>      followed by `gen <vector>` lines
        module matrix dim=<n>       followed by `T<i> row <j>: <rationals>`
        module builtin name=<catalog> [param=value ...]
    """
    from .fock import FockSubmodule
    from .linalg import RatMatrix
    from .modules import MatrixModule, PresentedModule

    d = None
    mode = None
    header = {}
    rels, gens = [], []
    matrix_rows = {}
    builtin = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        words = stripped.split()
        if words[0] == "ring":
            kv = _parse_kv(words[1:], lineno)
            if "d" not in kv:
                raise ParseError("ring line needs d=<int>", lineno)
            d = int(kv["d"])
            if d < 1:
                raise ParseError("d must be >= 1", lineno)
        elif words[0] == "module":
            if len(words) < 2:
                raise ParseError("module line needs a kind", lineno)
            mode = words[1]
            header = _parse_kv(words[2:], lineno)
            if mode == "builtin":
                if "name" not in header:
                    raise ParseError("builtin module needs name=...", lineno)
                builtin = header
        elif words[0] == "rel":
            if mode != "presented" or d is None:
                raise ParseError("rel line outside a presented module", lineno)
            rels.append(parse_vector_polynomial(stripped[4:], d, lineno))
        elif words[0] == "gen":
            if mode != "submodule" or d is None:
                raise ParseError("gen line outside a submodule module", lineno)
            gens.append(parse_vector_polynomial(stripped[4:], d, lineno))
        elif re.fullmatch(r"T\d+", words[0]):
            if mode != "matrix":
                raise ParseError("matrix row outside a matrix module", lineno)
            m = re.fullmatch(r"T(\d+)\s+row\s+(\d+)\s*:\s*(.*)", stripped)
            if not m:
                raise ParseError("expected `T<i> row <j>: <rationals>`", lineno)
            ti, rj = int(m.group(1)) - 1, int(m.group(2))
            try:
                vals = [Fraction(x) for x in m.group(3).split()]
            except ValueError:
                raise ParseError("bad rational in matrix row", lineno) from None
            matrix_rows.setdefault(ti, {})[rj] = vals
        else:
            raise ParseError(f"unrecognized line {stripped!r}", lineno)

    if builtin is not None:
        from .models import build
        params = {}
        for k, v in builtin.items():
            if k == "name":
                continue
            params[k] = int(v) if re.fullmatch(r"-?\d+", v) else v
        return build(builtin["name"], **params)
    if mode == "presented":
        if d is None:
            raise ParseError("presented module needs a ring line")
        g = int(header.get("gens", "1"))
        try:
            return PresentedModule(d, g, rels)
        except ValidationError as exc:
            raise ValidationError(f"invalid presented module: {exc}") from None
    if mode == "submodule":
        if d is None:
            raise ParseError("submodule needs a ring line")
        n = int(header.get("N", "1"))
        try:
            return FockSubmodule(d, n, gens)
        except ValidationError as exc:
            raise ValidationError(f"invalid submodule: {exc}") from None
    if mode == "matrix":
        dim = int(header.get("dim", "0"))
        acts = []
        for ti in sorted(matrix_rows):
            rows = matrix_rows[ti]
            if sorted(rows) != list(range(dim)):
                raise ParseError(f"T{ti + 1} must have rows 0..{dim - 1}")
            grid = [rows[j] for j in range(dim)]
            if any(len(r) != dim for r in grid):
                raise ParseError(f"T{ti + 1} rows must have {dim} entries")
            acts.append(RatMatrix.from_rows(grid))
        if not acts:
            raise ParseError("matrix module without actions")
        return MatrixModule(dim, acts)
    raise ParseError("no module definition found")


def parse_model_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_model_text(fh.read())


def canonical_model_text(model) -> str:
    """Deterministic model text: fingerprint source and structured echo."""
    from .modules import FilteredModel, MatrixModule, PresentedModule, SubmoduleModule

    if isinstance(model, PresentedModule):
        lines = [f"ring d={model.d}", f"module presented gens={model.gens}"]
        lines += [f"rel {format_vector(r)}" for r in model.relations]
        return "\n".join(lines) + "\n"
    if isinstance(model, SubmoduleModule):
        lines = [f"ring d={model.d}", f"module submodule N={model.n}"]
        lines += [f"gen {format_vector(g)}" for g in model.generators]
        return "\n".join(lines) + "\n"
    if isinstance(model, MatrixModule):
        lines = [f"ring d={model.d}", f"module matrix dim={model.dim}"]
        for i, act in enumerate(model.actions):
            dense = act.to_dense()
            for j in range(model.dim):
                row = " ".join(str(x) for x in dense[j])
                lines.append(f"T{i + 1} row {j}: {row}")
        return "\n".join(lines) + "\n"
    if isinstance(model, FilteredModel):
        name = getattr(model, "builtin_name", type(model).__name__)
        return f"module builtin name={name}\n"
    raise TypeError(f"cannot canonicalize {type(model).__name__}")
