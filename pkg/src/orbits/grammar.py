"""
Text form of orbit sets.

    orbitset := term (WS term)* | "empty"
    term     := kind ("^" INT)?
    kind     := ("e"|"h") "[" INT "/" INT "]"
              | "e+" ":" IDENT        Hessian < 0
              | "e-" ":" IDENT        Hessian > 0
              | "h" ":" IDENT         saddle
              | "e0" | "e1" | "h0" | "h1"
"""
from typing import Dict, List, Tuple

from src.orbits.orbit_model import E0, E1, H0, H1, OrbitKind, OrbitSet
from src.utils.errors import DomainError, OrbitParseError

_ALIASES = {"e0": E0, "e1": E1, "h0": H0, "h1": H1}
_KIND_START = ("e", "h", "empty")
DIGITS = "0123456789"


class _Parser:

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def fail(self, message: str, expected) -> OrbitParseError:
        return OrbitParseError(message, self.text, self.pos, expected)

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.pos >= len(self.text)

    def skip_space(self) -> int:
        start = self.pos
        while not self.at_end() and self.text[self.pos].isspace():
            self.pos += 1
        return self.pos - start

    def expect(self, literal: str) -> None:
        if not self.text.startswith(literal, self.pos):
            found = self.peek() or "end of input"
            raise self.fail(f"Unexpected '{found}'", [literal])
        self.pos += len(literal)

    def integer(self) -> int:
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.peek() and self.peek() in DIGITS:
            self.pos += 1
        digits = self.text[start:self.pos]
        if digits in ("", "-"):
            self.pos = start
            raise self.fail("Expected an integer", ["INT"])
        return int(digits)

    def ident(self) -> str:
        start = self.pos
        while self.peek() and (self.peek().isalnum() or self.peek() == "_"):
            self.pos += 1
        if start == self.pos:
            raise self.fail("Expected an identifier", ["IDENT"])
        return self.text[start:self.pos]

    def kind(self) -> OrbitKind:
        start = self.pos
        head = self.peek()
        if head not in ("e", "h"):
            raise self.fail(f"Unexpected '{head or 'end of input'}'", ["e", "h"])
        self.pos += 1
        nxt = self.peek()
        if nxt in ("0", "1") and self._alias_boundary():
            self.pos += 1
            return _ALIASES[self.text[start:self.pos]]
        if nxt == "[":
            self.pos += 1
            p = self.integer()
            self.expect("/")
            q = self.integer()
            self.expect("]")
            return self._build(start, OrbitKind.slope_elliptic if head == "e" else OrbitKind.slope_hyperbolic, p, q)
        if head == "e" and nxt in ("+", "-"):
            self.pos += 1
            self.expect(":")
            label = self.ident()
            maker = OrbitKind.morse_negative if nxt == "+" else OrbitKind.morse_positive
            return self._build(start, maker, label)
        if head == "h" and nxt == ":":
            self.pos += 1
            return self._build(start, OrbitKind.morse_saddle, self.ident())
        expected = ["[", "0", "1", "+", "-"] if head == "e" else ["[", "0", "1", ":"]
        raise self.fail(f"Unexpected '{nxt or 'end of input'}' after '{head}'", expected)

    def _alias_boundary(self) -> bool:
        after = self.text[self.pos + 1:self.pos + 2]
        return after == "" or after.isspace() or after == "^"

    def _build(self, start: int, maker, *args) -> OrbitKind:
        try:
            return maker(*args)
        except DomainError as e:
            raise DomainError(f"{e} (term at position {start})") from e

    def term(self) -> Tuple[OrbitKind, int]:
        kind = self.kind()
        mult = 1
        if self.peek() == "^":
            self.pos += 1
            at = self.pos
            mult = self.integer()
            if mult < 1:
                raise DomainError(f"Multiplicity must be positive, got {mult} at position {at}.")
        return kind, mult

    def orbitset(self) -> OrbitSet:
        self.skip_space()
        if self.at_end():
            raise self.fail("Empty input", _KIND_START)
        if self.text.startswith("empty", self.pos):
            self.pos += len("empty")
            self.skip_space()
            if not self.at_end():
                raise self.fail("Unexpected text after 'empty'", ["end of input"])
            return OrbitSet.empty()
        counts: Dict[OrbitKind, int] = {}
        while True:
            kind, mult = self.term()
            counts[kind] = counts.get(kind, 0) + mult
            gap = self.skip_space()
            if self.at_end():
                break
            if not gap:
                raise self.fail(f"Unexpected '{self.peek()}'", ["^", "whitespace", "end of input"])
        return OrbitSet.from_counts(counts)


def parse_orbitset(text: str) -> OrbitSet:
    """
    Parse the text form of an orbit set.

    Raises:
        OrbitParseError: The text does not match the grammar.
        DomainError: A slope is not in lowest terms or outside [0, 1], or a
            multiplicity is not positive.
    """
    return _Parser(text).orbitset()


def format_orbitset(alpha: OrbitSet) -> str:
    if alpha.is_empty:
        return "empty"
    terms: List[str] = []
    for kind, mult in alpha:
        terms.append(kind.token if mult == 1 else f"{kind.token}^{mult}")
    return " ".join(terms)
