"""Ascending HNN extensions of free groups.

For an injective endomorphism phi of F, the extension is

    G = < F, t | t f t^-1 = phi(f)  for all f in F >.

Every element has a reduced form t^-a * w * t^b with a, b >= 0 and w a
reduced word, where a = 0, b = 0, or w is outside the image subgroup
phi(F).  Reduction pushes stable letters outward with the rewriting rules
t*f -> phi(f)*t and f*t^-1 -> t^-1*phi(f), then repeatedly cancels a
t^-1 ... t pair whenever the middle word lies in phi(F) (Britton
reduction).  Two raw words are equal in G exactly when their reduced
forms coincide; the multiplication-consistency property tests back this
uniqueness claim.

Raw words are sequences of tokens: signed letter ints as in the word
module, or the strings "t" / "T" for the stable letter and its inverse.
In text form the generator alphabet must stay below the letter t, so raw
text parsing supports rank <= 19 only.
"""

from __future__ import annotations

from .endos import DEFAULT_LETTER_CAP, Endomorphism
from .errors import (
    LetterRangeError,
    MixedContextError,
    NotInjectiveError,
    WordFormatError,
)
from .words import Word, format_word

RawToken = "int | str"


def parse_raw_word(text: str, rank: int) -> list:
    """Parse letters plus t/T into a raw token list."""
    if rank > 19:
        raise WordFormatError(
            "raw HNN words use letters a..s plus t; rank must be <= 19"
        )
    tokens = []
    for ch in text:
        if ch.isspace():
            continue
        if ch == "t":
            tokens.append("t")
        elif ch == "T":
            tokens.append("T")
        elif "a" <= ch <= "z":
            idx = ord(ch) - 97
            if idx >= rank:
                raise LetterRangeError(f"letter {ch!r} exceeds rank {rank}")
            tokens.append(idx + 1)
        elif "A" <= ch <= "Z":
            idx = ord(ch) - 65
            if idx >= rank:
                raise LetterRangeError(f"letter {ch!r} exceeds rank {rank}")
            tokens.append(-(idx + 1))
        else:
            raise WordFormatError(f"unexpected character {ch!r} in raw word")
    return tokens


class HnnElement:
    """Reduced form t^-a * w * t^b of an element of an ascending extension."""

    __slots__ = ("group", "a", "w", "b")

    def __init__(self, group, a, w, b):
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "b", b)

    def __setattr__(self, name, value):
        raise AttributeError("HnnElement is immutable")

    def rho(self) -> int:
        """Image under the homomorphism to Z sending t to 1 and F to 0."""
        return self.b - self.a

    def in_base(self) -> Word | None:
        """The base-group word when the element lies in F, else None."""
        if self.a == 0 and self.b == 0:
            return self.w
        return None

    def is_identity(self) -> bool:
        return self.a == 0 and self.b == 0 and not self.w

    def __eq__(self, other):
        return (
            isinstance(other, HnnElement)
            and self.group.phi == other.group.phi
            and (self.a, self.w, self.b) == (other.a, other.w, other.b)
        )

    def __hash__(self):
        return hash((self.group.phi, self.a, self.w, self.b))

    def __mul__(self, other):
        if not isinstance(other, HnnElement):
            return NotImplemented
        return self.group.mul(self, other)

    def __str__(self):
        return "T" * self.a + format_word(self.w) + "t" * self.b

    def __repr__(self):
        return f"HnnElement(a={self.a}, w={format_word(self.w)!r}, b={self.b})"


class AscendingHnn:
    """The group <F, t | t f t^-1 = phi(f)> for an injective phi."""

    def __init__(self, phi: Endomorphism, cap: int = DEFAULT_LETTER_CAP):
        if not phi.is_injective():
            raise NotInjectiveError(
                "ascending HNN extensions need an injective base map"
            )
        self.phi = phi
        self.rank = phi.rank
        self.cap = cap
        self._letter_powers = {}

    def is_free_by_cyclic(self) -> bool:
        return self.phi.is_surjective()

    # -- element constructors -------------------------------------------------

    def element(self, a: int, w: Word, b: int) -> HnnElement:
        if a < 0 or b < 0:
            raise WordFormatError("t exponents in t^-a w t^b must be nonnegative")
        if w.rank != self.rank:
            raise MixedContextError("base word rank differs from the extension rank")
        return self._britton(a, w, b)

    def identity(self) -> HnnElement:
        return HnnElement(self, 0, Word.identity(self.rank), 0)

    def from_base(self, w: Word) -> HnnElement:
        return self.element(0, w, 0)

    def t_power(self, k: int) -> HnnElement:
        if k >= 0:
            return HnnElement(self, 0, Word.identity(self.rank), k)
        return HnnElement(self, -k, Word.identity(self.rank), 0)

    # -- reduction --------------------------------------------------------------

    def _letter_power(self, letter: int, n: int) -> Word:
        """phi^n applied to a single letter, memoized."""
        key = (letter, n)
        hit = self._letter_powers.get(key)
        if hit is None:
            hit = self.phi.apply_power(n, Word(self.rank, (letter,)), self.cap)
            self._letter_powers[key] = hit
        return hit

    def _britton(self, a, w, b) -> HnnElement:
        while a > 0 and b > 0 and self.phi.in_image(w):
            w = self.phi.preimage(w)
            a -= 1
            b -= 1
        return HnnElement(self, a, w, b)

    def normal_form(self, raw) -> HnnElement:
        """Reduce a raw word (token list or text) to its unique normal form."""
        if isinstance(raw, str):
            raw = parse_raw_word(raw, self.rank)
        a = 0
        w = Word.identity(self.rank)
        b = 0
        for tok in raw:
            if tok == "t":
                b += 1
            elif tok == "T":
                if b > 0:
                    b -= 1
                else:
                    a += 1
                    w = self.phi.apply(w, self.cap)
            elif isinstance(tok, int) and tok != 0 and abs(tok) <= self.rank:
                x = Word(self.rank, (tok,)) if b == 0 else self._letter_power(tok, b)
                w = w * x
            else:
                raise WordFormatError(f"malformed raw token {tok!r}")
        return self._britton(a, w, b)

    # -- group operations ----------------------------------------------------------

    def mul(self, x: HnnElement, y: HnnElement) -> HnnElement:
        if x.group.phi != self.phi or y.group.phi != self.phi:
            raise MixedContextError("elements belong to a different extension")
        if x.b >= y.a:
            c = x.b - y.a
            w = x.w * self.phi.apply_power(c, y.w, self.cap)
            return self._britton(x.a, w, c + y.b)
        c = y.a - x.b
        w = self.phi.apply_power(c, x.w, self.cap) * y.w
        return self._britton(x.a + c, w, y.b)

    def inverse_element(self, x: HnnElement) -> HnnElement:
        # (t^-a w t^b)^-1 = t^-b w^-1 t^a
        return self._britton(x.b, x.w.inverse(), x.a)

    def conj_by_t(self, x: HnnElement) -> HnnElement:
        """Normal form of t * x * t^-1."""
        return self.mul(self.t_power(1), self.mul(x, self.t_power(-1)))

    def commutator(self, x: HnnElement, y: HnnElement) -> HnnElement:
        return self.mul(
            self.mul(x, y),
            self.mul(self.inverse_element(x), self.inverse_element(y)),
        )

    def __repr__(self):
        return f"AscendingHnn({self.phi!r})"
