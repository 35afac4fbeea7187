"""Free-group word algebra.

A word is a freely reduced sequence of letters over a free group of known
rank.  Letters are stored as nonzero signed integers: generator ``i``
(0-based) is ``i + 1``, its inverse is ``-(i + 1)``.  Reduction happens in
every constructor, so an unreduced Word value never exists.

Text encoding: for rank <= 26 the letters a..z denote generators 0..25 and
the uppercase letter denotes the inverse; whitespace is ignored.  Larger
ranks use whitespace-separated tokens ``x0 X0 x1 X1 ...``.
"""

from __future__ import annotations

from .errors import (
    LetterRangeError,
    PreconditionError,
    RankMismatchError,
    WordFormatError,
)


def _reduce(letters):
    stack = []
    for v in letters:
        if stack and stack[-1] == -v:
            stack.pop()
        else:
            stack.append(v)
    return tuple(stack)


class Word:
    """A freely reduced word over a free group of the given rank."""

    __slots__ = ("rank", "letters")

    def __init__(self, rank: int, letters=()):
        if rank < 0:
            raise LetterRangeError(f"rank must be nonnegative, got {rank}")
        letters = tuple(letters)
        for v in letters:
            if not isinstance(v, int) or v == 0 or abs(v) > rank:
                raise LetterRangeError(
                    f"letter {v!r} is not a signed index in 1..{rank}"
                )
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "letters", _reduce(letters))

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def _from_reduced(cls, rank, letters):
        """Internal fast path for letter sequences already known reduced."""
        w = object.__new__(cls)
        object.__setattr__(w, "rank", rank)
        object.__setattr__(w, "letters", tuple(letters))
        return w

    @classmethod
    def identity(cls, rank: int) -> "Word":
        return cls._from_reduced(rank, ())

    @classmethod
    def generator(cls, rank: int, index: int, sign: int = 1) -> "Word":
        if not 0 <= index < rank:
            raise LetterRangeError(f"generator {index} out of range for rank {rank}")
        return cls._from_reduced(rank, (index + 1 if sign > 0 else -(index + 1),))

    def __len__(self):
        return len(self.letters)

    def __bool__(self):
        return bool(self.letters)

    def __eq__(self, other):
        return (
            isinstance(other, Word)
            and self.rank == other.rank
            and self.letters == other.letters
        )

    def __hash__(self):
        return hash((self.rank, self.letters))

    def __mul__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        if self.rank != other.rank:
            raise RankMismatchError(
                f"cannot multiply words of rank {self.rank} and {other.rank}"
            )
        # only the seam can cancel, both factors being reduced
        a, b = list(self.letters), list(other.letters)
        i = len(a)
        j = 0
        while i > 0 and j < len(b) and a[i - 1] == -b[j]:
            i -= 1
            j += 1
        return Word._from_reduced(self.rank, tuple(a[:i]) + tuple(b[j:]))

    def inverse(self) -> "Word":
        return Word._from_reduced(self.rank, tuple(-v for v in reversed(self.letters)))

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return self.inverse() ** (-n)
        out = Word.identity(self.rank)
        for _ in range(n):
            out = out * self
        return out

    def commutator(self, other: "Word") -> "Word":
        return self * other * self.inverse() * other.inverse()

    def conjugate_by(self, u: "Word") -> "Word":
        """u * self * u^-1."""
        return u * self * u.inverse()

    def cyclic_reduction(self) -> tuple["Word", "Word"]:
        """Split self = conjugator * core * conjugator^-1 with core cyclically
        reduced.  Returns (core, conjugator)."""
        ls = self.letters
        i, j = 0, len(ls)
        while j - i >= 2 and ls[i] == -ls[j - 1]:
            i += 1
            j -= 1
        return (
            Word._from_reduced(self.rank, ls[i:j]),
            Word._from_reduced(self.rank, ls[:i]),
        )

    def is_cyclically_reduced(self) -> bool:
        ls = self.letters
        return len(ls) < 2 or ls[0] != -ls[-1]

    def root(self) -> "Word":
        """The primitive word r with self = r**k for maximal k (self nonempty).

        Works up to conjugacy bookkeeping: for self = c * core * c^-1 the root
        is c * (primitive period of core) * c^-1.
        """
        if not self.letters:
            raise PreconditionError("the empty word has no primitive root")
        core, conj = self.cyclic_reduction()
        ls = core.letters
        n = len(ls)
        for p in range(1, n + 1):
            if n % p == 0 and ls == ls[p:] + ls[:p]:
                period = Word._from_reduced(self.rank, ls[:p])
                return conj * period * conj.inverse()
        raise AssertionError("unreachable: every word is its own period")

    def __repr__(self):
        return f"Word({self.rank}, {str(self)!r})"

    def __str__(self):
        return format_word(self)


def parse_word(text: str, rank: int) -> Word:
    """Parse the text encoding described in the module docstring."""
    if rank <= 26:
        letters = []
        for ch in text:
            if ch.isspace():
                continue
            if "a" <= ch <= "z":
                idx = ord(ch) - 97
                sign = 1
            elif "A" <= ch <= "Z":
                idx = ord(ch) - 65
                sign = -1
            else:
                raise WordFormatError(f"unexpected character {ch!r} in word {text!r}")
            if idx >= rank:
                raise LetterRangeError(
                    f"letter {ch!r} exceeds rank {rank} in word {text!r}"
                )
            letters.append((idx + 1) * sign)
        return Word(rank, letters)
    letters = []
    for tok in text.split():
        if len(tok) < 2 or tok[0] not in "xX" or not tok[1:].isdigit():
            raise WordFormatError(f"bad token {tok!r} for rank {rank} word")
        idx = int(tok[1:])
        if idx >= rank:
            raise LetterRangeError(f"token {tok!r} exceeds rank {rank}")
        letters.append((idx + 1) * (1 if tok[0] == "x" else -1))
    return Word(rank, letters)


def format_letter(rank: int, index: int, sign: int = 1) -> str:
    if rank <= 26:
        return chr((97 if sign > 0 else 65) + index)
    return f"{'x' if sign > 0 else 'X'}{index}"


def format_word(word: Word) -> str:
    parts = [format_letter(word.rank, abs(v) - 1, 1 if v > 0 else -1) for v in word.letters]
    return ("" if word.rank <= 26 else " ").join(parts)


def cyclically_equal(u: Word, v: Word) -> bool:
    """True iff u and v have equal cyclic reductions up to rotation, i.e.
    they are conjugate in the ambient free group."""
    if u.rank != v.rank:
        raise RankMismatchError("cannot compare words of different ranks")
    cu = u.cyclic_reduction()[0].letters
    cv = v.cyclic_reduction()[0].letters
    if len(cu) != len(cv):
        return False
    if not cu:
        return True
    return any(cv == cu[k:] + cu[:k] for k in range(len(cu)))
