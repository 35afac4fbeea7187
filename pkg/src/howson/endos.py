"""Free-group endomorphisms given by images of the basis letters.

An Endomorphism substitutes images letterwise and reduces, so it is a
homomorphism by construction.  Injectivity and surjectivity are decided on
the Stallings graph of the image subgroup: n words are a basis of a rank-n
subgroup exactly when their graph has rank n (free groups are Hopfian, so
equality of ranks suffices), and the image is everything exactly when that
graph is the rose.

Word lengths can blow up under iteration, so every application honors a
hard letter cap and raises LengthCapError instead of thrashing.
"""

from __future__ import annotations

from .errors import (
    EmptyImageError,
    LengthCapError,
    NotAnAutomorphismError,
    NotInImageError,
    NotInjectiveError,
    RankMismatchError,
    WordFormatError,
)
from .growth import Growth, classify_growth
from .stallings import ExpressionGraph, StallingsGraph
from .words import Word, format_word, parse_word

DEFAULT_LETTER_CAP = 10**6


class Endomorphism:
    """A self-map of the rank-n free group, one image word per generator."""

    __slots__ = ("rank", "images", "_expr_graph")

    def __init__(self, rank: int, images):
        images = tuple(images)
        if len(images) != rank:
            raise RankMismatchError(
                f"expected {rank} image words, got {len(images)}"
            )
        for im in images:
            if im.rank != rank:
                raise RankMismatchError(
                    f"image {im} has rank {im.rank}, expected {rank}"
                )
        object.__setattr__(self, "rank", rank)
        object.__setattr__(self, "images", images)
        object.__setattr__(self, "_expr_graph", None)

    def __setattr__(self, name, value):
        raise AttributeError("Endomorphism is immutable")

    @classmethod
    def identity(cls, rank: int) -> "Endomorphism":
        return cls(rank, [Word.generator(rank, i) for i in range(rank)])

    def __eq__(self, other):
        return (
            isinstance(other, Endomorphism)
            and self.rank == other.rank
            and self.images == other.images
        )

    def __hash__(self):
        return hash((self.rank, self.images))

    def __repr__(self):
        imgs = ", ".join(
            f"{format_word(Word.generator(self.rank, i))}->{im}"
            for i, im in enumerate(self.images)
        )
        return f"Endomorphism({imgs})"

    # -- evaluation ---------------------------------------------------------

    def apply(self, w: Word, cap: int = DEFAULT_LETTER_CAP) -> Word:
        if w.rank != self.rank:
            raise RankMismatchError(
                f"word of rank {w.rank} under a rank-{self.rank} map"
            )
        stack = []
        for v in w.letters:
            img = self.images[abs(v) - 1].letters
            if v < 0:
                img = tuple(-t for t in reversed(img))
            for t in img:
                if stack and stack[-1] == -t:
                    stack.pop()
                else:
                    stack.append(t)
                    if len(stack) > cap:
                        raise LengthCapError(cap)
        return Word._from_reduced(self.rank, tuple(stack))

    def __call__(self, w: Word) -> Word:
        return self.apply(w)

    def apply_power(self, n: int, w: Word, cap: int = DEFAULT_LETTER_CAP) -> Word:
        """Apply the map n times to w, capping intermediate lengths."""
        if n < 0:
            raise WordFormatError("power must be nonnegative")
        for _ in range(n):
            w = self.apply(w, cap)
        return w

    def compose(self, other: "Endomorphism", cap: int = DEFAULT_LETTER_CAP) -> "Endomorphism":
        """self after other: compose(f, g).apply(w) == f.apply(g.apply(w))."""
        if self.rank != other.rank:
            raise RankMismatchError("cannot compose maps of different ranks")
        return Endomorphism(self.rank, [self.apply(im, cap) for im in other.images])

    def power(self, n: int, cap: int = DEFAULT_LETTER_CAP) -> "Endomorphism":
        if n < 0:
            raise WordFormatError("power must be nonnegative")
        out = Endomorphism.identity(self.rank)
        for _ in range(n):
            out = self.compose(out, cap)
        return out

    # -- image structure ------------------------------------------------------

    def _image_expressions(self) -> ExpressionGraph:
        if self._expr_graph is None:
            object.__setattr__(
                self, "_expr_graph", ExpressionGraph(self.rank, list(self.images))
            )
        return self._expr_graph

    def image_graph(self) -> StallingsGraph:
        return self._image_expressions().graph

    def is_injective(self) -> bool:
        return self.image_graph().subgroup_rank() == self.rank

    def is_surjective(self) -> bool:
        return self.image_graph().index() == 1

    def in_image(self, w: Word) -> bool:
        return self.image_graph().membership(w)

    def preimage(self, w: Word) -> Word:
        """The unique u with apply(u) == w; requires injectivity."""
        if not self.is_injective():
            raise NotInjectiveError("preimages need an injective map")
        expr = self._image_expressions().express(w)
        if expr is None:
            raise NotInImageError(f"{w} is not in the image subgroup")
        # the images form a free basis of the image, so the expression,
        # read as a word in the domain letters, is the preimage
        return Word(
            self.rank, [(i + 1) * s for i, s in expr.factors]
        )

    def inverse(self) -> "Endomorphism":
        if not (self.is_injective() and self.is_surjective()):
            raise NotAnAutomorphismError(
                "only bijective endomorphisms can be inverted"
            )
        return Endomorphism(
            self.rank,
            [self.preimage(Word.generator(self.rank, i)) for i in range(self.rank)],
        )

    # -- growth -----------------------------------------------------------------

    def transition_matrix(self) -> tuple[tuple[int, ...], ...]:
        """Entry (i, j): occurrences of generator j (either sign) in the
        image of generator i.  Sign-blind by design; the signed
        abelianization can hide growth through cancellation."""
        rows = []
        for im in self.images:
            row = [0] * self.rank
            for v in im.letters:
                row[abs(v) - 1] += 1
            rows.append(tuple(row))
        return tuple(rows)

    def growth(self) -> Growth:
        """Growth class of this rose map (not of its outer class)."""
        for i, im in enumerate(self.images):
            if not im.letters:
                raise EmptyImageError(
                    f"generator {i} has an empty image; growth is undefined"
                )
        return classify_growth(self.transition_matrix())


def parse_endomorphism(text: str) -> Endomorphism:
    """Parse the one-line-per-generator file format::

        # Sapir map
        a -> ab
        b -> ba

    The left-hand letters must be the generators in order; blank lines and
    ``#`` comments are ignored.  The rank is the number of mapping lines.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "->" not in line:
            raise WordFormatError(f"line {lineno}: expected 'letter -> word'")
        lhs, rhs = (part.strip() for part in line.split("->", 1))
        lines.append((lineno, lhs, rhs))
    rank = len(lines)
    if rank == 0:
        raise WordFormatError("no generator mappings found")
    images = []
    for pos, (lineno, lhs, rhs) in enumerate(lines):
        expected = format_word(Word.generator(rank, pos))
        if lhs != expected:
            raise WordFormatError(
                f"line {lineno}: left side must be {expected!r}, got {lhs!r}"
            )
        images.append(parse_word(rhs, rank))
    return Endomorphism(rank, images)


def format_endomorphism(phi: Endomorphism) -> str:
    lines = [
        f"{format_word(Word.generator(phi.rank, i))} -> {format_word(im)}"
        for i, im in enumerate(phi.images)
    ]
    return "\n".join(lines) + "\n"
