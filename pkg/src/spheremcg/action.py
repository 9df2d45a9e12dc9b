"""Action of the extended twist group on a free fundamental group.

Puncture loops x1 .. xn generate the fundamental group of the punctured
sphere subject to x1...xn = 1, so we work in the free group on
x1 .. x(n-1) and eliminate xn.  Mapping classes act on this free group
up to conjugation (the basepoint is free to move), giving a faithful
representation into outer automorphisms.  Equality, orders and relator
validation below all reduce to one primitive: deciding whether an
automorphism is inner, which is decidable in a free group by inspecting
the conjugacy class of one basis image.

Handedness of the half-twists and the basepoint position for the
reflection are not forced by the algebra, so they are selected by a
search over a small candidate family, validated against the extended
relators.  The selected convention is recorded in validation reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .presentation import build_presentation
from .words import EPSILON, T_LETTER, Word, concat, cyclic_reduce, invert, reduce

DEFAULT_LENGTH_GUARD = 10**6


class ResourceLimitError(RuntimeError):
    """Raised when automorphism images outgrow the configured guard."""


class ConventionSearchError(RuntimeError):
    """Raised when no generator convention satisfies the relators."""


@dataclass(frozen=True)
class FreeAut:
    """Endomorphism of the free group on x1 .. x(n-1), given by images.

    images[i] is the reduced image word of basis letter i+1.  All
    constructors here only ever build automorphisms.
    """

    n: int
    images: tuple[Word, ...]


def identity_aut(n: int) -> FreeAut:
    return FreeAut(n, tuple((i,) for i in range(1, n)))


def apply_aut(f: FreeAut, word: Iterable[int]) -> Word:
    out: list[int] = []
    for letter in word:
        img = f.images[abs(letter) - 1]
        if letter < 0:
            img = invert(img)
        for x in img:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return tuple(out)


def compose(f: FreeAut, g: FreeAut, guard: int = DEFAULT_LENGTH_GUARD) -> FreeAut:
    """f after g: the result sends x to f(g(x))."""
    images = tuple(apply_aut(f, img) for img in g.images)
    if sum(len(img) for img in images) > guard:
        raise ResourceLimitError(f"automorphism images exceed {guard} letters")
    return FreeAut(f.n, images)


def _sigma_pair(i: int, n: int) -> tuple[tuple[Word, ...], tuple[Word, ...]]:
    """Images of the i-th half-twist and its inverse on x1 .. x(n-1).

    For i < n-1 the twist swaps adjacent loops, conjugating one by the
    other.  The last twist wraps through the eliminated loop xn.
    """
    fwd: list[Word] = [(j,) for j in range(1, n)]
    inv: list[Word] = [(j,) for j in range(1, n)]
    if i < n - 1:
        fwd[i - 1] = (i, i + 1, -i)
        fwd[i] = (i,)
        inv[i - 1] = (i + 1,)
        inv[i] = (-(i + 1), i, i + 1)
    else:
        # xn = (x1...x(n-1))^-1 substituted into the adjacent-swap images
        fwd[n - 2] = tuple(range(-(n - 2), 0)) + (-(n - 1),)
        inv[n - 2] = tuple(-j for j in range(n - 1, 0, -1))
    return tuple(fwd), tuple(inv)


_T_FAMILIES = (
    "prefix",
    "prefix_rev",
    "suffix",
    "suffix_rev",
    "trivial",
    "prefix_inv",
    "prefix_rev_inv",
    "suffix_inv",
    "suffix_rev_inv",
)


def _t_images(family: str, n: int) -> tuple[Word, ...]:
    """Candidate reflection: xi -> ci xi^-1 ci^-1 for a conjugator family."""
    base = family.removesuffix("_inv")
    flip = family.endswith("_inv")
    images: list[Word] = []
    for i in range(1, n):
        if base == "prefix":
            c: Word = tuple(range(1, i))
        elif base == "prefix_rev":
            c = tuple(range(i - 1, 0, -1))
        elif base == "suffix":
            c = tuple(range(i + 1, n))
        elif base == "suffix_rev":
            c = tuple(range(n - 1, i, -1))
        else:
            c = EPSILON
        if flip:
            c = invert(c)
        images.append(concat(c, (-i,), invert(c)))
    return tuple(images)


def _candidate_gens(sigma: str, family: str, n: int) -> dict[int, FreeAut]:
    gens: dict[int, FreeAut] = {}
    for i in range(1, n):
        fwd, inv = _sigma_pair(i, n)
        if sigma == "mirror":
            fwd, inv = inv, fwd
        gens[i] = FreeAut(n, fwd)
        gens[-i] = FreeAut(n, inv)
    t = FreeAut(n, _t_images(family, n))
    gens[T_LETTER] = t
    gens[-T_LETTER] = t
    return gens


def _word_aut(word: Iterable[int], gens: dict[int, FreeAut], n: int,
              guard: int = DEFAULT_LENGTH_GUARD) -> FreeAut:
    f = identity_aut(n)
    for letter in word:
        try:
            f = compose(f, gens[letter], guard)
        except KeyError:
            raise ValueError(f"letter {letter} outside the alphabet for n={n}") from None
    return f


def _validates(gens: dict[int, FreeAut], n: int) -> bool:
    pres = build_presentation(n, "extended")
    for rel in pres.relators:
        if is_inner(_word_aut(rel, gens, n)) is None:
            return False
    return True


@lru_cache(maxsize=None)
def _convention(n: int) -> tuple[str, str]:
    for sigma in ("standard", "mirror"):
        for family in _T_FAMILIES:
            if _validates(_candidate_gens(sigma, family, n), n):
                return sigma, family
    raise ConventionSearchError(f"no twist/reflection convention works at n={n}")


@lru_cache(maxsize=None)
def _gen_auts(n: int) -> dict[int, FreeAut]:
    if n < 3:
        raise ValueError(f"need n >= 3, got {n}")
    sigma, family = _convention(n)
    return _candidate_gens(sigma, family, n)


def word_to_aut(word: Iterable[int], n: int,
                guard: int = DEFAULT_LENGTH_GUARD) -> FreeAut:
    """Automorphism of the word, letters applied right to left."""
    return _word_aut(word, _gen_auts(n), n, guard)


def is_inner(f: FreeAut, pad: int = 2) -> Word | None:
    """A word w with f = (x -> w x w^-1), or None.

    Any such w conjugates x1 to f(x1), so w = w0 x1^s where w0 is the
    conjugator part of the cyclically reduced image of x1.  The exponent
    is bounded by the image lengths; the window is padded and then
    widened once before giving up, which is already past the provable
    bound.
    """
    core, w0 = cyclic_reduce(f.images[0])
    if core != (1,):
        return None
    bound = pad + max(len(img) for img in f.images)
    basis = [(i,) for i in range(1, f.n)]

    def try_width(width: int) -> Word | None:
        for k in range(2 * width + 1):
            s = (k + 1) // 2 if k % 2 else -(k // 2)
            w = concat(w0, ((1,) * s if s >= 0 else (-1,) * (-s)))
            if all(f.images[i] == concat(w, basis[i], invert(w))
                   for i in range(f.n - 1)):
                return w
        return None

    found = try_width(bound)
    if found is None:
        found = try_width(4 * bound)
    return found


def equal_with_witness(u: Iterable[int], v: Iterable[int], n: int,
                       guard: int = DEFAULT_LENGTH_GUARD) -> tuple[bool, Word | None]:
    """Decide u = v in the extended group; on success also return the
    basepoint conjugator carried by u v^-1."""
    diff = concat(reduce(u), invert(reduce(v)))
    if diff == EPSILON:
        return True, EPSILON
    witness = is_inner(word_to_aut(diff, n, guard))
    return witness is not None, witness


def equal_in_group(u: Iterable[int], v: Iterable[int], n: int,
                   guard: int = DEFAULT_LENGTH_GUARD) -> bool:
    return equal_with_witness(u, v, n, guard)[0]


def order_of(u: Iterable[int], n: int, cap: int | None = None,
             guard: int = DEFAULT_LENGTH_GUARD) -> int | None:
    """Order of u in the extended group, or None if it exceeds the cap.

    Candidate exponents are filtered through the puncture permutation
    and the mod-2 letter counts before touching the free group, so only
    multiples of both invariant orders get the full inner test.
    """
    from .homs import abelianization_image, perm_image, perm_order

    word = reduce(u)
    if cap is None:
        cap = 4 * n
    if word == EPSILON:
        return 1
    step = perm_order(perm_image(word, n))
    if any(abelianization_image(word)):
        step = step if step % 2 == 0 else 2 * step
    f = word_to_aut(word, n, guard)
    g = identity_aut(n)
    for k in range(1, cap + 1):
        g = compose(g, f, guard)
        if k % step == 0 and is_inner(g) is not None:
            return k
    return None


@dataclass(frozen=True)
class RelatorCheck:
    label: str
    word: Word
    ok: bool
    witness: Word | None


@dataclass(frozen=True)
class ActionReport:
    n: int
    flavor: str
    sigma_convention: str
    t_convention: str
    checks: tuple[RelatorCheck, ...]
    alternates: tuple[tuple[str, str], ...] = ()

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)


def validate_action(n: int, flavor: str = "extended",
                    scan_alternates: bool = False) -> ActionReport:
    """Check every relator acts trivially up to conjugation.

    This is the soundness certificate for the whole module: once it
    passes, word_to_aut factors through the group and the equality and
    order routines answer questions about the group itself.
    """
    sigma, family = _convention(n)
    pres = build_presentation(n, flavor)
    checks = []
    for label, rel in zip(pres.labels, pres.relators):
        witness = is_inner(word_to_aut(rel, n))
        checks.append(RelatorCheck(label, rel, witness is not None, witness))
    alternates: tuple[tuple[str, str], ...] = ()
    if scan_alternates:
        found = []
        for s in ("standard", "mirror"):
            for fam in _T_FAMILIES:
                if (s, fam) != (sigma, family) and _validates(_candidate_gens(s, fam, n), n):
                    found.append((s, fam))
        alternates = tuple(found)
    return ActionReport(n, flavor, sigma, family, tuple(checks), alternates)
