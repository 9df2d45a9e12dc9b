"""Cheap invariant homomorphisms: puncture permutations, mod-2 letter
counts, and the projective 2x2 integer representation at four punctures.

These give fast necessary conditions for equality and order questions,
and at n=4 an independent exact model of the quotient by the hyperelliptic
involution.
"""

from __future__ import annotations

from functools import lru_cache
from math import lcm
from typing import Iterable

from .presentation import Presentation, build_presentation
from .words import T_LETTER, Word, invert

Perm = tuple[int, ...]
GF2Vec = tuple[int, int]
Mat2 = tuple[int, int, int, int]

MAT_ID: Mat2 = (1, 0, 0, 1)


def perm_identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def perm_compose(p: Perm, q: Perm) -> Perm:
    """p after q."""
    return tuple(p[q[i] - 1] for i in range(len(p)))


def perm_order(p: Perm) -> int:
    order = 1
    seen = [False] * len(p)
    for start in range(len(p)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = p[i] - 1
            length += 1
        order = lcm(order, length)
    return order


def perm_image(word: Iterable[int], n: int) -> Perm:
    """Induced permutation of the n punctures; the reflection fixes all."""
    result = perm_identity(n)
    for letter in word:
        k = abs(letter)
        if k == T_LETTER:
            continue
        if not 1 <= k <= n - 1:
            raise ValueError(f"letter {letter} outside the alphabet for n={n}")
        swap = list(range(1, n + 1))
        swap[k - 1], swap[k] = swap[k], swap[k - 1]
        result = perm_compose(result, tuple(swap))
    return result


def format_perm(p: Perm) -> str:
    seen = [False] * len(p)
    cycles = []
    for start in range(len(p)):
        if seen[start] or p[start] == start + 1:
            seen[start] = True
            continue
        cycle = []
        i = start
        while not seen[i]:
            seen[i] = True
            cycle.append(i + 1)
            i = p[i] - 1
        cycles.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(cycles) if cycles else "id"


def format_gf2(v: GF2Vec) -> str:
    return f"({v[0]},{v[1]})"


def format_mat2(m: Mat2) -> str:
    return f"[[{m[0]},{m[1]}],[{m[2]},{m[3]}]]"


def abelianization_image(word: Iterable[int]) -> GF2Vec:
    """(twist exponent, reflection count) mod 2; every relator vanishes."""
    s = t = 0
    for letter in word:
        if abs(letter) == T_LETTER:
            t += 1
        else:
            s += 1 if letter > 0 else -1
    return s % 2, t % 2


def gf2_rank(vectors: Iterable[GF2Vec]) -> int:
    """Rank of the span inside (Z/2)^2."""
    span = {(0, 0)}
    for v in vectors:
        v = (v[0] % 2, v[1] % 2)
        span |= {(v[0] ^ s[0], v[1] ^ s[1]) for s in span}
    return len(span).bit_length() - 1


def span_gf2(vectors: Iterable[GF2Vec]) -> bool:
    """True iff the vectors span all of (Z/2)^2."""
    return gf2_rank(vectors) == 2


def mat_mul(a: Mat2, b: Mat2) -> Mat2:
    return (
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    )


def mat_neg(m: Mat2) -> Mat2:
    return (-m[0], -m[1], -m[2], -m[3])


def mat_inv(m: Mat2) -> Mat2:
    det = m[0] * m[3] - m[1] * m[2]
    if det == 1:
        return (m[3], -m[1], -m[2], m[0])
    if det == -1:
        return (-m[3], m[1], m[2], -m[0])
    raise ValueError(f"matrix {m} has determinant {det}, not a unit")


def proj_eq(a: Mat2, b: Mat2) -> bool:
    return a == b or a == mat_neg(b)


def pgl2_class(m: Mat2) -> Mat2:
    """Sign-normalized representative of {m, -m}."""
    for entry in m:
        if entry > 0:
            return m
        if entry < 0:
            return mat_neg(m)
    return m


_S_PARABOLIC: Mat2 = (1, 1, 0, 1)
_S_PARABOLIC_LOWER: Mat2 = (1, 0, -1, 1)


@lru_cache(maxsize=None)
def _pgl2_gens() -> dict[int, Mat2]:
    """Generator matrices at n=4, with the reflection image selected by
    validating the extended relators projectively."""
    twists = {1: _S_PARABOLIC, 2: _S_PARABOLIC_LOWER, 3: _S_PARABOLIC}
    for d in ((1, 0, 0, -1), (-1, 0, 0, 1)):
        gens = dict(twists)
        gens[T_LETTER] = d
        pres = build_presentation(4, "extended")
        full = {**{k: v for k, v in gens.items()},
                **{-k: mat_inv(v) for k, v in gens.items()}}
        if all(proj_eq(_fold(rel, full), MAT_ID) for rel in pres.relators):
            return full
    raise RuntimeError("no reflection matrix validates the relators at n=4")


def _fold(word: Iterable[int], gens: dict[int, Mat2]) -> Mat2:
    m = MAT_ID
    for letter in word:
        m = mat_mul(m, gens[letter])
    return m


def pgl2_image(word: Iterable[int], n: int = 4) -> Mat2:
    """Image in the projective 2x2 model; defined only at n=4."""
    if n != 4:
        raise ValueError("the 2x2 projective model exists only at n=4")
    gens = _pgl2_gens()
    try:
        return _fold(word, gens)
    except KeyError as exc:
        raise ValueError(f"letter {exc.args[0]} outside the alphabet for n=4") from None


def validate_hom(pres: Presentation, kind: str) -> tuple[tuple[str, bool], ...]:
    """Check each relator dies under the chosen invariant.

    kind is one of perm, psi, pgl2; the last requires n=4.
    """
    results = []
    for label, rel in zip(pres.labels, pres.relators):
        if kind == "perm":
            ok = perm_image(rel, pres.n) == perm_identity(pres.n)
        elif kind == "psi":
            ok = abelianization_image(rel) == (0, 0)
        elif kind == "pgl2":
            ok = proj_eq(pgl2_image(rel, pres.n), MAT_ID)
        else:
            raise ValueError(f"unknown invariant kind {kind!r}")
        results.append((label, ok))
    return tuple(results)


def find_pgl2_word(target: Mat2, max_len: int = 8) -> Word | None:
    """Shortest word over the n=4 generators hitting target projectively."""
    gens = _pgl2_gens()
    letters = (1, -1, 2, -2, 3, -3, T_LETTER)
    target_class = pgl2_class(target)
    frontier: list[tuple[Word, Mat2]] = [((), MAT_ID)]
    seen = {pgl2_class(MAT_ID)}
    if target_class in seen:
        return ()
    for _ in range(max_len):
        nxt: list[tuple[Word, Mat2]] = []
        for word, m in frontier:
            for letter in letters:
                m2 = mat_mul(m, gens[letter])
                cls = pgl2_class(m2)
                if cls in seen:
                    continue
                if cls == target_class:
                    return word + (letter,)
                seen.add(cls)
                nxt.append((word + (letter,), m2))
        frontier = nxt
    return None
