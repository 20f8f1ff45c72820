"""Words over arrows and formal inverses, string modules, hooks and cohooks.

String validity is judged against the monomial quotient of the algebra by
its socle; the resulting string modules are exactly the non-projective
indecomposables of the algebras this package builds, and they are genuine
modules over the full algebra (checked on construction).

Words print as comma-joined letters with ``~`` marking an inverse, e.g.
``b,r~,a``; trivial words print as ``e0``, ``e1``.

Every built-in family names its strings in four series at most:

* ae1: V0 .. V(m-1), the loop powers.
* ae2: M0 .. M(2m-1) and N0 .. N(2m-1), the alternating paths out of
  each vertex.
* ae3: V1 .. Vm (inverse loop powers), X1 .. Xm, Y1 .. Ym, U0 .. U(m-1).
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from . import homology
from .errors import (
    CapTooSmall,
    InDeep,
    IndexOutOfRange,
    NotAString,
    OnPeak,
    StrcatError,
    UnknownArrow,
)
from .quiver_core import Algebra, Quiver


@dataclass(frozen=True)
class Letter:
    arrow: str
    inverse: bool = False

    def flipped(self) -> "Letter":
        return Letter(self.arrow, not self.inverse)

    def __str__(self) -> str:
        return self.arrow + ("~" if self.inverse else "")


@dataclass(frozen=True)
class StringWord:
    """A reduced walk; either EmptyAt(vertex) or a nonempty letter sequence."""

    letters: tuple[Letter, ...] = ()
    vertex: int | None = None

    def __post_init__(self):
        if not self.letters and self.vertex is None:
            raise StrcatError("a trivial word needs its base vertex")

    @property
    def length(self) -> int:
        return len(self.letters)

    @property
    def is_trivial(self) -> bool:
        return not self.letters

    def inverse(self) -> "StringWord":
        if self.is_trivial:
            return self
        return StringWord(tuple(l.flipped() for l in reversed(self.letters)))

    def literal(self) -> str:
        if self.is_trivial:
            return f"e{self.vertex}"
        return ",".join(str(l) for l in self.letters)

    def __str__(self) -> str:
        return self.literal()


def empty_word(vertex: int) -> StringWord:
    return StringWord((), vertex)


def word_from_arrows(arrows, inverses=None) -> StringWord:
    inverses = inverses or [False] * len(arrows)
    return StringWord(tuple(Letter(a, i) for a, i in zip(arrows, inverses)))


def letter_source(quiver: Quiver, letter: Letter) -> int:
    a = quiver.arrow(letter.arrow)
    return a.target if letter.inverse else a.source


def letter_target(quiver: Quiver, letter: Letter) -> int:
    a = quiver.arrow(letter.arrow)
    return a.source if letter.inverse else a.target


def word_vertices(quiver: Quiver, word: StringWord) -> list[int]:
    """The length+1 vertices the walk visits."""
    if word.is_trivial:
        return [word.vertex]
    verts = [letter_source(quiver, word.letters[0])]
    for l in word.letters:
        verts.append(letter_target(quiver, l))
    return verts


def subword(word: StringWord, pos: int, length: int) -> StringWord:
    if length < 1:
        raise StrcatError("subword needs length >= 1; empties carry a vertex")
    return StringWord(word.letters[pos: pos + length])


def word_key(quiver: Quiver, word: StringWord) -> tuple:
    """Sort key: direct letters before inverse ones, then declaration order."""
    if word.is_trivial:
        return (0, (), word.vertex)
    letters = tuple((l.inverse, quiver.arrow_index(l.arrow)) for l in word.letters)
    return (word.length, letters, -1)


def canonical(word: StringWord, quiver: Quiver) -> StringWord:
    """The smaller of the word and its inverse under the word order."""
    inv = word.inverse()
    return min(word, inv, key=lambda w: word_key(quiver, w))


def is_string(word: StringWord, algebra: Algebra) -> bool:
    """Whether the word is a valid string for the socle-quotient rules."""
    quiver = algebra.quiver
    if word.is_trivial:
        if word.vertex not in quiver.vertices:
            raise UnknownArrow(f"unknown vertex {word.vertex}")
        return True
    for l in word.letters:
        if not quiver.has_arrow(l.arrow):
            raise UnknownArrow(f"unknown arrow {l.arrow!r}")
    for x, y in zip(word.letters, word.letters[1:]):
        if letter_target(quiver, x) != letter_source(quiver, y):
            return False
        if y == x.flipped():
            return False
    forbidden = [r.arrows for r in algebra.socle_rules]

    def run_ok(names: tuple[str, ...]) -> bool:
        for lhs in forbidden:
            k = len(lhs)
            if k > len(names):
                continue
            for i in range(len(names) - k + 1):
                if names[i: i + k] == lhs:
                    return False
        return True

    run: list[str] = []
    direction = None
    for l in list(word.letters) + [None]:
        d = None if l is None else l.inverse
        if d == direction:
            run.append(l.arrow)
            continue
        if run:
            names = tuple(reversed(run)) if direction else tuple(run)
            if not run_ok(names):
                return False
        run = [] if l is None else [l.arrow]
        direction = d
    return True


def _extend(word: StringWord, letter: Letter, algebra: Algebra) -> StringWord | None:
    if word.is_trivial:
        # the walk carries no letters, so check composability here
        if letter_target(algebra.quiver, letter) != word.vertex:
            return None
        new = StringWord((letter,))
    else:
        new = StringWord((letter,) + word.letters)
    return new if is_string(new, algebra) else None


def enumerate_strings(algebra: Algebra, length_cap: int | None = None) -> list[StringWord]:
    """All strings up to the cap, one canonical representative per class.

    Raises CapTooSmall when strings of the maximal length still appear,
    since longer ones could then exist.
    """
    quiver = algebra.quiver
    if length_cap is None:
        longest = max((q.length for q in algebra.basis), default=0)
        length_cap = longest + 2
    if length_cap < 1:
        raise CapTooSmall("length cap must be at least 1")
    words: list[StringWord] = [empty_word(v) for v in quiver.vertices]
    frontier = list(words)
    length = 0
    while frontier:
        length += 1
        nxt = []
        for w in frontier:
            start = word_vertices(quiver, w)[0]
            for a in quiver.arrows:
                for inv in (False, True):
                    l = Letter(a.name, inv)
                    if letter_target(quiver, l) != start:
                        continue
                    got = _extend(w, l, algebra)
                    if got is not None:
                        nxt.append(got)
        if nxt and length >= length_cap:
            raise CapTooSmall(
                f"strings of length {length_cap} still appear at the cap")
        words.extend(nxt)
        frontier = nxt
    classes = {canonical(w, quiver) for w in words}
    return sorted(classes, key=lambda w: word_key(quiver, w))


def maximal_directed_strings(algebra: Algebra) -> list[StringWord]:
    """Direct strings no arrow can prolong on the left."""
    quiver = algebra.quiver
    out = []
    for w in enumerate_strings(algebra):
        if w.length < 1:
            continue
        if any(l.inverse for l in w.letters):
            if not all(l.inverse for l in w.letters):
                continue
            w = w.inverse()
        if not any(_extend(w, Letter(a.name), algebra) is not None
                   for a in quiver.arrows):
            out.append(canonical(w, quiver))
    return sorted(set(out), key=lambda w: word_key(quiver, w))


# -- string modules -------------------------------------------------------------


def string_module(algebra: Algebra, word: StringWord) -> homology.Representation:
    """The module on the walk: one basis vector per visited vertex."""
    if not is_string(word, algebra):
        raise NotAString(f"{word} is not a string over this algebra")
    cache = getattr(algebra, "_string_module_cache", None)
    if cache is None:
        cache = algebra._string_module_cache = {}
    if word in cache:
        return cache[word]
    quiver = algebra.quiver
    verts = word_vertices(quiver, word)
    local: list[int] = []
    counts = {v: 0 for v in quiver.vertices}
    for v in verts:
        local.append(counts[v])
        counts[v] += 1
    mats = {a.name: np.zeros((counts[a.source], counts[a.target]), dtype=np.int64)
            for a in quiver.arrows}
    for j, l in enumerate(word.letters):
        if l.inverse:
            mats[l.arrow][local[j + 1], local[j]] = 1
        else:
            mats[l.arrow][local[j], local[j + 1]] = 1
    rep = homology.Representation(algebra, counts, mats)
    cache[word] = rep
    return rep


# -- hooks and cohooks ------------------------------------------------------------


def _grow_directed(word: StringWord, algebra: Algebra, inverse: bool) -> StringWord:
    """Prepend the maximal run of letters of one direction."""
    quiver = algebra.quiver
    while True:
        candidates = []
        for a in quiver.arrows:
            got = _extend(word, Letter(a.name, inverse), algebra)
            if got is not None:
                candidates.append(got)
        if not candidates:
            return word
        if len(candidates) > 1:
            raise StrcatError("ambiguous directed extension; "
                              "the quiver is not special biserial")
        word = candidates[0]


def hook_extensions_at_start(word: StringWord, algebra: Algebra) -> list[StringWord]:
    """Extensions D~ g w: the junction arrow g points into the old part,
    so the old module embeds into the new one."""
    quiver = algebra.quiver
    out = []
    for a in quiver.arrows:
        first = _extend(word, Letter(a.name, False), algebra)
        if first is not None:
            out.append(_grow_directed(first, algebra, inverse=True))
    return out


def cohook_extensions_at_start(word: StringWord, algebra: Algebra) -> list[StringWord]:
    """Extensions D g~ w: the junction points away from the old part, so
    the new module projects onto the old one."""
    quiver = algebra.quiver
    out = []
    for a in quiver.arrows:
        first = _extend(word, Letter(a.name, True), algebra)
        if first is not None:
            out.append(_grow_directed(first, algebra, inverse=False))
    return out


def _one_sided(word: StringWord, algebra: Algebra, side: str, mover) -> StringWord:
    if side not in ("left", "right"):
        raise StrcatError("side must be 'left' or 'right'")
    attempts = [word, word.inverse()] if side == "left" else \
        [word.inverse(), word]
    for w in attempts:
        got = mover(w, algebra)
        if got:
            return canonical(got[0], algebra.quiver)
    return None


def add_hook(algebra: Algebra, word: StringWord, side: str) -> StringWord:
    """One-step hook extension on the given side of the walk.

    The move attaches a junction arrow pointing into the walk plus the
    maximal directed tail; when the shown representative is on a peak the
    reversed representative is tried, so the operation acts on the class.
    With two admissible junction arrows, declaration order decides.
    """
    if not is_string(word, algebra):
        raise NotAString(f"{word} is not a string over this algebra")
    got = _one_sided(word, algebra, side, hook_extensions_at_start)
    if got is None:
        raise OnPeak(f"{word} admits no hook on the {side} side")
    return got


def add_cohook(algebra: Algebra, word: StringWord, side: str) -> StringWord:
    """One-step cohook extension; the extension projects onto the input."""
    if not is_string(word, algebra):
        raise NotAString(f"{word} is not a string over this algebra")
    got = _one_sided(word, algebra, side, cohook_extensions_at_start)
    if got is None:
        raise InDeep(f"{word} admits no cohook on the {side} side")
    return got


def class_moves(algebra: Algebra, word: StringWord) -> list[tuple[StringWord, StringWord, str]]:
    """All one-step moves of the class: (source, target, kind) triples.

    Hook moves give an arrow from the word to its extension; cohook moves
    give an arrow from the extension to the word.
    """
    quiver = algebra.quiver
    node = canonical(word, quiver)
    seen = set()
    edges = []
    orientations = [node] if node.is_trivial else [node, node.inverse()]
    for w in orientations:
        for ext in hook_extensions_at_start(w, algebra):
            edge = (node, canonical(ext, quiver), "hook")
            if edge not in seen:
                seen.add(edge)
                edges.append(edge)
        for ext in cohook_extensions_at_start(w, algebra):
            edge = (canonical(ext, quiver), node, "cohook")
            if edge not in seen:
                seen.add(edge)
                edges.append(edge)
    return edges


# -- named strings of the built-in families ------------------------------------------


@dataclass(frozen=True)
class StringName:
    family: str
    series: str
    index: int

    def __str__(self) -> str:
        return f"{self.series}{self.index}"


_NAME_RE = re.compile(r"^([A-Za-z])(\d+)$")


def parse_module_name(text: str) -> tuple[str, int]:
    m = _NAME_RE.match(text.strip())
    if not m:
        raise IndexOutOfRange(f"cannot parse module name {text!r}")
    return m.group(1).upper(), int(m.group(2))


def _series_ranges(family: str, m: int) -> dict[str, range]:
    if family == "ae1":
        return {"V": range(0, m)}
    if family == "ae2":
        return {"M": range(0, 2 * m), "N": range(0, 2 * m)}
    if family == "ae3":
        return {"V": range(1, m + 1), "X": range(1, m + 1),
                "Y": range(1, m + 1), "U": range(0, m)}
    raise StrcatError(f"unknown family {family!r}")


def named_string(family: str, m: int, name) -> StringWord:
    """The string for a series name such as V2, M3, X1, U0."""
    if isinstance(name, StringName):
        series, index = name.series, name.index
    elif isinstance(name, str):
        series, index = parse_module_name(name)
    else:
        series, index = name
    ranges = _series_ranges(family, m)
    if series not in ranges or index not in ranges[series]:
        raise IndexOutOfRange(
            f"{series}{index} is not a valid {family} module name for m={m}")
    if family == "ae1":
        return empty_word(0) if index == 0 else word_from_arrows(["a"] * index)
    if family == "ae2":
        start, other = ("a", "b") if series == "M" else ("b", "a")
        if index == 0:
            return empty_word(0 if series == "M" else 1)
        arrows = [start if k % 2 == 0 else other for k in range(index)]
        return word_from_arrows(arrows)
    # ae3
    loops = m - index
    if series == "V":
        if loops == 0:
            return empty_word(0)
        return StringWord(tuple(Letter("r", True) for _ in range(loops)))
    if series == "X":
        return StringWord(tuple(Letter("r", True) for _ in range(loops))
                          + (Letter("a"),))
    if series == "Y":
        return StringWord((Letter("b"),)
                          + tuple(Letter("r", True) for _ in range(loops)))
    if index == 0:
        return empty_word(1)
    return StringWord((Letter("b"),)
                      + tuple(Letter("r", True) for _ in range(loops))
                      + (Letter("a"),))


def family_node_names(family: str, m: int, quiver: Quiver) -> list[tuple[str, StringWord]]:
    """(name, canonical word) for every node, in report order."""
    out = []
    for series, rng in _series_ranges(family, m).items():
        for i in rng:
            word = canonical(named_string(family, m, StringName(family, series, i)),
                             quiver)
            out.append((f"{series}{i}", word))
    return out


def parse_string_literal(text: str, quiver: Quiver) -> StringWord:
    """Parse ``b,r~,a`` style literals; ``e0`` gives the trivial word."""
    text = text.strip()
    m = re.match(r"^e(\d+)$", text)
    if m:
        v = int(m.group(1))
        if v not in quiver.vertices:
            raise UnknownArrow(f"unknown vertex {v}")
        return empty_word(v)
    if "," in text:
        tokens = [t.strip() for t in text.split(",") if t.strip()]
    else:
        tokens = re.findall(r"[^~]~?", text)
    letters = []
    for tok in tokens:
        inv = tok.endswith("~")
        name = tok[:-1] if inv else tok
        if not quiver.has_arrow(name):
            raise UnknownArrow(f"unknown arrow {name!r}")
        letters.append(Letter(name, inv))
    if not letters:
        raise StrcatError("empty string literal")
    return StringWord(tuple(letters))
