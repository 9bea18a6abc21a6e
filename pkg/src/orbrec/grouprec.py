"""Finitely presented groups, orbifold fundamental group presentations and
Todd-Coxeter coset enumeration.

Words are tuples of signed 1-based generator indices: ``2`` is the second
generator and ``-2`` its inverse.

Presentation text format::

    gens: b1 b2
    rels: b1^2 b2^2 (b1 b2)^3

Relators are separated by whitespace (or commas) at the top level; inside
parentheses whitespace concatenates.  ``g^-1`` is the inverse of ``g``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .quotients import IsotropyGroupKind

Word = tuple[int, ...]

DEFAULT_TC_LIMIT = 100_000


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclically_reduce(word: Sequence[int]) -> Word:
    w = list(free_reduce(word))
    while len(w) >= 2 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert_word(word: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(word))


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple[str, ...] = ()
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(self, "relators", tuple(tuple(r) for r in self.relators))
        if len(set(self.generators)) != len(self.generators):
            raise ValueError(f"repeated generator name in {self.generators}")
        n = len(self.generators)
        for rel in self.relators:
            for x in rel:
                if x == 0 or abs(x) > n:
                    raise ValueError(f"relator {rel} uses an index outside 1..{n}")

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name) + 1
        except ValueError:
            raise ValueError(f"unknown generator {name!r}") from None

    def reduced(self) -> "GroupPresentation":
        """Relators freely and cyclically reduced, empty ones dropped."""
        rels = tuple(r for r in (cyclically_reduce(r) for r in self.relators) if r)
        return GroupPresentation(self.generators, rels)

    def __str__(self):
        return format_presentation(self)


# text format ----------------------------------------------------------------

def _format_block(word: Word, names: Sequence[str]) -> str:
    """Run-length compressed word, e.g. ``b1^2 b2^-1``."""
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        name = names[abs(word[i]) - 1]
        e = (j - i) * (1 if word[i] > 0 else -1)
        parts.append(name if e == 1 else f"{name}^{e}")
        i = j
    return " ".join(parts)


def _primitive_root(word: Word) -> tuple[Word, int]:
    n = len(word)
    for d in range(1, n + 1):
        if n % d == 0 and word[:d] * (n // d) == word:
            return word[:d], n // d
    return word, 1


def format_word(word: Word, names: Sequence[str]) -> str:
    if not word:
        return "1"
    root, e = _primitive_root(tuple(word))
    if len(set(root)) == 1 and len(root) == 1:
        return _format_block(tuple(word), names)
    if e > 1:
        return f"({_format_block(root, names)})^{e}"
    block = _format_block(tuple(word), names)
    return block if " " not in block else f"({block})"


def format_presentation(p: GroupPresentation) -> str:
    gens = " ".join(p.generators)
    rels = " ".join(format_word(r, p.generators) for r in p.relators)
    return f"gens: {gens}".rstrip() + "\n" + f"rels: {rels}".rstrip() + "\n"


_PTOKEN = re.compile(r"\s*(?:(-?\d+)|([A-Za-z_][A-Za-z0-9_]*)|([()^,]))")


class PresentationSyntaxError(ValueError):
    pass


def _parse_words(text: str, gens: Sequence[str], lineno: int) -> list[Word]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _PTOKEN.match(text, pos)
        if m is None:
            raise PresentationSyntaxError(f"line {lineno}: cannot read {text[pos:].strip()!r}")
        tokens.append((m.lastindex, m.group(m.lastindex), m.start(m.lastindex)))
        pos = m.end()
    tokens.append((0, "", len(text)))
    i = 0

    def fail(msg):
        col = tokens[i][2] + 1
        raise PresentationSyntaxError(f"line {lineno}, column {col}: {msg}")

    def exponent() -> int:
        nonlocal i
        if tokens[i][1] == "^":
            i += 1
            if tokens[i][0] != 1:
                fail("expected an integer exponent")
            e = int(tokens[i][1])
            i += 1
            return e
        return 1

    def atom() -> Word:
        nonlocal i
        kind, value, _ = tokens[i]
        if kind == 2:
            if value not in gens:
                fail(f"unknown generator {value!r}")
            i += 1
            base: Word = (gens.index(value) + 1,)
        elif value == "(":
            i += 1
            base = ()
            while tokens[i][1] != ")":
                if tokens[i][0] == 0:
                    fail("unclosed parenthesis")
                base += atom()
            i += 1
        elif value == "1" and kind == 1:
            i += 1
            base = ()
        else:
            fail(f"unexpected {value or 'end of line'!r}")
        e = exponent()
        return base * e if e >= 0 else invert_word(base) * (-e)

    words = []
    while tokens[i][0] != 0:
        if tokens[i][1] == ",":
            i += 1
            continue
        words.append(free_reduce(atom()))
    return words


def parse_presentation(text: str) -> GroupPresentation:
    gens_line = rels_line = None
    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        key, sep, rest = stripped.partition(":")
        key = key.strip()
        if not sep or key not in ("gens", "rels"):
            raise PresentationSyntaxError(f"line {lineno}: expected 'gens:' or 'rels:'")
        if key == "gens":
            if gens_line is not None:
                raise PresentationSyntaxError(f"line {lineno}: repeated 'gens:'")
            gens_line = (lineno, rest)
        else:
            if rels_line is not None:
                raise PresentationSyntaxError(f"line {lineno}: repeated 'rels:'")
            rels_line = (lineno, rest)
    if gens_line is None:
        raise PresentationSyntaxError("missing 'gens:' line")
    gens = tuple(gens_line[1].split())
    for g in gens:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", g):
            raise PresentationSyntaxError(f"line {gens_line[0]}: bad generator name {g!r}")
    rels = _parse_words(rels_line[1], gens, rels_line[0]) if rels_line else []
    return GroupPresentation(gens, tuple(r for r in rels if r))


# orbifold fundamental group presentations ------------------------------------

LOCAL_KINDS = ("regular", "mirror", "cone", "corner")


@dataclass(frozen=True)
class LocalSingularityDescriptor:
    kind: str
    order: int = 1

    def __post_init__(self):
        if self.kind not in LOCAL_KINDS:
            raise ValueError(f"unknown singularity kind {self.kind!r}")
        if self.order < 1:
            raise ValueError(f"order must be at least 1, got {self.order}")
        if self.kind == "corner" and self.order % 2:
            raise ValueError(f"corner point order must be even, got {self.order}")
        if self.kind == "mirror" and self.order != 2:
            raise ValueError("a mirror edge has order 2")

    @classmethod
    def regular(cls):
        return cls("regular", 1)

    @classmethod
    def mirror_edge(cls):
        return cls("mirror", 2)

    @classmethod
    def cone_point(cls, k: int):
        return cls("cone", k)

    @classmethod
    def corner_point(cls, order: int):
        return cls("corner", order)


def hnd_general(
    base: GroupPresentation,
    mirrors: Sequence[str] = (),
    cones: Sequence[tuple[Sequence[int], int]] = (),
    corners: Sequence[tuple[str, str, int]] = (),
) -> GroupPresentation:
    """Extend a presentation of pi_1(X_reg) to the orbifold fundamental group.

    ``mirrors`` names one path class to a codimension-1 stratum each; every
    name becomes a new generator ``b`` with ``b^2 = 1``.  ``cones`` pairs a
    loop word over the base generators with the order k of the cone point
    (relation ``w^k``).  ``corners`` pairs two mirror names with the even
    order 2k of a corner point (relation ``(b b')^k``).
    """
    gens = list(base.generators)
    rels = list(base.relators)
    nbase = len(gens)
    for name in mirrors:
        if name in gens:
            raise ValueError(f"mirror generator {name!r} clashes with an existing generator")
        gens.append(name)
        i = len(gens)
        rels.append((i, i))
    for word, k in cones:
        word = tuple(word)
        if any(x == 0 or abs(x) > nbase for x in word):
            raise ValueError(f"cone loop {word} is not a word in the base generators")
        if k < 1:
            raise ValueError(f"cone order must be at least 1, got {k}")
        rels.append(word * k)
    for m1, m2, order in corners:
        if order % 2 or order < 2:
            raise ValueError(f"corner order must be even and positive, got {order}")
        for m in (m1, m2):
            if m not in mirrors:
                raise ValueError(f"corner refers to unknown mirror {m!r}")
        i, j = gens.index(m1) + 1, gens.index(m2) + 1
        rels.append((i, j) * (order // 2))
    return GroupPresentation(tuple(gens), tuple(rels))


def hnd_local_presentation(d: LocalSingularityDescriptor) -> GroupPresentation:
    """Orbifold fundamental group of the local model around one point.

    The regular part of a corner sector is contractible and that of a
    punctured cone has fundamental group Z generated by a loop ``a``.
    """
    trivial = GroupPresentation()
    if d.kind == "regular":
        return trivial
    if d.kind == "mirror":
        return hnd_general(trivial, mirrors=("b",))
    if d.kind == "cone":
        return hnd_general(GroupPresentation(("a",)), cones=[((1,), d.order)])
    return hnd_general(trivial, mirrors=("b1", "b2"), corners=[("b1", "b2", d.order)])


# coset enumeration ------------------------------------------------------------

class _Exceeded(Exception):
    pass


@dataclass(frozen=True)
class CosetTable:
    """Result of enumerating the cosets of the trivial subgroup.

    When complete, ``rows[c][g]`` is the coset ``c . generator(g)`` and
    cosets are numbered in breadth-first order from the identity coset 0;
    ``words[c]`` is a shortest representative of coset c.
    """

    status: str
    limit: int
    rows: tuple[tuple[int, ...], ...] = ()
    words: tuple[Word, ...] = ()

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    @property
    def order(self) -> int | None:
        return len(self.rows) if self.complete else None

    @cached_property
    def inverse_rows(self) -> tuple[tuple[int, ...], ...]:
        inv = [[0] * len(self.rows[0]) for _ in self.rows] if self.rows else []
        for c, row in enumerate(self.rows):
            for g, d in enumerate(row):
                inv[d][g] = c
        return tuple(map(tuple, inv))

    def act(self, coset: int, word: Sequence[int]) -> int:
        inverse = self.inverse_rows
        for x in word:
            coset = self.rows[coset][x - 1] if x > 0 else inverse[coset][-x - 1]
        return coset


def todd_coxeter(p: GroupPresentation, limit: int = DEFAULT_TC_LIMIT) -> CosetTable:
    """HLT coset enumeration over the trivial subgroup.

    Cosets are processed in creation order; for each live coset every relator
    is scanned and filled, then any missing entries are defined.  Stops with
    status ``"exceeded"`` once ``limit`` cosets have been defined.
    """
    if limit < 1:
        raise ValueError("coset limit must be at least 1")
    ngens = len(p.generators)
    ncols = 2 * ngens
    rels = [[2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1 for x in r] for r in p.reduced().relators]

    table: list[list[int | None]] = [[None] * ncols]
    parent = [0]

    def find(c: int) -> int:
        root = c
        while parent[root] != root:
            root = parent[root]
        while parent[c] != root:
            parent[c], c = root, parent[c]
        return root

    def define(c: int, x: int) -> None:
        if len(table) >= limit:
            raise _Exceeded
        d = len(table)
        table.append([None] * ncols)
        parent.append(d)
        table[c][x] = d
        table[d][x ^ 1] = c

    def merge(a: int, b: int, queue: list[int]) -> None:
        a, b = find(a), find(b)
        if a == b:
            return
        lo, hi = min(a, b), max(a, b)
        parent[hi] = lo
        queue.append(hi)

    def coincidence(a: int, b: int) -> None:
        queue: list[int] = []
        merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(ncols):
                f = table[e][x]
                if f is None:
                    continue
                table[f][x ^ 1] = None
                e1, f1 = find(e), find(f)
                if table[e1][x] is not None:
                    merge(f1, table[e1][x], queue)
                elif table[f1][x ^ 1] is not None:
                    merge(e1, table[f1][x ^ 1], queue)
                else:
                    table[e1][x] = f1
                    table[f1][x ^ 1] = e1

    def scan_and_fill(c: int, rel: list[int]) -> None:
        f, b = c, c
        i, j = 0, len(rel) - 1
        while True:
            while i <= j and table[f][rel[i]] is not None:
                f = table[f][rel[i]]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][rel[j] ^ 1] is not None:
                b = table[b][rel[j] ^ 1]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][rel[i]] = b
                table[b][rel[i] ^ 1] = f
                return
            define(f, rel[i])

    try:
        c = 0
        while c < len(table):
            for rel in rels:
                if parent[c] != c:
                    break
                scan_and_fill(c, rel)
            if parent[c] == c:
                for x in range(ncols):
                    if table[c][x] is None:
                        define(c, x)
            c += 1
    except _Exceeded:
        return CosetTable("exceeded", limit)

    # renumber live cosets breadth-first from coset 0
    number = {0: 0}
    words: list[Word] = [()]
    order = [0]
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for x in range(ncols):
            d = find(table[c][x])
            if d not in number:
                number[d] = len(order)
                order.append(d)
                gen = x // 2 + 1
                words.append(words[number[c]] + ((gen if x % 2 == 0 else -gen),))
                queue.append(d)
    rows = tuple(tuple(number[find(table[c][2 * g])] for g in range(ngens)) for c in order)
    return CosetTable("complete", limit, rows, tuple(words))


def group_order(p: GroupPresentation, limit: int = DEFAULT_TC_LIMIT) -> int | None:
    return todd_coxeter(p, limit).order


# classification ---------------------------------------------------------------

@dataclass(frozen=True)
class MultiplicationTable:
    table: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.table[a].index(0)

    def element_order(self, a: int) -> int:
        n, x = 1, a
        while x != 0:
            x = self.table[x][a]
            n += 1
        return n

    def power(self, a: int, e: int) -> int:
        x = 0
        for _ in range(e):
            x = self.table[x][a]
        return x

    def cyclic_subgroup(self, a: int) -> list[int]:
        out, x = [0], a
        while x != 0:
            out.append(x)
            x = self.table[x][a]
        return out


def multiplication_table(ct: CosetTable) -> MultiplicationTable:
    """Group law read off a complete coset table of the trivial subgroup."""
    if not ct.complete:
        raise ValueError("coset enumeration did not complete")
    n = len(ct.rows)
    # right multiplication by element j = follow j's representative word
    table = tuple(tuple(ct.act(i, ct.words[j]) for j in range(n)) for i in range(n))
    return MultiplicationTable(table)


def _dihedral_rank(mt: MultiplicationTable) -> int | None:
    n = mt.order
    if n % 2:
        return None
    k = n // 2
    for r in range(n):
        if mt.element_order(r) != k:
            continue
        rotations = set(mt.cyclic_subgroup(r))
        r_inv = mt.inverse(r)
        for s in range(n):
            if s in rotations or mt.mul(s, s) != 0:
                continue
            if mt.mul(mt.mul(s, r), s) == r_inv:
                return k
    return None


def classify_finite_group(
    p: GroupPresentation, limit: int = DEFAULT_TC_LIMIT, *, reflections: bool = False
) -> IsotropyGroupKind | None:
    """Cyclic or dihedral isomorphism type of the group, else None.

    Z_2 and D_1 are the same abstract group; ``reflections`` says the
    generators act as reflections, in which case an order-2 group is reported
    as ``Dihedral(1)`` rather than ``Cyclic(2)``.
    """
    ct = todd_coxeter(p, limit)
    if not ct.complete:
        return None
    mt = multiplication_table(ct)
    n = mt.order
    dihedral = _dihedral_rank(mt)
    if dihedral is not None and (dihedral > 1 or reflections):
        return IsotropyGroupKind.dihedral(dihedral)
    if any(mt.element_order(a) == n for a in range(n)):
        return IsotropyGroupKind.cyclic(n)
    return None
