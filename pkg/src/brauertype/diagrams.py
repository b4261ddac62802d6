"""Diagrams of the partition monoid and their multiplication.

A diagram of degree ``n`` is a set partition of the ``2n`` points
``1..n`` (the left pins) and ``1'..n'`` (the right pins).  Internally a
point is an index: ``i`` is stored as ``i - 1`` and ``i'`` as ``n + i - 1``.
A diagram is kept as a restricted growth string over those indices (block
numbers assigned in order of first appearance), which makes the encoding
unique, hashable and cheap to compare.
"""

from __future__ import annotations

import enum
from typing import Iterable, NamedTuple, Sequence

from .errors import DegreeMismatch, NotAMember, NotAPermutation, ParseError

MAX_DEGREE = 32


class BlockKind(enum.Enum):
    LINE = "line"
    GENERALIZED_LINE = "generalized line"
    BRACKET = "bracket"
    GENERALIZED_BRACKET = "generalized bracket"
    POINT = "point"


class MonoidFamily(enum.Enum):
    C = "C"
    S = "S"
    IS = "IS"
    B = "B"
    PB = "PB"
    IP = "IP"
    IT = "IT"

    @classmethod
    def parse(cls, name: str) -> "MonoidFamily":
        try:
            return cls[name.upper()]
        except KeyError:
            raise ValueError(f"unknown monoid family {name!r}") from None


def _check_degree(n):
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"degree must be an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"degree must be at least 1, got {n}")
    if n > MAX_DEGREE:
        raise ValueError(f"degree {n} exceeds the supported maximum {MAX_DEGREE}")


def _growth(labels):
    """Relabel ``labels`` so blocks are numbered by first appearance."""
    seen = {}
    out = []
    for x in labels:
        y = seen.get(x)
        if y is None:
            y = seen[x] = len(seen)
        out.append(y)
    return tuple(out)


def point_name(p: int, n: int) -> str:
    """Text token for point index ``p``: ``'3'`` or ``"3'"``."""
    return str(p + 1) if p < n else f"{p - n + 1}'"


class Diagram:
    """An element of the partition monoid of degree ``n``.

    ``blocks`` is an iterable of blocks, each an iterable of point
    indices (``0..n-1`` for ``1..n`` and ``n..2n-1`` for ``1'..n'``).
    Instances are immutable and hash on their normalized encoding.
    """

    __slots__ = ("n", "labels", "_hash", "_blocks")

    def __init__(self, n: int, blocks: Iterable[Iterable[int]]):
        _check_degree(n)
        owner = [None] * (2 * n)
        for b, block in enumerate(blocks):
            block = list(block)
            if not block:
                raise ValueError("blocks must be non-empty")
            for p in block:
                if not isinstance(p, int) or not 0 <= p < 2 * n:
                    raise ValueError(f"point index {p!r} out of range for degree {n}")
                if owner[p] is not None:
                    raise ValueError(f"point {point_name(p, n)} appears in more than one block")
                owner[p] = b
        missing = [point_name(p, n) for p in range(2 * n) if owner[p] is None]
        if missing:
            raise ValueError(f"points not covered by any block: {', '.join(missing)}")
        self._set(n, _growth(owner))

    def _set(self, n, labels):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_hash", hash((n, labels)))
        object.__setattr__(self, "_blocks", None)

    @classmethod
    def from_labels(cls, n: int, labels: Sequence[int]) -> "Diagram":
        """Build from any block labelling of the ``2n`` points."""
        if len(labels) != 2 * n:
            raise ValueError(f"expected {2 * n} labels, got {len(labels)}")
        _check_degree(n)
        return cls._trusted(n, _growth(labels))

    @classmethod
    def _trusted(cls, n, labels):
        d = cls.__new__(cls)
        d._set(n, labels)
        return d

    def __setattr__(self, name, value):
        raise AttributeError("Diagram is immutable")

    def __eq__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return self.n == other.n and self.labels == other.labels

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        if not isinstance(other, Diagram):
            return NotImplemented
        return (self.n, self.labels) < (other.n, other.labels)

    def __reduce__(self):
        return (Diagram.from_labels, (self.n, self.labels))

    def __repr__(self):
        return f"Diagram({self.n}, {format_text(self)!r})"

    def __str__(self):
        return format_text(self)

    def __mul__(self, other):
        return multiply(self, other).product

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        """Blocks as sorted index tuples, ordered by least element."""
        if self._blocks is None:
            out = [[] for _ in range(max(self.labels) + 1)]
            for p, b in enumerate(self.labels):
                out[b].append(p)
            object.__setattr__(self, "_blocks", tuple(tuple(b) for b in out))
        return self._blocks

    def flip(self) -> "Diagram":
        """Swap ``i`` and ``i'`` for every ``i``; an anti-automorphism."""
        n = self.n
        return Diagram.from_labels(n, self.labels[n:] + self.labels[:n])


class MulResult(NamedTuple):
    product: Diagram
    circles: int


def _require_same_degree(a, b):
    if a.n != b.n:
        raise DegreeMismatch(f"degree mismatch: {a.n} vs {b.n}")


def multiply(a: Diagram, b: Diagram) -> MulResult:
    """Compose ``a`` then ``b``, gluing the right pins of ``a`` to the left pins of ``b``.

    Works on block ids: union-find over the blocks of ``a`` and ``b``,
    joined along the shared middle row.  Components touching neither the
    left pins of ``a`` nor the right pins of ``b`` are the dead circles.
    """
    _require_same_degree(a, b)
    n = a.n
    la, lb = a.labels, b.labels
    ka = max(la) + 1
    parent = list(range(ka + max(lb) + 1))

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for j in range(n):
        x = find(la[n + j])
        y = find(ka + lb[j])
        if x != y:
            if x < y:
                parent[y] = x
            else:
                parent[x] = y

    out = [find(la[i]) for i in range(n)]
    out.extend(find(ka + lb[n + j]) for j in range(n))
    outer = set(out)
    circles = sum(1 for x in range(len(parent)) if parent[x] == x and x not in outer)
    return MulResult(Diagram._trusted(n, _growth(out)), circles)


def star_multiply(a: Diagram, b: Diagram) -> Diagram:
    """The deformed product: ``i`` and ``j'`` share a block when ``i`` lies in
    a block ``X`` of ``a`` and ``j'`` in a block ``Y`` of ``b`` whose left
    trace equals the (non-empty) right trace of ``X``.  All other points
    become singletons.

    An empty trace never matches: letting it match makes the product
    non-associative already in degree 2.
    """
    _require_same_degree(a, b)
    n = a.n
    by_trace = {}
    for block in b.blocks:
        trace = frozenset(p for p in block if p < n)
        if trace:
            by_trace[trace] = block
    labels = list(range(2 * n))
    for block in a.blocks:
        trace = frozenset(p - n for p in block if p >= n)
        other = by_trace.get(trace)
        if other is None or block[0] >= n or other[-1] < n:
            continue
        for p in block:
            if p < n:
                labels[p] = block[0]
        for q in other:
            if q >= n:
                labels[q] = block[0]
    return Diagram.from_labels(n, labels)


# -- block classification ----------------------------------------------------


def _block(d, index):
    blocks = d.blocks
    if not isinstance(index, int) or not 0 <= index < len(blocks):
        raise IndexError(f"block index {index!r} out of range (diagram has {len(blocks)} blocks)")
    return blocks[index]


def _kind_of(block, n):
    if len(block) == 1:
        return BlockKind.POINT
    top = block[0] < n
    bottom = block[-1] >= n
    if top and bottom:
        return BlockKind.LINE if len(block) == 2 else BlockKind.GENERALIZED_LINE
    return BlockKind.BRACKET if len(block) == 2 else BlockKind.GENERALIZED_BRACKET


def classify_block(d: Diagram, block_index: int) -> BlockKind:
    """Most specific kind of the block: point, line, bracket, or a generalized one."""
    return _kind_of(_block(d, block_index), d.n)


def is_generalized_line(d: Diagram, block_index: int) -> bool:
    """True when the block meets both sides (every line counts)."""
    block = _block(d, block_index)
    return block[0] < d.n <= block[-1]


_ALLOWED = {
    MonoidFamily.S: {BlockKind.LINE},
    MonoidFamily.IS: {BlockKind.LINE, BlockKind.POINT},
    MonoidFamily.B: {BlockKind.LINE, BlockKind.BRACKET},
    MonoidFamily.PB: {BlockKind.LINE, BlockKind.BRACKET, BlockKind.POINT},
    MonoidFamily.IP: {BlockKind.LINE, BlockKind.GENERALIZED_LINE},
}


def member(d: Diagram, family: MonoidFamily) -> bool:
    if family is MonoidFamily.C:
        return True
    n = d.n
    if family is MonoidFamily.IT:
        for block in d.blocks:
            top = sum(1 for p in block if p < n)
            if top == 0 or 2 * top != len(block):
                return False
        return True
    allowed = _ALLOWED[family]
    return all(_kind_of(block, n) in allowed for block in d.blocks)


def rank(d: Diagram) -> int:
    """Number of blocks meeting both sides."""
    n = d.n
    return sum(1 for block in d.blocks if block[0] < n <= block[-1])


def it_type(d: Diagram) -> tuple[int, ...]:
    """Multiplicities ``(m_1, ..., m_n)`` of the block sizes on the left side."""
    if not member(d, MonoidFamily.IT):
        raise NotAMember(f"{format_text(d)} is not in IT_{d.n}")
    n = d.n
    counts = [0] * n
    for block in d.blocks:
        counts[len(block) // 2 - 1] += 1
    return tuple(counts)


class PBCounts(NamedTuple):
    lines: int
    left_brackets: int
    right_brackets: int
    left_points: int
    right_points: int


def pb_counts(d: Diagram) -> PBCounts:
    if not member(d, MonoidFamily.PB):
        raise NotAMember(f"{format_text(d)} is not in PB_{d.n}")
    n = d.n
    r = b1 = b2 = p1 = p2 = 0
    for block in d.blocks:
        top = block[0] < n
        bottom = block[-1] >= n
        if top and bottom:
            r += 1
        elif len(block) == 2:
            if top:
                b1 += 1
            else:
                b2 += 1
        elif top:
            p1 += 1
        else:
            p2 += 1
    assert n == r + 2 * b1 + p1 == r + 2 * b2 + p2
    return PBCounts(r, b1, b2, p1, p2)


def pb_type(d: Diagram) -> tuple[int, int, int, int]:
    c = pb_counts(d)
    if c.left_brackets >= c.right_brackets:
        return (c.right_brackets, c.left_brackets - c.right_brackets, 0, c.left_points)
    return (c.left_brackets, 0, c.right_brackets - c.left_brackets, c.right_points)


# -- constructors ------------------------------------------------------------


def _check_index(i, n, upper):
    if not isinstance(i, int) or not 1 <= i <= upper:
        raise ValueError(f"index {i!r} out of range 1..{upper} for degree {n}")


def identity(n: int) -> Diagram:
    _check_degree(n)
    return Diagram._trusted(n, tuple(range(n)) * 2)


def from_permutation(perm: Sequence[int]) -> Diagram:
    """Diagram with lines ``{i, perm[i]'}``; ``perm`` is 1-based one-line notation."""
    n = len(perm)
    if sorted(perm) != list(range(1, n + 1)):
        raise NotAPermutation(f"{tuple(perm)!r} is not a permutation of 1..{n}")
    labels = [0] * (2 * n)
    for i, j in enumerate(perm):
        labels[i] = i
        labels[n + j - 1] = i
    return Diagram.from_labels(n, labels)


def is_permutation(d: Diagram) -> bool:
    return member(d, MonoidFamily.S)


def as_permutation(d: Diagram) -> tuple[int, ...]:
    """1-based one-line notation of a permutation diagram."""
    if not is_permutation(d):
        raise NotAPermutation(f"{format_text(d)} is not a permutation diagram")
    n = d.n
    return tuple(block[1] - n + 1 for block in d.blocks)


def s(i: int, n: int) -> Diagram:
    """The transposition ``(i, i+1)``."""
    _check_degree(n)
    _check_index(i, n, n - 1)
    perm = list(range(1, n + 1))
    perm[i - 1], perm[i] = perm[i], perm[i - 1]
    return from_permutation(perm)


def pi(i: int, n: int) -> Diagram:
    """Brackets ``{i, i+1}`` and ``{i', (i+1)'}``, lines elsewhere."""
    _check_degree(n)
    _check_index(i, n, n - 1)
    labels = list(range(n)) * 2
    labels[i] = labels[i - 1]
    labels[n + i - 1] = labels[n + i] = n
    return Diagram.from_labels(n, labels)


def rho(i: int, n: int) -> Diagram:
    """Block ``{i, i+1, i', (i+1)'}``, lines elsewhere."""
    _check_degree(n)
    _check_index(i, n, n - 1)
    labels = list(range(n)) * 2
    labels[i] = labels[n + i] = i - 1
    return Diagram.from_labels(n, labels)


def sigma_point(i: int, n: int) -> Diagram:
    """Points ``{i}`` and ``{i'}``, lines elsewhere."""
    _check_degree(n)
    _check_index(i, n, n)
    labels = list(range(n)) * 2
    labels[n + i - 1] = n
    return Diagram.from_labels(n, labels)


def permute(d: Diagram, top: Sequence[int], bottom: Sequence[int]) -> Diagram:
    """Move left point ``i`` to ``top[i]`` and right point ``i'`` to ``bottom[i]'`` (0-based)."""
    n = d.n
    labels = [0] * (2 * n)
    src = d.labels
    for i in range(n):
        labels[top[i]] = src[i]
        labels[n + bottom[i]] = src[n + i]
    return Diagram.from_labels(n, labels)


# -- text format -------------------------------------------------------------


def format_text(d: Diagram) -> str:
    n = d.n
    return "{" + "|".join(",".join(point_name(p, n) for p in block) for block in d.blocks) + "}"


def _parse_token(tok, where):
    tok = tok.strip()
    primed = tok.endswith("'")
    digits = tok[:-1] if primed else tok
    if not digits.isdigit() or int(digits) < 1:
        raise ParseError(f"bad point token {tok!r} in {where}")
    return int(digits), primed


def parse(text: str, n: int | None = None) -> Diagram:
    """Parse ``{1,2|1',2'}``; ``n`` defaults to the largest index present."""
    src = text.strip()
    if len(src) < 2 or src[0] != "{" or src[-1] != "}":
        raise ParseError(f"diagram text must look like {{1,2|1',2'}}, got {text!r}")
    body = src[1:-1].strip()
    if not body:
        raise ParseError("empty diagram: degree must be at least 1")
    raw = []
    for chunk in body.split("|"):
        if not chunk.strip():
            raise ParseError(f"empty block in {text!r}")
        raw.append([_parse_token(tok, text) for tok in chunk.split(",")])
    top = max(i for block in raw for i, _ in block)
    if n is None:
        n = top
    elif top > n:
        raise ParseError(f"point {top} exceeds degree {n}")
    if n > MAX_DEGREE:
        raise ParseError(f"degree {n} exceeds the supported maximum {MAX_DEGREE}")
    owner = {}
    for b, block in enumerate(raw):
        for i, primed in block:
            p = i - 1 + (n if primed else 0)
            if p in owner:
                raise ParseError(f"point {point_name(p, n)} is duplicated")
            owner[p] = b
    missing = [point_name(p, n) for p in range(2 * n) if p not in owner]
    if missing:
        raise ParseError(f"missing point(s): {', '.join(missing)}")
    return Diagram.from_labels(n, [owner[p] for p in range(2 * n)])


# -- ASCII rendering ---------------------------------------------------------


def render_ascii(d: Diagram) -> str:
    """Draw ``d`` as a chip: left pins ``1..n``, right pins ``1'..n'``.

    Each block that is not a straight line ``{i, i'}`` gets its own vertical
    lane: one-sided blocks on their own side, crossing blocks in the middle.
    A pin joins its lane at a ``+``.  Where the strokes of a row's two pins
    overlap they are drawn with ``=``; straight lines are a plain ``-`` row.
    """
    n = d.n
    blocks = d.blocks
    straight = {b for b, block in enumerate(blocks) if len(block) == 2 and block[1] == block[0] + n}
    left = [b for b, block in enumerate(blocks) if block[-1] < n and len(block) > 1]
    middle = [b for b, block in enumerate(blocks)
              if block[0] < n <= block[-1] and b not in straight]
    right = [b for b, block in enumerate(blocks) if block[0] >= n and len(block) > 1]
    lanes = left + middle + right
    width = max(3, 2 * len(lanes) + 1)
    column = {b: 1 + 2 * k for k, b in enumerate(lanes)}
    if not lanes:
        width = 5

    rows = 2 * n - 1
    grid = [[" "] * width for _ in range(rows)]
    for b in lanes:
        rs = sorted({(p if p < n else p - n) for p in blocks[b]})
        c = column[b]
        for r in range(2 * rs[0], 2 * rs[-1] + 1):
            grid[r][c] = "|"

    labels = d.labels
    left_stub, right_stub = [], []
    for i in range(n):
        r = 2 * i
        bl, br = labels[i], labels[n + i]
        single_l = len(blocks[bl]) == 1
        single_r = len(blocks[br]) == 1
        if bl == br and bl in straight:
            for c in range(width):
                grid[r][c] = "-"
            left_stub.append("-")
            right_stub.append("-")
            continue
        lo = None if single_l else column[bl]
        hi = None if single_r else column[br]
        overlap = lo is not None and hi is not None and hi < lo
        if lo is not None:
            for c in range(lo):
                grid[r][c] = "="if overlap and c >= hi else "-"
        if hi is not None:
            for c in range(hi + 1, width):
                grid[r][c] = "=" if overlap and c <= lo else "-"
        if lo is not None:
            grid[r][lo] = "+"
        if hi is not None:
            grid[r][hi] = "+"
        left_stub.append(" " if single_l else "-")
        right_stub.append(" " if single_r else "-")

    wl = len(str(n))
    wr = wl + 1
    lines = []
    for r in range(rows):
        if r % 2 == 0:
            i = r // 2
            lines.append(f"{i + 1:>{wl}} o{left_stub[i]}{''.join(grid[r])}{right_stub[i]}o {i + 1}'".rstrip())
        else:
            lines.append(f"{'':>{wl}}   {''.join(grid[r])}".rstrip())
    return "\n".join(lines) + "\n"
