"""Monoid presentations for the Brauer-type monoids, and machinery to check them.

Four built-in presentations are provided (Brauer, factorizable IT,
partial Brauer, symmetric inverse).  Around them:

* :func:`evaluate` maps a word to its diagram,
* :func:`check_soundness` verifies every relation holds among diagrams,
* :func:`derive` searches for a rewriting proof of a relation,
* :func:`enumerate_presented` runs a coset-style enumeration of the
  presented monoid and reports its size with shortlex normal forms.

Generator tokens in text: ``s`` (sigma, a transposition), ``t`` (theta,
image a bracket pair), ``r`` (tau, image a merged block), ``v``
(vartheta, image a pair of points), each followed by its index; ``e`` is
the empty word.
"""

from __future__ import annotations

import enum
import functools
import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from . import diagrams as dg
from .diagrams import Diagram
from .errors import CapExceeded, DegreeTooSmall, ParseError


class Kind(enum.IntEnum):
    SIGMA = 0
    THETA = 1
    TAU = 2
    VARTHETA = 3


_LETTER = {Kind.SIGMA: "s", Kind.THETA: "t", Kind.TAU: "r", Kind.VARTHETA: "v"}
_FROM_LETTER = {v: k for k, v in _LETTER.items()}
_LONG_NAMES = {"sigma": Kind.SIGMA, "theta": Kind.THETA, "tau": Kind.TAU, "vartheta": Kind.VARTHETA}


class GenSym(NamedTuple):
    """An abstract generator; tuple order is the shortlex letter order."""

    kind: Kind
    index: int

    def __str__(self):
        return f"{_LETTER[self.kind]}{self.index}"

    def max_index(self, n):
        return n if self.kind is Kind.VARTHETA else n - 1

    def image(self, n) -> Diagram:
        if not 1 <= self.index <= self.max_index(n):
            raise ValueError(f"{self} is not a valid generator in degree {n}")
        return _generator_image(self.kind, self.index, n)


Word = tuple  # tuple[GenSym, ...]


def sigma(i):
    return GenSym(Kind.SIGMA, i)


def theta(i):
    return GenSym(Kind.THETA, i)


def tau(i):
    return GenSym(Kind.TAU, i)


def vartheta(i):
    return GenSym(Kind.VARTHETA, i)


def parse_symbol(token: str) -> GenSym:
    tok = token.strip()
    head = tok.rstrip("0123456789")
    digits = tok[len(head):]
    kind = _FROM_LETTER.get(head, _LONG_NAMES.get(head.lower()))
    if kind is None or not digits or int(digits) < 1:
        raise ParseError(f"bad generator symbol {token!r}")
    return GenSym(kind, int(digits))


def parse_word(text: str) -> Word:
    """``"s1 t2 s1"`` -> word; ``"e"`` or blank -> the empty word."""
    tokens = text.replace("*", " ").replace("·", " ").split()
    if tokens == ["e"]:
        return ()
    return tuple(parse_symbol(t) for t in tokens)


def format_word(word: Sequence[GenSym]) -> str:
    return " ".join(str(g) for g in word) if word else "e"


def shortlex_key(word):
    return (len(word), tuple(word))


# -- presentations -----------------------------------------------------------


class PresentationName(enum.Enum):
    BRAUER = "brauer"
    FACTORIZABLE_IT = "it"
    PARTIAL_BRAUER = "pb"
    SYMMETRIC_INVERSE = "is"

    @classmethod
    def parse(cls, text: str) -> "PresentationName":
        key = text.strip().lower()
        aliases = {
            "brauer": cls.BRAUER, "b": cls.BRAUER, "brauerb": cls.BRAUER,
            "it": cls.FACTORIZABLE_IT, "factorizable": cls.FACTORIZABLE_IT,
            "factorizableit": cls.FACTORIZABLE_IT,
            "pb": cls.PARTIAL_BRAUER, "partial-brauer": cls.PARTIAL_BRAUER,
            "partialbrauer": cls.PARTIAL_BRAUER, "partialbrauerpb": cls.PARTIAL_BRAUER,
            "is": cls.SYMMETRIC_INVERSE, "symmetric-inverse": cls.SYMMETRIC_INVERSE,
            "symmetricinverse": cls.SYMMETRIC_INVERSE, "symmetricinverseis": cls.SYMMETRIC_INVERSE,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown presentation {text!r}") from None


@dataclass(frozen=True)
class Presentation:
    name: PresentationName | None
    n: int
    generators: tuple
    relations: tuple  # tuple[tuple[Word, Word], ...]

    def __post_init__(self):
        gens = set(self.generators)
        for k, (u, v) in enumerate(self.relations):
            for g in u + v:
                if g not in gens:
                    raise ValueError(f"relation {k} uses {g}, which is not a generator")

    @property
    def label(self):
        return self.name.value if self.name else "custom"

    def without(self, index: int) -> "Presentation":
        """Copy with relation ``index`` removed (for redundancy experiments)."""
        if not 0 <= index < len(self.relations):
            raise IndexError(f"relation index {index} out of range 0..{len(self.relations) - 1}")
        rels = self.relations[:index] + self.relations[index + 1:]
        return Presentation(None, self.n, self.generators, rels)


def _coxeter(n):
    rels = []
    for i in range(1, n):
        rels.append(((sigma(i), sigma(i)), ()))
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append(((sigma(i), sigma(j)), (sigma(j), sigma(i))))
    for i in range(1, n - 1):
        j = i + 1
        rels.append(((sigma(i), sigma(j), sigma(i)), (sigma(j), sigma(i), sigma(j))))
    return rels


def _adjacent(n):
    """Ordered pairs (i, j) of generator indices 1..n-1 with |i - j| = 1."""
    return [(i, j) for i in range(1, n) for j in (i - 1, i + 1) if 1 <= j < n]


def _distant(n):
    return [(i, j) for i in range(1, n) for j in range(1, n) if abs(i - j) > 1]


def _brauer_relations(n):
    rels = _coxeter(n)
    for i in range(1, n):
        rels.append(((theta(i), theta(i)), (theta(i),)))
    for i in range(1, n):
        for j in range(i + 2, n):
            rels.append(((theta(i), theta(j)), (theta(j), theta(i))))
    for i, j in _adjacent(n):
        rels.append(((theta(i), theta(j), theta(i)), (theta(i),)))
    for i in range(1, n):
        rels.append(((theta(i), sigma(i)), (theta(i),)))
        rels.append(((sigma(i), theta(i)), (theta(i),)))
    for i, j in _distant(n):
        rels.append(((theta(i), sigma(j)), (sigma(j), theta(i))))
    for i, j in _adjacent(n):
        rels.append(((sigma(i), theta(j), theta(i)), (sigma(j), theta(i))))
        rels.append(((theta(i), theta(j), sigma(i)), (theta(i), sigma(j))))
    return rels


def _it_relations(n):
    rels = _coxeter(n)
    for i in range(1, n):
        rels.append(((tau(i), tau(i)), (tau(i),)))
    for i in range(1, n):
        for j in range(i + 1, n):
            rels.append(((tau(i), tau(j)), (tau(j), tau(i))))
    for i in range(1, n):
        rels.append(((tau(i), sigma(i)), (tau(i),)))
        rels.append(((sigma(i), tau(i)), (tau(i),)))
    for i, j in _distant(n):
        rels.append(((tau(i), sigma(j)), (sigma(j), tau(i))))
    for i in range(1, n - 1):
        j = i + 1
        rels.append(((sigma(i), tau(j), sigma(i)), (sigma(j), tau(i), sigma(j))))
    for i, j in _adjacent(n):
        rels.append(((tau(i), sigma(j), tau(i)), (tau(i), tau(j))))
    return rels


def _inverse_relations(n):
    """The vartheta part of the symmetric inverse presentation (no Coxeter block)."""
    rels = []
    for i in range(1, n + 1):
        rels.append(((vartheta(i), vartheta(i)), (vartheta(i),)))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rels.append(((vartheta(i), vartheta(j)), (vartheta(j), vartheta(i))))
    for i in range(1, n):
        rels.append(((sigma(i), vartheta(i)), (vartheta(i + 1), sigma(i))))
    for i in range(1, n):
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                rels.append(((sigma(i), vartheta(j)), (vartheta(j), sigma(i))))
    for i in range(1, n):
        rels.append(((vartheta(i), sigma(i), vartheta(i)), (vartheta(i), vartheta(i + 1))))
    return rels


def _partial_brauer_extra(n):
    rels = []
    for i in range(1, n):
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                rels.append(((theta(i), vartheta(j)), (vartheta(j), theta(i))))
    for i in range(1, n):
        t, a, b = theta(i), vartheta(i), vartheta(i + 1)
        rels.append(((t, a), (t, a, b)))
        rels.append(((t, b), (t, a, b)))
        rels.append(((a, t), (a, b, t)))
        rels.append(((b, t), (a, b, t)))
    for i in range(1, n):
        t, a, b = theta(i), vartheta(i), vartheta(i + 1)
        rels.append(((t, a, t), (t,)))
        rels.append(((a, t, a), (a, b)))
    return rels


def builtin_presentation(name, n: int) -> Presentation:
    """One of the four built-in presentations, relations fully expanded for degree ``n``."""
    if isinstance(name, str):
        name = PresentationName.parse(name)
    if not isinstance(n, int) or n < 2:
        raise DegreeTooSmall(f"presentations need degree n >= 2, got {n}")
    sigmas = [sigma(i) for i in range(1, n)]
    if name is PresentationName.BRAUER:
        gens = sigmas + [theta(i) for i in range(1, n)]
        rels = _brauer_relations(n)
    elif name is PresentationName.FACTORIZABLE_IT:
        gens = sigmas + [tau(i) for i in range(1, n)]
        rels = _it_relations(n)
    elif name is PresentationName.SYMMETRIC_INVERSE:
        gens = sigmas + [vartheta(i) for i in range(1, n + 1)]
        rels = _coxeter(n) + _inverse_relations(n)
    else:
        gens = sigmas + [theta(i) for i in range(1, n)] + [vartheta(i) for i in range(1, n + 1)]
        rels = _brauer_relations(n) + _inverse_relations(n) + _partial_brauer_extra(n)
    return Presentation(name, n, tuple(gens), tuple(rels))


def parse_presentation(text: str) -> Presentation:
    """Read the line format: ``gens: s1 s2 t1``, then one ``u = v`` per line.

    Blank lines and ``#`` comments are skipped.  An optional ``n: <int>``
    line fixes the degree; otherwise it is inferred from the generators.
    """
    gens = None
    n = None
    rels = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        if _ and head.strip() == "gens":
            gens = parse_word(rest)
            continue
        if _ and head.strip() == "n":
            try:
                n = int(rest)
            except ValueError:
                raise ParseError(f"line {lineno}: bad degree {rest.strip()!r}") from None
            continue
        lhs, eq, rhs = line.partition("=")
        if not eq or "=" in rhs:
            raise ParseError(f"line {lineno}: expected 'u = v', got {raw!r}")
        try:
            rels.append((parse_word(lhs), parse_word(rhs)))
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from None
    if gens is None:
        raise ParseError("missing 'gens:' line")
    if n is None:
        n = max([g.index + (0 if g.kind is Kind.VARTHETA else 1) for g in gens] + [2])
    for g in gens:
        if g.index > g.max_index(n):
            raise ParseError(f"generator {g} is out of range for degree {n}")
    try:
        return Presentation(None, n, tuple(gens), tuple(rels))
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def format_presentation(p: Presentation) -> str:
    lines = [f"n: {p.n}", "gens: " + format_word(p.generators)]
    lines += [f"{format_word(u)} = {format_word(v)}" for u, v in p.relations]
    return "\n".join(lines) + "\n"


# -- evaluation ----------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _generator_image(kind, i, n):
    if kind is Kind.SIGMA:
        return dg.s(i, n)
    if kind is Kind.THETA:
        return dg.pi(i, n)
    if kind is Kind.TAU:
        return dg.rho(i, n)
    return dg.sigma_point(i, n)


def evaluate(word: Iterable[GenSym], n: int) -> Diagram:
    """Image of ``word`` under the generator map, multiplied left to right."""
    result = dg.identity(n)
    for g in word:
        result = dg.multiply(result, g.image(n)).product
    return result


class RelationFailure(NamedTuple):
    index: int
    lhs: Word
    rhs: Word
    lhs_image: Diagram
    rhs_image: Diagram


@dataclass
class SoundnessReport:
    presentation: Presentation
    checked: int
    failures: list

    @property
    def ok(self):
        return not self.failures


def check_soundness(p: Presentation) -> SoundnessReport:
    failures = []
    for k, (u, v) in enumerate(p.relations):
        a, b = evaluate(u, p.n), evaluate(v, p.n)
        if a != b:
            failures.append(RelationFailure(k, u, v, a, b))
    return SoundnessReport(p, len(p.relations), failures)


# -- derivations ---------------------------------------------------------------


class DeriveStatus(enum.Enum):
    PROVED = "proved"
    UNKNOWN = "unknown"
    REFUTED = "refuted"


class Step(NamedTuple):
    """Rewrite ``before`` into ``after`` using relation ``relation`` at
    ``position``; ``forward`` means lhs -> rhs."""

    relation: int
    position: int
    forward: bool
    before: Word
    after: Word


@dataclass
class Derivation:
    status: DeriveStatus
    source: Word
    target: Word
    steps: list = field(default_factory=list)
    visited: int = 0
    reason: str = ""

    @property
    def proved(self):
        return self.status is DeriveStatus.PROVED


def apply_step(p: Presentation, word: Sequence[GenSym], relation: int, position: int,
               forward: bool) -> Word:
    """Rewrite one occurrence; raises ``ValueError`` if the side does not occur there."""
    u, v = p.relations[relation]
    lhs, rhs = (u, v) if forward else (v, u)
    word = tuple(word)
    if not 0 <= position <= len(word) or word[position:position + len(lhs)] != lhs:
        raise ValueError(f"relation {relation} does not apply at position {position}")
    return word[:position] + rhs + word[position + len(lhs):]


def replay(p: Presentation, derivation: Derivation) -> bool:
    """Check a certificate step by step."""
    word = tuple(derivation.source)
    for step in derivation.steps:
        if step.before != word:
            return False
        try:
            word = apply_step(p, word, step.relation, step.position, step.forward)
        except (ValueError, IndexError):
            return False
        if word != step.after:
            return False
    return word == tuple(derivation.target)


class _Rewriter:
    """All single-step rewrites of a word, over integer-coded symbols."""

    def __init__(self, p: Presentation, max_length: int):
        self.max_length = max_length
        self.code = {g: k for k, g in enumerate(sorted(p.generators))}
        self.rules = {}
        for k, (u, v) in enumerate(p.relations):
            cu = tuple(self.code[g] for g in u)
            cv = tuple(self.code[g] for g in v)
            if cu == cv:
                continue
            self.rules.setdefault(len(cu), {}).setdefault(cu, []).append((cv, k, True))
            self.rules.setdefault(len(cv), {}).setdefault(cv, []).append((cu, k, False))
        self.lengths = sorted(self.rules)

    def encode(self, word):
        return tuple(self.code[g] for g in word)

    def neighbours(self, w):
        """Yield ``(word, relation, position, forward)`` for every rewrite of ``w``."""
        size = len(w)
        for length in self.lengths:
            table = self.rules[length]
            for pos in range(size - length + 1):
                for rhs, k, fwd in table.get(w[pos:pos + length], ()):
                    if size - length + len(rhs) <= self.max_length:
                        yield w[:pos] + rhs + w[pos + length:], k, pos, fwd


def derive(p: Presentation, target, depth_cap: int = 20, width_cap: int = 2_000_000,
           max_length: int | None = None) -> Derivation:
    """Search for a rewriting proof that ``target[0] = target[1]`` in ``p``.

    Bidirectional breadth-first search over words, applying any relation at
    any position in either direction.  ``depth_cap`` bounds the number of
    steps, ``width_cap`` the number of distinct words held, ``max_length``
    the length of intermediate words (default: two more than the longer
    side).  The proof returned has minimal length and, among those, the
    lexicographically least sequence of words (shortlex per word).

    A failed search yields ``UNKNOWN``; ``REFUTED`` is reported only when
    the two sides already have different diagram images.
    """
    src, dst = (tuple(w) for w in target)
    for g in src + dst:
        if g not in p.generators:
            raise ValueError(f"{g} is not a generator of this presentation")
    if max_length is None:
        max_length = max(len(src), len(dst)) + 2
    if evaluate(src, p.n) != evaluate(dst, p.n):
        return Derivation(DeriveStatus.REFUTED, src, dst,
                          reason="the two sides have different images")
    rw = _Rewriter(p, max_length)
    a, b = rw.encode(src), rw.encode(dst)
    if a == b:
        return Derivation(DeriveStatus.PROVED, src, dst, visited=1)

    fwd_layers, bwd_layers = [[a]], [[b]]
    fwd_dist, bwd_dist = {a: 0}, {b: 0}
    meet = None
    while meet is None:
        if len(fwd_layers) - 1 + len(bwd_layers) - 1 >= depth_cap:
            return Derivation(DeriveStatus.UNKNOWN, src, dst, visited=len(fwd_dist) + len(bwd_dist),
                              reason=f"no proof within {depth_cap} steps")
        forward = len(fwd_layers[-1]) <= len(bwd_layers[-1])
        layers, dist, other = (fwd_layers, fwd_dist, bwd_dist) if forward else \
            (bwd_layers, bwd_dist, fwd_dist)
        depth = len(layers)
        nxt = []
        for w in layers[-1]:
            for x, _, _, _ in rw.neighbours(w):
                if x not in dist:
                    dist[x] = depth
                    nxt.append(x)
        if not nxt:
            return Derivation(DeriveStatus.UNKNOWN, src, dst, visited=len(fwd_dist) + len(bwd_dist),
                              reason=f"search space exhausted at word length <= {max_length}")
        nxt.sort(key=shortlex_key)
        layers.append(nxt)
        if len(fwd_dist) + len(bwd_dist) > width_cap:
            return Derivation(DeriveStatus.UNKNOWN, src, dst, visited=len(fwd_dist) + len(bwd_dist),
                              reason=f"width cap {width_cap} exceeded")
        hits = [x for x in nxt if x in other]
        if hits:
            meet = hits

    # Words on shortest paths, position by position.
    fa, fb = len(fwd_layers) - 1, len(bwd_layers) - 1
    total = fa + fb
    good = [None] * (total + 1)
    good[fa] = {x for x in fwd_layers[fa] if bwd_dist.get(x) == fb}
    for i in range(fa - 1, -1, -1):
        good[i] = {w for w in fwd_layers[i]
                   if any(x in good[i + 1] for x, _, _, _ in rw.neighbours(w))}
    for i in range(fa + 1, total + 1):
        layer = set(bwd_layers[total - i])
        good[i] = {x for w in good[i - 1] for x, _, _, _ in rw.neighbours(w) if x in layer}

    decode = {k: g for g, k in rw.code.items()}
    steps = []
    w = a
    for i in range(total):
        best = None
        for x, k, pos, fwd in rw.neighbours(w):
            if x in good[i + 1]:
                cand = (shortlex_key(x), k, pos, not fwd)
                if best is None or cand < best[0]:
                    best = (cand, x, k, pos, fwd)
        _, x, k, pos, fwd = best
        steps.append(Step(k, pos, fwd, tuple(decode[c] for c in w), tuple(decode[c] for c in x)))
        w = x
    return Derivation(DeriveStatus.PROVED, src, dst, steps, visited=len(fwd_dist) + len(bwd_dist))


# -- derived relations -----------------------------------------------------------


def derived_relations(n: int) -> dict:
    """Relations that follow from the defining ones, keyed by a short name.

    Only the instances with smallest admissible index are listed.
    """
    out = {}
    if n >= 3:
        out["sigma-theta-swap"] = ((sigma(1), theta(2), sigma(1)), (sigma(2), theta(1), sigma(2)))
        out["theta-sigma-absorb"] = ((theta(1), sigma(2), theta(1)), (theta(1),))
    if n >= 4:
        out["shifted-theta-pair"] = ((sigma(3), sigma(2), theta(1), theta(3)),
                                     (sigma(1), sigma(2), theta(1), theta(3)))
        out["theta-point-exchange"] = ((sigma(3), sigma(2), theta(1), vartheta(3), vartheta(4)),
                                       (sigma(1), sigma(2), vartheta(1), theta(1), theta(3),
                                        vartheta(3)))
    return out


# -- congruence enumeration ------------------------------------------------------


class EnumStatus(enum.Enum):
    COMPLETE = "complete"
    CAP_EXCEEDED = "cap-exceeded"


@dataclass
class CongruenceResult:
    status: EnumStatus
    size: int | None
    normal_forms: list | None = None
    generators: tuple = ()
    table: list | None = None  # table[c][g]: class reached from c by generator g
    defined: int = 0

    @property
    def complete(self):
        return self.status is EnumStatus.COMPLETE

    def reachable(self, kinds=(Kind.SIGMA,)) -> int:
        """Number of classes reached from the identity using only ``kinds``."""
        cols = [k for k, g in enumerate(self.generators) if g.kind in kinds]
        seen = {0}
        todo = [0]
        while todo:
            c = todo.pop()
            for k in cols:
                d = self.table[c][k]
                if d not in seen:
                    seen.add(d)
                    todo.append(d)
        return len(seen)

    def min_occurrences(self, kinds) -> list:
        """For each class, the least number of letters of ``kinds`` in any word for it."""
        costly = [g.kind in kinds for g in self.generators]
        best = [None] * self.size
        best[0] = 0
        dq = deque([0])
        while dq:
            c = dq.popleft()
            for k, d in enumerate(self.table[c]):
                w = best[c] + costly[k]
                if best[d] is None or w < best[d]:
                    best[d] = w
                    if costly[k]:
                        dq.append(d)
                    else:
                        dq.appendleft(d)
        return best


def enumerate_presented(p: Presentation, cap: int = 1_000_000,
                        time_limit: float | None = None) -> CongruenceResult:
    """Size and shortlex normal forms of the monoid presented by ``p``.

    Builds the right action of the generators on classes of words, starting
    from the class of the empty word.  Every live class ``c`` is repeatedly
    pushed through both sides of every relation, creating classes when an
    edge is missing and merging classes (union-find) when the two sides end
    at different places, until a full pass changes nothing.  ``cap`` bounds
    the number of classes ever created.
    """
    gens = tuple(sorted(p.generators))
    col = {g: k for k, g in enumerate(gens)}
    ngen = len(gens)
    rels = [(tuple(col[g] for g in u), tuple(col[g] for g in v)) for u, v in p.relations]
    table = [[-1] * ngen]
    parent = [0]
    deadline = None if time_limit is None else time.monotonic() + time_limit

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def new_class():
        if len(table) >= cap:
            raise CapExceeded(f"congruence enumeration exceeded {cap} classes", len(table))
        table.append([-1] * ngen)
        parent.append(len(parent))
        return len(table) - 1

    def merge(x, y):
        queue = [(x, y)]
        while queue:
            x, y = queue.pop()
            x, y = find(x), find(y)
            if x == y:
                continue
            if y < x:
                x, y = y, x
            parent[y] = x
            row_x, row_y = table[x], table[y]
            for k in range(ngen):
                t = row_y[k]
                if t < 0:
                    continue
                if row_x[k] < 0:
                    row_x[k] = t
                else:
                    queue.append((row_x[k], t))

    def step(c, k):
        t = table[c][k]
        if t < 0:
            t = new_class()
            table[c][k] = t
            return t
        return find(t)

    def trace(c, word):
        for k in word:
            c = step(c, k)
        return c

    def enforce(c, u, v):
        """Make ``c.u == c.v``; returns True if anything changed."""
        before = len(table)
        a = trace(c, u[:-1]) if u else c
        b = trace(c, v[:-1]) if v else c
        changed = len(table) != before
        x = find(table[a][u[-1]]) if u and table[a][u[-1]] >= 0 else (a if not u else None)
        y = find(table[b][v[-1]]) if v and table[b][v[-1]] >= 0 else (b if not v else None)
        if x is None and y is None:
            z = new_class()
            table[a][u[-1]] = z
            table[b][v[-1]] = z
            return True
        if x is None:
            table[find(a)][u[-1]] = y
            return True
        if y is None:
            table[find(b)][v[-1]] = x
            return True
        if x != y:
            merge(x, y)
            return True
        return changed

    try:
        changed = True
        while changed:
            changed = False
            c = 0
            while c < len(table):
                if deadline is not None and time.monotonic() > deadline:
                    raise CapExceeded("congruence enumeration hit its time limit", len(table))
                if parent[c] == c:
                    for u, v in rels:
                        if enforce(c, u, v):
                            changed = True
                        if parent[c] != c:
                            break
                    if parent[c] == c:
                        for k in range(ngen):
                            if table[c][k] < 0:
                                table[c][k] = new_class()
                                changed = True
                c += 1
    except CapExceeded as exc:
        return CongruenceResult(EnumStatus.CAP_EXCEEDED, None, generators=gens,
                                defined=exc.partial or len(table))

    # Renumber live classes in shortlex order of their least word.
    order = {find(0): 0}
    words = [()]
    queue = deque([find(0)])
    while queue:
        c = queue.popleft()
        for k in range(ngen):
            d = find(table[c][k])
            if d not in order:
                order[d] = len(order)
                words.append(words[order[c]] + (gens[k],))
                queue.append(d)
    compact = [None] * len(order)
    for c, idx in order.items():
        compact[idx] = [order[find(table[c][k])] for k in range(ngen)]
    return CongruenceResult(EnumStatus.COMPLETE, len(order), words, gens, compact, len(table))
