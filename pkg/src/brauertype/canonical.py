"""Canonical orbit representatives and the ``u * canonical * v`` factorization.

The two-sided action of ``S_n x S_n`` sends ``x`` to ``g^-1 x h``.  Each
orbit in B, IT, PB (and IS) holds exactly one canonical element:

* B:  ``theta_1 theta_3 ... theta_{2k-1}``,
* IT: the merged blocks ``{1..l_1}``, ``{l_1+1..l_1+l_2}``, ... of a partition,
* PB: theta pairs, then ``theta_i vartheta_i`` pairs, then
  ``vartheta_i theta_i`` pairs, then isolated ``vartheta_i``,
* IS: ``vartheta_1 ... vartheta_t``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb, factorial, prod

from . import diagrams as dg
from .diagrams import Diagram, MonoidFamily
from .errors import InvalidSpec, NotAMember
from .presentations import evaluate, sigma, tau, theta, vartheta

CANONICAL_FAMILIES = (MonoidFamily.B, MonoidFamily.IT, MonoidFamily.PB, MonoidFamily.IS)


def partitions(n: int, largest: int | None = None):
    """Partitions of ``n`` as non-increasing tuples, in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


@dataclass(frozen=True, order=True)
class CanonicalSpec:
    """Family-tagged parameters of a canonical element.

    ``params`` is ``(k,)`` for B, the partition for IT, ``(k, l, m, t)``
    for PB and ``(t,)`` for IS.
    """

    family: MonoidFamily
    params: tuple

    @property
    def is_canonical(self) -> bool:
        """False only for PB parameters with both ``l`` and ``m`` positive."""
        if self.family is MonoidFamily.PB:
            _, l, m, _ = self.params
            return l == 0 or m == 0
        return True

    def validate(self, n: int):
        f, p = self.family, self.params
        if f is MonoidFamily.B:
            if len(p) != 1 or not 0 <= p[0] <= n // 2:
                raise InvalidSpec(f"B spec needs 0 <= k <= {n // 2}, got {p}")
        elif f is MonoidFamily.IT:
            if not p or any(x < 1 for x in p) or sum(p) != n or list(p) != sorted(p, reverse=True):
                raise InvalidSpec(f"IT spec needs a partition of {n}, got {p}")
        elif f is MonoidFamily.PB:
            if len(p) != 4 or min(p) < 0 or 2 * (p[0] + p[1] + p[2]) + p[3] > n:
                raise InvalidSpec(f"PB spec needs k,l,m,t >= 0 with 2k+2l+2m+t <= {n}, got {p}")
        elif f is MonoidFamily.IS:
            if len(p) != 1 or not 0 <= p[0] <= n:
                raise InvalidSpec(f"IS spec needs 0 <= t <= {n}, got {p}")
        else:
            raise InvalidSpec(f"no canonical elements for family {f.value}")

    def __str__(self):
        return f"{self.family.value}({','.join(map(str, self.params))})"


def brauer_spec(k):
    return CanonicalSpec(MonoidFamily.B, (k,))


def it_spec(partition):
    return CanonicalSpec(MonoidFamily.IT, tuple(partition))


def pb_spec(k, l, m, t):
    return CanonicalSpec(MonoidFamily.PB, (k, l, m, t))


def is_spec(t):
    return CanonicalSpec(MonoidFamily.IS, (t,))


def canonical_word(spec: CanonicalSpec, n: int) -> tuple:
    spec.validate(n)
    f, p = spec.family, spec.params
    if f is MonoidFamily.B:
        return tuple(theta(2 * q + 1) for q in range(p[0]))
    if f is MonoidFamily.IT:
        word = []
        start = 1
        for size in p:
            word += [tau(i) for i in range(start, start + size - 1)]
            start += size
        return tuple(word)
    if f is MonoidFamily.IS:
        return tuple(vartheta(i) for i in range(1, p[0] + 1))
    k, l, m, t = p
    word = [theta(2 * q + 1) for q in range(k)]
    base = 2 * k
    for q in range(l):
        i = base + 2 * q + 1
        word += [theta(i), vartheta(i)]
    base += 2 * l
    for q in range(m):
        i = base + 2 * q + 1
        word += [vartheta(i), theta(i)]
    base += 2 * m
    word += [vartheta(base + q + 1) for q in range(t)]
    return tuple(word)


def canonical(spec: CanonicalSpec, n: int) -> Diagram:
    """Diagram image of the canonical word for ``spec``."""
    return evaluate(canonical_word(spec, n), n)


def canonical_specs(family: MonoidFamily, n: int) -> list:
    """All canonical specs of ``family`` in degree ``n`` (PB: only ``l == 0 or m == 0``)."""
    if family is MonoidFamily.B:
        return [brauer_spec(k) for k in range(n // 2 + 1)]
    if family is MonoidFamily.IT:
        return [it_spec(lam) for lam in partitions(n)]
    if family is MonoidFamily.IS:
        return [is_spec(t) for t in range(n + 1)]
    if family is MonoidFamily.PB:
        out = []
        for k in range(n // 2 + 1):
            for t in range(n - 2 * k + 1):
                for j in range((n - 2 * k - t) // 2 + 1):
                    out.append(pb_spec(k, j, 0, t))
                    if j:
                        out.append(pb_spec(k, 0, j, t))
        return sorted(out)
    raise InvalidSpec(f"no canonical elements for family {family.value}")


def predicted_orbit_size(spec: CanonicalSpec, n: int) -> int:
    """Orbit size of the canonical element according to the counting bounds.

    B and PB use the upper bound on the orbit; IT divides ``(n!)^2`` by the
    lower bound on the stabilizer; IS uses the rank count of partial
    bijections.  These are upper bounds a priori; the orbit computations
    check they are attained.
    """
    spec.validate(n)
    f, p = spec.family, spec.params
    group = factorial(n) ** 2
    if f is MonoidFamily.B:
        k = p[0]
        return group // (2 ** (2 * k) * factorial(k) ** 2 * factorial(n - 2 * k))
    if f is MonoidFamily.IT:
        return group // stabilizer_lower_bound(spec, n)
    if f is MonoidFamily.IS:
        r = n - p[0]
        return comb(n, r) ** 2 * factorial(r)
    k, l, m, t = p
    if l and m:
        raise InvalidSpec(f"{spec} is not canonical; no orbit bound is stated for it")
    j = l or m
    den = (factorial(k + j) * 2 ** (k + j) * factorial(t) * factorial(k) * 2 ** k
           * factorial(2 * j + t) * factorial(n - 2 * k - 2 * j - t))
    return group // den


def stabilizer_lower_bound(spec: CanonicalSpec, n: int) -> int:
    """For IT: product over part sizes ``i`` of ``c_i! (i!)^(2 c_i)``."""
    if spec.family is not MonoidFamily.IT:
        return factorial(n) ** 2 // predicted_orbit_size(spec, n)
    spec.validate(n)
    counts = Counter(spec.params)
    return prod(factorial(c) * factorial(i) ** (2 * c) for i, c in counts.items())


# -- conjugates of the atoms ---------------------------------------------------


def _coset_representatives(i, j, n):
    rest = [x for x in range(1, n + 1) if x not in (i, j)]
    return [(i, j, *rest), (j, i, *rest[::-1])]


def _conjugate(base: Diagram, i, j, n):
    if not (isinstance(i, int) and isinstance(j, int) and 1 <= i < j <= n):
        raise ValueError(f"need 1 <= i < j <= {n}, got ({i}, {j})")
    images = []
    for w in _coset_representatives(i, j, n):
        wd = dg.from_permutation(w)
        images.append(dg.multiply(dg.multiply(wd.flip(), base).product, wd).product)
    if images[0] != images[1]:
        raise RuntimeError(f"conjugate of {base} by a permutation sending 1,2 to {i},{j} "
                           "depends on the coset representative")
    return images[0]


def epsilon(i: int, j: int, n: int, family: MonoidFamily = MonoidFamily.B) -> Diagram:
    """``w^-1 a w`` for any ``w`` with ``w({1,2}) = {i,j}``; ``a`` is the bracket
    atom for B and PB, the merged-block atom for IT."""
    if family is MonoidFamily.IT:
        base = dg.rho(1, n)
    elif family in (MonoidFamily.B, MonoidFamily.PB):
        base = dg.pi(1, n)
    else:
        raise ValueError(f"epsilon is defined for B, PB and IT, not {family.value}")
    return _conjugate(base, i, j, n)


def mu(i: int, j: int, n: int) -> Diagram:
    """Conjugate of ``theta_1 vartheta_1``: a left bracket over two right points."""
    return _conjugate(evaluate((theta(1), vartheta(1)), n), i, j, n)


def nu(i: int, j: int, n: int) -> Diagram:
    """Conjugate of ``vartheta_1 theta_1``: two left points over a right bracket."""
    return _conjugate(evaluate((vartheta(1), theta(1)), n), i, j, n)


def equivalence_closure(relation, n: int) -> list:
    """Blocks of the smallest equivalence on ``1..n`` containing ``relation``."""
    parent = list(range(n + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j in relation:
        parent[find(i)] = find(j)
    blocks = {}
    for x in range(1, n + 1):
        blocks.setdefault(find(x), []).append(x)
    return sorted(blocks.values())


def epsilon_rho(relation, n: int) -> Diagram:
    """Product of ``epsilon(i, j)`` in IT over the pairs of ``relation``, in the order given.

    ``epsilon(i, i)`` is the identity and ``epsilon(j, i) = epsilon(i, j)``.
    """
    pairs = list(relation)
    if not pairs:
        raise ValueError("epsilon_rho needs a non-empty relation")
    result = dg.identity(n)
    for i, j in pairs:
        if not (1 <= i <= n and 1 <= j <= n):
            raise ValueError(f"pair ({i}, {j}) is outside 1..{n}")
        if i != j:
            result = dg.multiply(result, epsilon(min(i, j), max(i, j), n, MonoidFamily.IT)).product
    return result


def closure_pairs(relation, n: int) -> list:
    """All ordered pairs of the reflexive-symmetric-transitive closure."""
    return [(i, j) for block in equivalence_closure(relation, n) for i in block for j in block]


# -- factorization -----------------------------------------------------------------


@dataclass(frozen=True)
class Factorization:
    u: Diagram
    core: CanonicalSpec
    v: Diagram

    def product(self) -> Diagram:
        n = self.u.n
        return dg.multiply(dg.multiply(self.u, canonical(self.core, n)).product, self.v).product


def spec_of(x: Diagram, family: MonoidFamily) -> CanonicalSpec:
    """Canonical spec of the orbit containing ``x``, read off its blocks."""
    if family not in CANONICAL_FAMILIES:
        raise ValueError(f"factorize supports B, IT, PB and IS, not {family.value}")
    if not dg.member(x, family):
        raise NotAMember(f"{dg.format_text(x)} is not in {family.value}_{x.n}")
    n = x.n
    if family is MonoidFamily.B:
        return brauer_spec(sum(1 for b in x.blocks if b[-1] < n))
    if family is MonoidFamily.IT:
        return it_spec(sorted((len(b) // 2 for b in x.blocks), reverse=True))
    if family is MonoidFamily.IS:
        return is_spec(sum(1 for b in x.blocks if b[-1] < n))
    return pb_spec(*dg.pb_type(x))


def _signatures(d: Diagram):
    n = d.n
    out = []
    for block in d.blocks:
        tops = [p for p in block if p < n]
        bottoms = [p - n for p in block if p >= n]
        out.append(((len(tops), len(bottoms)), tops, bottoms))
    return out


def factorize(x: Diagram, family: MonoidFamily) -> Factorization:
    """Write ``x = u * canonical * v`` with permutations ``u``, ``v``.

    Blocks of ``x`` are matched with blocks of the canonical element of the
    same shape (sizes on each side).  ``u`` is the least permutation in
    one-line notation admitting such a matching, and ``v`` the least one
    compatible with that ``u``.
    """
    spec = spec_of(x, family)
    n = x.n
    core = canonical(spec, n)
    xs, cs = _signatures(x), _signatures(core)
    u = [0] * n
    v = [0] * n
    x_to_c = {}
    used_c = set()
    # u sends x's left points to the canonical element's left points
    for i in range(n):
        xb = next(b for b, (_, tops, _) in enumerate(xs) if i in tops)
        if xb in x_to_c:
            continue
        sig, tops, _ = xs[xb]
        cb = min((b for b, (csig, ctops, _) in enumerate(cs) if csig == sig and b not in used_c),
                 key=lambda b: cs[b][1][0])
        used_c.add(cb)
        x_to_c[xb] = cb
        for a, c in zip(tops, cs[cb][1]):
            u[a] = c
    # v sends the canonical element's right points to x's right points
    for xb, cb in x_to_c.items():
        for c, a in zip(cs[cb][2], xs[xb][2]):
            v[c] = a
    used_x = set(x_to_c)
    for j in range(n):
        cb = next(b for b, (_, _, bottoms) in enumerate(cs) if j in bottoms)
        if cb in used_c:
            continue
        sig = cs[cb][0]
        xb = min((b for b, (xsig, _, _) in enumerate(xs) if xsig == sig and b not in used_x),
                 key=lambda b: xs[b][2][0])
        used_c.add(cb)
        used_x.add(xb)
        for c, a in zip(cs[cb][2], xs[xb][2]):
            v[c] = a
    fact = Factorization(dg.from_permutation([c + 1 for c in u]), spec,
                         dg.from_permutation([a + 1 for a in v]))
    return fact
