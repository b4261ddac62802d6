"""Element enumeration, censuses against closed counting formulas, and orbits
of the two-sided ``S_n x S_n`` action."""

from __future__ import annotations

import itertools
import time
from collections import Counter, deque
from dataclasses import dataclass
from math import comb, factorial, prod

from . import canonical as cn
from . import diagrams as dg
from .diagrams import Diagram, MonoidFamily
from .errors import CanonicalDuplicated, CanonicalMissing, CapExceeded, FormulaMismatch, NotAPermutation

DEFAULT_CAP = 10**7
CENSUS_FAMILIES = (MonoidFamily.IS, MonoidFamily.B, MonoidFamily.IT, MonoidFamily.PB)


def set_partitions(m: int):
    """Restricted growth strings of length ``m``, in lexicographic order."""
    labels = [0] * m
    if m == 0:
        yield ()
        return

    def rec(i, top):
        if i == m:
            yield tuple(labels)
            return
        for c in range(top + 2):
            labels[i] = c
            yield from rec(i + 1, max(top, c))

    labels[0] = 0
    yield from rec(1, 0)


def generators(family: MonoidFamily, n: int) -> list:
    """Generating diagrams used by the closure: Coxeter generators ``s_i``
    plus ``pi_i`` (brackets), ``sigma_point(i)`` (points) or ``rho_i`` (merged blocks)."""
    if family in (MonoidFamily.C, MonoidFamily.IP):
        raise ValueError(f"{family.value} is built directly, not from generators")
    gens = [dg.s(i, n) for i in range(1, n)]
    if family in (MonoidFamily.B, MonoidFamily.PB):
        gens += [dg.pi(i, n) for i in range(1, n)]
    if family in (MonoidFamily.IS, MonoidFamily.PB):
        gens += [dg.sigma_point(i, n) for i in range(1, n + 1)]
    if family is MonoidFamily.IT:
        gens += [dg.rho(i, n) for i in range(1, n)]
    return gens


def closure(gens, n: int, cap: int = DEFAULT_CAP, time_limit: float | None = None) -> set:
    """Submonoid generated by ``gens``, by breadth-first right multiplication."""
    start = time.monotonic()
    e = dg.identity(n)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = dg.multiply(x, g).product
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise CapExceeded(f"more than {cap} elements", partial=len(seen))
                queue.append(y)
        if time_limit is not None and time.monotonic() - start > time_limit:
            raise CapExceeded(f"time limit of {time_limit}s reached", partial=len(seen))
    return seen


def _block_bijections(n):
    for top in set_partitions(n):
        k = max(top, default=-1) + 1
        for bottom in set_partitions(n):
            if max(bottom, default=-1) + 1 != k:
                continue
            for match in itertools.permutations(range(k)):
                yield Diagram.from_labels(n, top + tuple(match[c] for c in bottom))


def enumerate_family(family: MonoidFamily, n: int, cap: int = DEFAULT_CAP,
                     time_limit: float | None = None) -> list:
    """All elements of ``family`` in degree ``n``, sorted by encoding."""
    dg._check_degree(n)
    start = time.monotonic()
    if family is MonoidFamily.C:
        out = []
        for labels in set_partitions(2 * n):
            out.append(Diagram.from_labels(n, labels))
            if len(out) > cap:
                raise CapExceeded(f"more than {cap} elements", partial=len(out))
            if time_limit is not None and time.monotonic() - start > time_limit:
                raise CapExceeded(f"time limit of {time_limit}s reached", partial=len(out))
        return sorted(out)
    if family is MonoidFamily.IP:
        out = []
        for d in _block_bijections(n):
            out.append(d)
            if len(out) > cap:
                raise CapExceeded(f"more than {cap} elements", partial=len(out))
        return sorted(out)
    return sorted(closure(generators(family, n), n, cap, time_limit))


# -- counting formulas ------------------------------------------------------------


def is_rank_count(n: int, k: int) -> int:
    return comb(n, k) ** 2 * factorial(k)


def brauer_rank_count(n: int, k: int) -> int:
    """Elements of rank ``k`` in ``B_n``; zero unless ``n - k`` is even.  Also used at ``k = 0``."""
    if k < 0 or k > n or (n - k) % 2:
        return 0
    l = (n - k) // 2
    return factorial(n) ** 2 // (2 ** (2 * l) * factorial(l) ** 2 * factorial(k))


def it_type_count(n: int, mult) -> int:
    """Elements of ``IT_n`` whose blocks have ``mult[i-1]`` blocks of size ``i`` per side."""
    if sum(i * m for i, m in enumerate(mult, 1)) != n:
        return 0
    return factorial(n) ** 2 // prod(factorial(m) * factorial(i) ** (2 * m) for i, m in enumerate(mult, 1))


def pb_type_count(n: int, pb: tuple) -> int:
    """Elements of ``PB_n`` of type ``(k, l, 0, t)`` or ``(k, 0, m, t)``."""
    k, l, m, t = pb
    if l and m:
        return 0
    j = l or m
    free = n - 2 * k - 2 * j - t
    if free < 0:
        return 0
    den = (factorial(k) * 2**k * factorial(t + 2 * j) * factorial(k + j) * 2 ** (k + j)
           * factorial(t) * factorial(free))
    return factorial(n) ** 2 // den


def _it_types(n):
    for lam in cn.partitions(n):
        c = Counter(lam)
        yield tuple(c[i] for i in range(1, n + 1))


def _pb_types(n):
    for spec in cn.canonical_specs(MonoidFamily.PB, n):
        yield spec.params


def expected_census(family: MonoidFamily, n: int) -> tuple:
    """``(by_rank, by_type)`` predicted by the formulas; ``by_type`` is None for IS and B."""
    if family is MonoidFamily.IS:
        return {k: is_rank_count(n, k) for k in range(n + 1)}, None
    if family is MonoidFamily.B:
        return {k: brauer_rank_count(n, k) for k in range(n % 2, n + 1, 2)}, None
    by_rank: Counter = Counter()
    by_type = {}
    if family is MonoidFamily.IT:
        for mult in _it_types(n):
            by_type[mult] = it_type_count(n, mult)
            by_rank[sum(mult)] += by_type[mult]
    elif family is MonoidFamily.PB:
        for pb in _pb_types(n):
            by_type[pb] = pb_type_count(n, pb)
            k, l, m, t = pb
            by_rank[n - 2 * k - 2 * l - 2 * m - t] += by_type[pb]
    else:
        raise ValueError(f"no counting formulas for {family.value}")
    return dict(sorted(by_rank.items())), by_type


@dataclass
class Census:
    family: MonoidFamily
    n: int
    total: int
    by_rank: dict
    by_type: dict | None = None

    def to_json(self) -> dict:
        out = {"family": self.family.value, "n": self.n, "total": str(self.total),
               "by_rank": {str(k): str(v) for k, v in sorted(self.by_rank.items())}}
        if self.by_type is not None:
            out["by_type"] = {",".join(map(str, k)): str(v) for k, v in sorted(self.by_type.items())}
        return out


def census(family: MonoidFamily, n: int, cap: int = DEFAULT_CAP, time_limit: float | None = None,
           elements=None) -> Census:
    """Count the enumerated elements by rank (and type) and compare with the formulas.

    Raises FormulaMismatch on the first disagreement.
    """
    if family not in CENSUS_FAMILIES:
        raise ValueError(f"census supports IS, B, IT and PB, not {family.value}")
    if elements is None:
        elements = enumerate_family(family, n, cap, time_limit)
    by_rank = Counter(dg.rank(x) for x in elements)
    by_type = None
    if family is MonoidFamily.IT:
        by_type = Counter(dg.it_type(x) for x in elements)
    elif family is MonoidFamily.PB:
        by_type = Counter(dg.pb_type(x) for x in elements)
    result = Census(family, n, len(elements), dict(sorted(by_rank.items())),
                    None if by_type is None else dict(sorted(by_type.items())))
    want_rank, want_type = expected_census(family, n)
    _compare("rank", result.by_rank, want_rank, family, n)
    if want_type is not None:
        _compare("type", result.by_type, want_type, family, n)
    return result


def _compare(what, got, want, family, n):
    for key in sorted(set(got) | set(want)):
        a, b = got.get(key, 0), want.get(key, 0)
        if a != b:
            raise FormulaMismatch(f"{family.value}_{n} {what} {key}: enumerated {a}, formula {b}",
                                  key=key, enumerated=a, formula=b)


# -- the two-sided action --------------------------------------------------------


def act(g: Diagram, x: Diagram, h: Diagram) -> Diagram:
    """``g^-1 x h`` for permutation diagrams ``g`` and ``h``."""
    for name, p in (("g", g), ("h", h)):
        if not dg.is_permutation(p):
            raise NotAPermutation(f"{name} = {dg.format_text(p)} is not a permutation")
    return dg.multiply(dg.multiply(g.flip(), x).product, h).product


@dataclass
class OrbitReport:
    representative: Diagram
    spec: cn.CanonicalSpec
    orbit_size: int
    stabilizer_size: int
    group_order: int
    bound: int = 0

    @property
    def attains_bound(self) -> bool:
        return self.orbit_size == self.bound

    def to_json(self) -> dict:
        return {"rep": dg.format_text(self.representative), "spec": list(self.spec.params),
                "size": str(self.orbit_size), "stabilizer": str(self.stabilizer_size),
                "bound": str(self.bound)}


def _adjacent_swaps(n):
    ident = tuple(range(n))
    out = []
    for i in range(n - 1):
        p = list(ident)
        p[i], p[i + 1] = p[i + 1], p[i]
        out.append(tuple(p))
    return ident, out


def stabilizer_size(x: Diagram) -> int:
    """Number of pairs ``(g, h)`` in ``S_n x S_n`` with ``g^-1 x h = x``, by direct search."""
    n = x.n
    perms = list(itertools.permutations(range(n)))
    return sum(1 for g in perms for h in perms if dg.permute(x, g, h) == x)


def orbits(family: MonoidFamily, n: int, elements=None, cap: int = DEFAULT_CAP,
           time_limit: float | None = None) -> list:
    """Partition the elements of ``family`` into ``S_n x S_n``-orbits.

    Each orbit must contain exactly one canonical element; otherwise
    CanonicalMissing or CanonicalDuplicated is raised.  Stabilizers are
    counted directly, not inferred from orbit sizes.
    """
    if family not in cn.CANONICAL_FAMILIES:
        raise ValueError(f"orbits supports B, IT, PB and IS, not {family.value}")
    if elements is None:
        elements = enumerate_family(family, n, cap, time_limit)
    element_set = set(elements)
    specs = cn.canonical_specs(family, n)
    canon = {}
    for spec in specs:
        c = cn.canonical(spec, n)
        if c not in element_set:
            raise CanonicalMissing(f"canonical element {spec} = {dg.format_text(c)} is not in {family.value}_{n}")
        if c in canon:
            raise CanonicalDuplicated(f"{spec} and {canon[c]} give the same element {dg.format_text(c)}")
        canon[c] = spec
    ident, swaps = _adjacent_swaps(n)
    group = factorial(n) ** 2
    done = set()
    reports = []
    for x in elements:
        if x in done:
            continue
        orbit = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for w in swaps:
                for z in (dg.permute(y, w, ident), dg.permute(y, ident, w)):
                    if z not in orbit:
                        if z not in element_set:
                            raise RuntimeError(f"{dg.format_text(z)} leaves {family.value}_{n}")
                        orbit.add(z)
                        queue.append(z)
        done |= orbit
        found = [c for c in orbit if c in canon]
        if not found:
            raise CanonicalMissing(f"the orbit of {dg.format_text(x)} ({len(orbit)} elements) "
                                   "holds no canonical element")
        if len(found) > 1:
            names = ", ".join(str(canon[c]) for c in sorted(found))
            raise CanonicalDuplicated(f"the orbit of {dg.format_text(x)} holds several canonical elements: {names}")
        rep = found[0]
        spec = canon[rep]
        reports.append(OrbitReport(rep, spec, len(orbit), stabilizer_size(rep), group,
                                   cn.predicted_orbit_size(spec, n)))
    reports.sort(key=lambda r: r.spec)
    return reports
