"""Filters, the filter lattice, and quotient constructions.

A filter is a nonempty upward-closed subset closed under the host's
semigroup operation (monoid product for residuated hosts, meet for lattice
hosts).  In a finite host every filter is principal: it is generated by the
product of its members, whose powers stabilize.  ``all_filters`` exploits
this; ``filters_subset_scan`` ignores it and tests every subset, serving as
the correctness oracle at small sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from weakref import WeakKeyDictionary

import numpy as np

from .core import KIND_RL, morphism, validate_bdl, validate_rl
from .errors import NotClosed, SizeLimitExceeded

SUBSET_SCAN_LIMIT = 20

_ALL_FILTERS_CACHE = WeakKeyDictionary()


@dataclass(frozen=True)
class Filter:
    """An immutable filter of a validated host."""

    host: object
    members: frozenset

    def __contains__(self, a):
        return a in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def indicator(self):
        v = np.zeros(self.host.n, dtype=bool)
        v[list(self.members)] = True
        return v

    def labels(self):
        return [self.host.names[a] for a in sorted(self.members)]

    def __repr__(self):
        return "{" + ",".join(self.labels()) + "}"


def _upward_closure(host, items):
    mask = np.zeros(host.n, dtype=bool)
    idx = list(items)
    if idx:
        mask = host.leq[idx].any(axis=0)
    return mask


def is_filter(host, subset):
    """Membership test per the defining closure conditions."""
    s = frozenset(int(a) for a in subset)
    if not s:
        return False
    idx = sorted(s)
    up = _upward_closure(host, idx)
    if set(np.flatnonzero(up).tolist()) != s:
        return False
    t = host.semigroup
    return all(int(t[a, b]) in s for a in idx for b in idx)


def as_filter(host, subset):
    '''Wrap a subset after checking it really is a filter.'''
    if isinstance(subset, Filter):
        if subset.host is not host:
            raise NotClosed("filter belongs to a different host", None)
        return subset
    s = frozenset(int(a) for a in subset)
    if not is_filter(host, s):
        raise NotClosed(f"subset {sorted(s)} is not a filter", tuple(sorted(s)))
    return Filter(host, s)


def generated_filter(host, subset):
    """Least filter containing ``subset``.

    Closure iteration: adjoin all pairwise semigroup products, then close
    upward, and repeat until nothing changes.  The empty set generates the
    trivial filter {top}.
    """
    t = host.semigroup
    current = frozenset(int(a) for a in subset) | {host.top}
    while True:
        idx = sorted(current)
        prods = {int(t[a, b]) for a in idx for b in idx}
        nxt = frozenset(np.flatnonzero(_upward_closure(host, current | prods)).tolist())
        if nxt == current:
            return Filter(host, current)
        current = nxt


def stable_power(host, a):
    """The stabilized power of ``a`` under the semigroup operation.

    Powers are iterated until a repeat occurs; among the cycle the
    order-least value is returned.  For validated hosts the power sequence
    is decreasing, so the cycle is a single fixpoint.
    """
    t = host.semigroup
    seen = [int(a)]
    p = int(a)
    while True:
        p = int(t[p, a])
        if p in seen:
            cycle = seen[seen.index(p):]
            for c in cycle:
                if all(host.leq[c, d] for d in cycle):
                    return c
            raise AssertionError("power cycle has no least element")
        seen.append(p)


def principal_filter(host, a):
    '''All b reachable as aⁿ ≤ b for some n ≥ 1.'''
    s = stable_power(host, a)
    return Filter(host, host.upset(s))


@dataclass(eq=False)
class FilterLattice:
    """All filters of a host, arranged as a bounded distributive lattice.

    ``filters[i]`` is the i-th filter; the lattice order is set inclusion,
    with meet = intersection and join = generated union.
    """

    host: object
    filters: tuple
    lattice: object  # FiniteBoundedLattice over filter indices

    def index_of(self, f):
        members = f.members if isinstance(f, Filter) else frozenset(int(a) for a in f)
        return self._by_set[members]

    @property
    def _by_set(self):
        if not hasattr(self, "_by_set_cache"):
            self._by_set_cache = {f.members: i for i, f in enumerate(self.filters)}
        return self._by_set_cache

    def __len__(self):
        return len(self.filters)


def _filter_sort_key(members):
    return (len(members), tuple(sorted(members)))


def all_filters(host):
    """Enumerate every filter and build the filter lattice.

    Generation starts from the principal filters and closes under pairwise
    intersection and join.  In a finite host this reaches every filter,
    because each filter equals the principal filter of the product of its
    members; the subset-scan oracle re-checks this on small instances.

    Results are cached per host instance (hosts are immutable).
    """
    got = _ALL_FILTERS_CACHE.get(host)
    if got is not None:
        return got
    found = {principal_filter(host, a).members for a in range(host.n)}
    while True:
        fresh = set()
        pool = sorted(found, key=_filter_sort_key)
        for i, f in enumerate(pool):
            for g in pool[i + 1:]:
                both = f & g
                if both not in found:
                    fresh.add(both)
                join = generated_filter(host, f | g).members
                if join not in found:
                    fresh.add(join)
        if not fresh:
            break
        found |= fresh
    ordered = sorted(found, key=_filter_sort_key)
    built = _build_filter_lattice(host, ordered)
    _ALL_FILTERS_CACHE[host] = built
    return built


def _build_filter_lattice(host, ordered):
    index = {f: i for i, f in enumerate(ordered)}
    k = len(ordered)
    join = np.zeros((k, k), dtype=np.int64)
    meet = np.zeros((k, k), dtype=np.int64)
    for i, f in enumerate(ordered):
        for j, g in enumerate(ordered):
            meet[i, j] = index[f & g]
            join[i, j] = index[generated_filter(host, f | g).members]
    names = ["{" + ",".join(host.names[a] for a in sorted(f)) + "}" for f in ordered]
    lattice = validate_bdl(join, meet,
                           bot=index[frozenset({host.top})],
                           top=index[frozenset(range(host.n))],
                           names=names)
    return FilterLattice(host, tuple(Filter(host, f) for f in ordered), lattice)


def filters_subset_scan(host, limit=SUBSET_SCAN_LIMIT):
    """Oracle: test all 2ⁿ subsets for filterhood.  Exponential."""
    if host.n > limit:
        raise SizeLimitExceeded(f"subset scan bound {limit} exceeded (n={host.n})", limit)
    t = host.semigroup
    up_bits = [int(sum(1 << b for b in np.flatnonzero(host.leq[a]))) for a in range(host.n)]
    out = []
    for mask in range(1, 1 << host.n):
        bits = [a for a in range(host.n) if mask >> a & 1]
        if any(up_bits[a] & ~mask for a in bits):
            continue
        if all(mask >> int(t[a, b]) & 1 for a in bits for b in bits):
            out.append(frozenset(bits))
    return sorted(out, key=_filter_sort_key)


def filter_join(host, *filters):
    '''Join of a family of filters: the filter generated by their union.'''
    sets = [as_filter(host, f).members for f in filters]
    return generated_filter(host, reduce(frozenset.union, sets, frozenset()))


@dataclass(eq=False)
class PrincipalLawReport:
    ok: bool
    witness: tuple | None


def principal_meet_is_join(host):
    """Check ⟨a⟩ ∩ ⟨b⟩ = ⟨a ∨ b⟩ over all pairs."""
    pf = [principal_filter(host, a).members for a in range(host.n)]
    for a in range(host.n):
        for b in range(host.n):
            if pf[a] & pf[b] != pf[int(host.join[a, b])]:
                return PrincipalLawReport(False, (a, b))
    return PrincipalLawReport(True, None)


# -- quotients ------------------------------------------------------------


def _classes_from_relation(rel):
    """Partition 0..n-1 by an equivalence matrix; classes sorted by least
    member, which also serves as the representative."""
    n = rel.shape[0]
    if (rel != rel.T).any() or not rel.diagonal().all():
        raise AssertionError("relation is not reflexive-symmetric")
    r = rel.astype(np.int8)
    closed = rel | ((r @ r) > 0)
    if (closed != rel).any():
        raise AssertionError("relation is not transitive")
    reps = []
    cls_of = np.full(n, -1, dtype=np.int64)
    for a in range(n):
        if cls_of[a] < 0:
            members = np.flatnonzero(rel[a])
            cls_of[members] = len(reps)
            reps.append(a)
    return np.array(reps, dtype=np.int64), cls_of


def _quotient_names(host, reps, cls_of):
    return [f"{host.names[r]}/F" for r in reps]


def quotient_rl(host, filt):
    """Quotient of a residuated host by a filter.

    Elements a, b are identified when their biimplication lands in the
    filter.  Returns the quotient algebra and the certified projection.
    Class names follow the least member, as in "c/F".
    """
    f = as_filter(host, filt)
    ind = f.indicator()
    rel = ind[host.biimp_table]
    reps, cls_of = _classes_from_relation(rel)
    tables = {
        name: cls_of[t[np.ix_(reps, reps)]]
        for name, t in host.op_tables().items()
    }
    q = validate_rl(bot=int(cls_of[host.bot]), top=int(cls_of[host.top]),
                    names=_quotient_names(host, reps, cls_of), **tables)
    proj = morphism(host, q, cls_of, KIND_RL)
    return q, proj


def quotient_lattice(lattice, filt):
    """Quotient of a bounded lattice by one of its filters.

    Elements l, m are identified when l ∧ e = m ∧ e for some filter member
    e; meet-closure of the filter makes this transitive, which is asserted.
    """
    f = as_filter(lattice, filt)
    idx = sorted(f.members)
    me = lattice.meet[:, idx]
    rel = (me[:, None, :] == me[None, :, :]).any(axis=2)
    reps, cls_of = _classes_from_relation(rel)
    tables = {
        name: cls_of[t[np.ix_(reps, reps)]]
        for name, t in lattice.op_tables().items()
    }
    q = validate_bdl(bot=int(cls_of[lattice.bot]), top=int(cls_of[lattice.top]),
                     names=_quotient_names(lattice, reps, cls_of), **tables)
    proj = morphism(lattice, q, cls_of, q.kind)
    return q, proj
