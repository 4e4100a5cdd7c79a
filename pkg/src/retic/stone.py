"""Co-annihilators, the Stone hierarchy, and order-theoretic transfer.

The co-annihilator of a subset X collects the elements whose join with
every member of X is top.  It is always a filter, X ranges over arbitrary
subsets, and X^T = intersection of the singleton co-annihilators of its
members; on a finite host the family of all co-annihilators is therefore
the intersection closure of the singleton ones plus the full carrier.
That closure is the default (exact) computation route; the brute-force
subset scan survives as a guarded oracle.

A host is Stone when every singleton co-annihilator is the principal
filter of a complemented element, strongly Stone when every co-annihilator
is, and the five-clause variant checked by ``m_stone_conditions`` refines
the same question through the filter lattice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from weakref import WeakKeyDictionary

import numpy as np

from .core import boolean_center, pseudocomplement_or_raise, validate_bdl
from .errors import (
    InvalidSystem,
    LatticeLawViolation,
    SizeLimitExceeded,
    ValidationError,
)
from .filters import (
    Filter,
    _filter_sort_key,
    all_filters,
    filter_join,
    principal_filter,
)
from .reticulation import reticulate

COANN_SCAN_LIMIT = 16
STRONG_SCAN_LIMIT = 20
TRANSFER_SCAN_LIMIT = 12

_COANN_CACHE = WeakKeyDictionary()


def co_annihilator(host, subset):
    """The filter of elements joining every member of ``subset`` to top.

    The empty subset yields the whole carrier.
    """
    idx = sorted({int(a) for a in subset})
    if not idx:
        return Filter(host, frozenset(range(host.n)))
    mask = (host.join[:, idx] == host.top).all(axis=1)
    return Filter(host, frozenset(np.flatnonzero(mask).tolist()))


@dataclass(eq=False)
class CoAnnihilatorAlgebra:
    """All co-annihilators of a host, as a Boolean algebra under inclusion.

    Meet is intersection; join of F and G is (F^T ∩ G^T)^T; complement is
    the co-annihilator of the member itself.  Bottom is {top}, top is the
    carrier.  Boolean structure is re-validated at construction.
    """

    host: object
    filters: tuple
    lattice: object
    complement: dict   # index -> index

    def __len__(self):
        return len(self.filters)

    def index_of(self, members):
        return self._by_set[frozenset(members)]

    def __post_init__(self):
        self._by_set = {f.members: i for i, f in enumerate(self.filters)}


def co_ann_algebra(host):
    """Exact closure construction of the co-annihilator family.

    Cached per host instance (hosts are immutable).
    """
    got = _COANN_CACHE.get(host)
    if got is not None:
        return got
    singles = {co_annihilator(host, [a]).members for a in range(host.n)}
    family = set(singles)
    family.add(frozenset(range(host.n)))   # empty subset's co-annihilator
    fresh = set(family)
    while fresh:
        nxt = set()
        for f in fresh:
            for g in family:
                h = f & g
                if h not in family and h not in nxt:
                    nxt.add(h)
        family |= nxt
        fresh = nxt
    ordered = sorted(family, key=_filter_sort_key)
    pos = {f: i for i, f in enumerate(ordered)}
    k = len(ordered)
    join = np.zeros((k, k), dtype=np.int64)
    meet = np.zeros((k, k), dtype=np.int64)
    comp = {}
    for i, f in enumerate(ordered):
        dual = co_annihilator(host, f).members
        if dual not in pos:
            raise InvalidSystem("co-annihilator family is not closed under duals")
        comp[i] = pos[dual]
    for i, f in enumerate(ordered):
        for j, g in enumerate(ordered):
            meet[i, j] = pos[f & g]
            lifted = co_annihilator(host, ordered[comp[i]] & ordered[comp[j]]).members
            join[i, j] = pos[lifted]
    bot = pos[co_annihilator(host, [host.bot]).members]
    top = pos[frozenset(range(host.n))]
    lattice = validate_bdl(join, meet, bot=bot, top=top,
                           names=[f"C{i}" for i in range(k)])
    for i in range(k):
        j = comp[i]
        if int(join[i, j]) != top or int(meet[i, j]) != bot:
            raise LatticeLawViolation("co-annihilator complement law fails", (i, j))
    if len(boolean_center(lattice).elements) != k:
        raise LatticeLawViolation("co-annihilator algebra is not Boolean", ())
    filters = tuple(Filter(host, f) for f in ordered)
    built = CoAnnihilatorAlgebra(host, filters, lattice, comp)
    _COANN_CACHE[host] = built
    return built


def co_ann_subset_scan(host, limit=COANN_SCAN_LIMIT):
    """Oracle route: distinct co-annihilators over all 2^n subsets."""
    if host.n > limit:
        raise SizeLimitExceeded(f"co-annihilator scan bound {limit} exceeded", limit)
    out = set()
    elems = range(host.n)
    for r in range(host.n + 1):
        for pick in itertools.combinations(elems, r):
            out.add(co_annihilator(host, pick).members)
    return sorted(out, key=_filter_sort_key)


# -- the Stone hierarchy --------------------------------------------------


def _central_principal_sets(host):
    center = boolean_center(host)
    return {principal_filter(host, e).members: e for e in center.elements}


@dataclass(eq=False)
class StoneVerdict:
    ok: bool
    witness: int | None     # element whose co-annihilator misses the pattern
    center: tuple


def is_stone(host):
    """Every singleton co-annihilator is the principal filter of a
    complemented element."""
    allowed = _central_principal_sets(host)
    for a in range(host.n):
        if co_annihilator(host, [a]).members not in allowed:
            return StoneVerdict(False, a, tuple(allowed.values()))
    return StoneVerdict(True, None, tuple(allowed.values()))


@dataclass(eq=False)
class StrongStoneVerdict:
    ok: bool
    witness: object | None        # offending co-annihilator (Filter)
    witness_subset: frozenset | None  # a subset generating it


def is_strongly_stone(host):
    """Every co-annihilator, of any subset, is a centrally generated
    principal filter.  Exact via the closure route, so no size bound."""
    allowed = _central_principal_sets(host)
    for f in co_ann_algebra(host).filters:
        if f.members not in allowed:
            return StrongStoneVerdict(False, f, co_annihilator(host, f.members).members)
    return StrongStoneVerdict(True, None, None)


def strongly_stone_subset_scan(host, limit=STRONG_SCAN_LIMIT):
    '''Brute-force oracle over all subsets; witness is the first bad subset.'''
    if host.n > limit:
        raise SizeLimitExceeded(f"strong Stone scan bound {limit} exceeded", limit)
    allowed = _central_principal_sets(host)
    for r in range(host.n + 1):
        for pick in itertools.combinations(range(host.n), r):
            f = co_annihilator(host, pick)
            if f.members not in allowed:
                return StrongStoneVerdict(False, f, frozenset(pick))
    return StrongStoneVerdict(True, None, None)


# -- the five-clause variant ----------------------------------------------


def _tables_from_leq(le):
    """Join/meet tables of a finite order, or None when lubs/glbs miss."""
    k = le.shape[0]
    rows = {tuple(le[i]): i for i in range(k)}
    cols = {tuple(le[:, i]): i for i in range(k)}
    join = np.zeros((k, k), dtype=np.int64)
    meet = np.zeros((k, k), dtype=np.int64)
    for a in range(k):
        for b in range(k):
            ub = tuple(le[a] & le[b])
            lb = tuple(le[:, a] & le[:, b])
            if ub not in rows or lb not in cols:
                return None
            join[a, b] = rows[ub]
            meet[a, b] = cols[lb]
    return join, meet


def _embeds_with_bounds(small, big):
    """Injective bounded-lattice morphism search small -> big (brute force,
    pruned by order consistency; both carriers are tiny here)."""
    order = sorted(range(small.n), key=lambda u: int(small.height[u]))
    assign = {small.bot: big.bot, small.top: big.top}
    if small.bot == small.top:
        return big.bot == big.top

    def consistent(u, v):
        for w, img in assign.items():
            if bool(small.leq[u, w]) != bool(big.leq[v, img]):
                return False
            if bool(small.leq[w, u]) != bool(big.leq[img, v]):
                return False
        return True

    def full_check():
        f = np.array([assign[u] for u in range(small.n)], dtype=np.int64)
        if len(set(f.tolist())) != small.n:
            return False
        okj = (f[small.join] == big.join[f[:, None], f[None, :]]).all()
        okm = (f[small.meet] == big.meet[f[:, None], f[None, :]]).all()
        return bool(okj and okm)

    todo = [u for u in order if u not in assign]

    def backtrack(t):
        if t == len(todo):
            return full_check()
        u = todo[t]
        for v in range(big.n):
            if v in assign.values() or not consistent(u, v):
                continue
            assign[u] = v
            if backtrack(t + 1):
                return True
            del assign[u]
        return False

    return backtrack(0)


@dataclass(eq=False)
class MStoneReport:
    """Joint verdict of the five equivalent strong-Stone characterisations.

    ``conditions`` maps clause name to (ok, witness-or-None).  The headline
    clauses are expected to agree on every host; ``agree`` says whether they
    did, ``m_stone`` is their shared verdict (clause one's, by convention).
    ``double_coann_embeds`` is a strictly weaker reading of the sublattice
    clause kept for comparison and excluded from the headline.
    """

    conditions: dict
    notes: tuple

    HEADLINE = (
        "all_coann_centrally_principal",
        "stone_with_complete_center",
        "double_coann_sublattice",
        "coann_of_join_splits",
        "coann_join_complement_covers",
    )

    @property
    def verdicts(self):
        return tuple(self.conditions[k][0] for k in self.HEADLINE)

    @property
    def agree(self):
        return len(set(self.verdicts)) == 1

    @property
    def m_stone(self):
        return self.conditions["all_coann_centrally_principal"][0]

    def lines(self):
        out = []
        for name, (ok, wit) in self.conditions.items():
            mark = "yes" if ok else "no"
            extra = "" if wit is None else f"  witness={wit}"
            out.append(f"{name}: {mark}{extra}")
        return out


def m_stone_conditions(host):
    """Evaluate the five clauses (plus one comparison reading) exactly.

    Clause map: (1) every co-annihilator is centrally principal; (2) Stone
    with a complete center (finite centers are complete, see notes); (3)
    the double co-annihilators of single elements form a Boolean sublattice
    of the filter lattice; (4) singleton co-annihilators turn joins into
    filter joins, and every double co-annihilator is again a singleton one;
    (5) each co-annihilator joins with its dual to the whole carrier.
    """
    out = {}
    notes = ("finite Boolean centers are always complete, so clause two "
             "adds nothing beyond the Stone check on a finite host",)
    allowed = _central_principal_sets(host)
    ca = co_ann_algebra(host)
    carrier = frozenset(range(host.n))

    wit = next((f for f in ca.filters if f.members not in allowed), None)
    out["all_coann_centrally_principal"] = (wit is None, wit)

    sv = is_stone(host)
    out["stone_with_complete_center"] = (
        sv.ok, None if sv.ok else host.names[sv.witness])

    # double co-annihilators of single elements
    dc = {co_annihilator(host, co_annihilator(host, [a]).members).members
          for a in range(host.n)}
    dc = sorted(dc, key=_filter_sort_key)
    fl = all_filters(host)
    filter_sets = {f.members for f in fl.filters}
    ok3, wit3 = True, None
    if not dc or frozenset({host.top}) not in dc or carrier not in dc:
        ok3, wit3 = False, "bounds missing"
    if ok3:
        for f, g in itertools.product(dc, dc):
            if f & g not in dc or filter_join(host, Filter(host, f), Filter(host, g)).members not in dc:
                ok3, wit3 = False, (sorted(f), sorted(g))
                break
    if ok3:
        for f in dc:
            comp = next((g for g in dc
                         if f & g == frozenset({host.top})
                         and filter_join(host, Filter(host, f), Filter(host, g)).members == carrier),
                        None)
            if comp is None:
                ok3, wit3 = False, sorted(f)
                break
    assert all(f in filter_sets for f in dc)
    out["double_coann_sublattice"] = (ok3, wit3)

    # comparison reading: the abstract lattice on the same family embeds
    k = len(dc)
    le = np.zeros((k, k), dtype=bool)
    for i, f in enumerate(dc):
        for j, g in enumerate(dc):
            le[i, j] = f <= g
    ok3b = False
    tabs = _tables_from_leq(le)
    if tabs is not None:
        try:
            small = validate_bdl(tabs[0], tabs[1],
                                 bot=dc.index(min(dc, key=_filter_sort_key)),
                                 top=dc.index(carrier),
                                 names=[f"D{i}" for i in range(k)])
            if len(boolean_center(small).elements) == k:
                ok3b = _embeds_with_bounds(small, fl.lattice)
        except ValidationError:
            ok3b = False
    out["double_coann_embeds"] = (ok3b, None)

    ok4, wit4 = True, None
    for l in range(host.n):
        for p in range(host.n):
            lhs = co_annihilator(host, [int(host.join[l, p])]).members
            rhs = filter_join(host, co_annihilator(host, [l]),
                              co_annihilator(host, [p])).members
            if lhs != rhs:
                ok4, wit4 = False, (host.names[l], host.names[p])
                break
        if not ok4:
            break
    if ok4:
        singles = {co_annihilator(host, [a]).members for a in range(host.n)}
        for f in ca.filters:
            if co_annihilator(host, f.members).members not in singles:
                ok4, wit4 = False, f
                break
    out["coann_of_join_splits"] = (ok4, wit4)

    ok5, wit5 = True, None
    for f in ca.filters:
        dual = co_annihilator(host, f.members)
        if filter_join(host, f, dual).members != carrier:
            ok5, wit5 = False, f
            break
    out["coann_join_complement_covers"] = (ok5, wit5)

    return MStoneReport(out, notes)


# -- transfer along the reticulation --------------------------------------


@dataclass(eq=False)
class TransferReport:
    clauses: dict
    route: str    # how the subset clause was decided

    @property
    def ok(self):
        return all(v[0] for v in self.clauses.values())

    def lines(self):
        out = []
        for name, (ok, detail) in self.clauses.items():
            mark = "pass" if ok else "FAIL"
            extra = "" if detail is None else f"  {detail}"
            out.append(f"{mark} {name}{extra}")
        return out


def _image_set(lam, members):
    return frozenset(int(lam[a]) for a in members)


def transfer_checks(host, retic=None, scan_limit=TRANSFER_SCAN_LIMIT):
    """Verify that Stone-ness and co-annihilator structure survive the
    passage to the reticulation, in both directions.

    Clauses: matching Stone / strongly Stone / five-clause verdicts; the
    class map restricting to a Boolean isomorphism of centers; the filter
    image map being an isomorphism of co-annihilator algebras; and the
    class image of any co-annihilator being the co-annihilator of the class
    image.  The last clause scans all subsets when the carrier has at most
    ``scan_limit`` elements and otherwise uses the exact structured route
    (singletons plus intersection transport), which the closure equations
    make equivalent.
    """
    r = retic if retic is not None else reticulate(host)
    lat, lam = r.lattice, r.lam
    out = {}

    out["stone_status_matches"] = _pair(is_stone(host).ok, is_stone(lat).ok)
    out["strongly_stone_matches"] = _pair(is_strongly_stone(host).ok,
                                          is_strongly_stone(lat).ok)
    out["five_clause_matches"] = _pair(m_stone_conditions(host).m_stone,
                                       m_stone_conditions(lat).m_stone)

    bh = boolean_center(host)
    bl = boolean_center(lat)
    image = {int(lam[e]) for e in bh.elements}
    ok = (image == set(bl.elements)
          and len(image) == len(bh.elements)
          and all(int(lam[bh.complement[e]]) == bl.complement[int(lam[e])]
                  for e in bh.elements)
          and all(int(lam[host.join[e, f]]) == int(lat.join[lam[e], lam[f]])
                  and int(lam[host.meet[e, f]]) == int(lat.meet[lam[e], lam[f]])
                  for e in bh.elements for f in bh.elements))
    out["center_maps_isomorphically"] = (ok, None if ok else
                                         (sorted(bh.elements), sorted(bl.elements)))

    ca, cl = co_ann_algebra(host), co_ann_algebra(lat)
    images = {_image_set(lam, f.members) for f in ca.filters}
    targets = {f.members for f in cl.filters}
    ok = images == targets and len(images) == len(ca.filters)
    if ok:
        for f in ca.filters:
            for g in ca.filters:
                if _image_set(lam, f.members & g.members) != \
                        _image_set(lam, f.members) & _image_set(lam, g.members):
                    ok = False
        for f in ca.filters:
            if _image_set(lam, co_annihilator(host, f.members).members) != \
                    co_annihilator(lat, _image_set(lam, f.members)).members:
                ok = False
    out["coann_algebra_maps_isomorphically"] = (ok, None)

    if host.n <= scan_limit:
        route = "full subset scan"
        ok, detail = True, None
        for r_size in range(host.n + 1):
            for pick in itertools.combinations(range(host.n), r_size):
                left = _image_set(lam, co_annihilator(host, pick).members)
                right = co_annihilator(lat, {int(lam[a]) for a in pick}).members
                if left != right:
                    ok, detail = False, tuple(host.names[a] for a in pick)
                    break
            if not ok:
                break
    else:
        route = "structured (singletons + intersection transport)"
        ok, detail = True, None
        for a in range(host.n):
            left = _image_set(lam, co_annihilator(host, [a]).members)
            right = co_annihilator(lat, [int(lam[a])]).members
            if left != right:
                ok, detail = False, host.names[a]
                break
        if ok:
            for f in ca.filters:
                for g in ca.filters:
                    if _image_set(lam, f.members & g.members) != \
                            _image_set(lam, f.members) & _image_set(lam, g.members):
                        ok, detail = False, "intersection transport"
                        break
                if not ok:
                    break
    out["coann_image_commutes"] = (ok, detail)
    return TransferReport(out, route)


def _pair(a, b):
    return (a == b, None if a == b else (a, b))


# -- element-level identities ---------------------------------------------


def negation_identity(host):
    """Whether neg(a) v neg(neg(a)) = top holds for every element."""
    neg = host.imp[:, host.bot]
    vals = host.join[neg, neg[neg]]
    bad = np.flatnonzero(vals != host.top)
    if bad.size:
        return False, int(bad[0])
    return True, None


def pc_identity(lattice):
    """Whether a* v a** = top holds for every element of a
    pseudocomplemented lattice (star = pseudocomplement)."""
    for a in range(lattice.n):
        s = pseudocomplement_or_raise(lattice, a)
        ss = pseudocomplement_or_raise(lattice, s)
        if int(lattice.join[s, ss]) != lattice.top:
            return False, a
    return True, None
