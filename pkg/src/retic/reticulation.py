"""The principal-filter reticulation of a residuated lattice.

``reticulate`` sends a validated residuated host A to the pair (L, lam):
L is the bounded distributive lattice whose elements are the distinct
principal filters of A, ordered by reverse set inclusion, and lam maps each
carrier element a to the class of its principal filter.  Meet on L is the
image of the monoid product, join is the image of the lattice join; the
defining conditions tie the two sides together and are re-checkable through
``check_axioms``.

Each lattice element carries a canonical representative: the least carrier
index generating that filter.  Labels are rendered as "<x>".
"""

from __future__ import annotations

from dataclasses import dataclass
from weakref import WeakKeyDictionary

import numpy as np

from .core import KIND_BDL, find_isomorphism, invert, morphism, validate_bdl
from .errors import OperationNotPreserved
from .filters import (
    Filter,
    all_filters,
    as_filter,
    principal_filter,
    quotient_lattice,
    quotient_rl,
    stable_power,
)


_RETICULATE_CACHE = WeakKeyDictionary()


@dataclass(eq=False)
class Reticulation:
    source: object
    lattice: object       # FiniteBoundedLattice over principal-filter classes
    lam: np.ndarray       # carrier index -> lattice index
    reps: tuple           # lattice index -> canonical carrier representative
    filter_sets: tuple    # lattice index -> frozenset, the principal filter

    def __call__(self, a):
        return int(self.lam[a])

    def image_of_subset(self, xs):
        return frozenset(int(self.lam[x]) for x in xs)

    def image_filter(self, filt):
        """Transport a filter of the source to a filter of the lattice."""
        f = as_filter(self.source, filt)
        return as_filter(self.lattice, self.image_of_subset(f.members))


def reticulate(host):
    """Build the reticulation of a validated residuated host.

    Cached per host instance (hosts are immutable).
    """
    got = _RETICULATE_CACHE.get(host)
    if got is not None:
        return got
    pf = [principal_filter(host, a).members for a in range(host.n)]
    reps = []
    classes = {}
    lam = np.zeros(host.n, dtype=np.int64)
    for a in range(host.n):
        if pf[a] not in classes:
            classes[pf[a]] = len(reps)
            reps.append(a)
        lam[a] = classes[pf[a]]
    k = len(reps)
    rep = np.array(reps, dtype=np.int64)
    join = lam[host.join[np.ix_(rep, rep)]]
    meet = lam[host.mul[np.ix_(rep, rep)]]
    lattice = validate_bdl(join, meet,
                           bot=int(lam[host.bot]), top=int(lam[host.top]),
                           names=[f"<{host.names[r]}>" for r in reps])
    built = Reticulation(host, lattice, lam, tuple(reps),
                         tuple(pf[r] for r in reps))
    _RETICULATE_CACHE[host] = built
    return built


# -- axiom checking -------------------------------------------------------


@dataclass(eq=False)
class AxiomReport:
    checks: dict  # name -> (ok, witness or None)

    @property
    def ok(self):
        return all(v[0] for v in self.checks.values())

    def failed(self):
        return [name for name, (ok, _) in self.checks.items() if not ok]

    def lines(self):
        out = []
        for name, (ok, wit) in self.checks.items():
            tail = "" if wit is None else f"  witness={wit}"
            out.append(f"{'pass' if ok else 'FAIL'}  {name}{tail}")
        return out


def _first_bad(mask):
    idx = np.argwhere(mask)
    return None if idx.size == 0 else tuple(int(v) for v in idx[0])


def reticulation_conditions(source, lattice, lam):
    """The five defining conditions plus the three derived laws, checked
    for an arbitrary candidate map into a bounded distributive lattice.

    Used both for the canonical construction and for transported candidates
    (restrictions to subalgebras, product maps), which is why it takes the
    raw triple instead of a Reticulation.
    """
    lam = np.asarray(lam, dtype=np.int64)
    LJ, LM, LL = lattice.join, lattice.meet, lattice.leq
    checks = {}

    bad = lam[source.mul] != LM[lam[:, None], lam[None, :]]
    checks["product_maps_to_meet"] = (not bad.any(), _first_bad(bad))

    bad = lam[source.join] != LJ[lam[:, None], lam[None, :]]
    checks["join_maps_to_join"] = (not bad.any(), _first_bad(bad))

    ok = int(lam[source.bot]) == lattice.bot and int(lam[source.top]) == lattice.top
    checks["bounds_map_to_bounds"] = (ok, None if ok else (int(lam[source.bot]), int(lam[source.top])))

    missing = set(range(lattice.n)) - set(lam.tolist())
    checks["surjective"] = (not missing, tuple(sorted(missing)) or None)

    stab = np.array([stable_power(source, a) for a in range(source.n)], dtype=np.int64)
    bad = LL[lam[:, None], lam[None, :]] != source.leq[stab][:, :]
    checks["order_reflects_stable_powers"] = (not bad.any(), _first_bad(bad))

    bad = source.leq & ~LL[lam[:, None], lam[None, :]]
    checks["order_preserving"] = (not bad.any(), _first_bad(bad))

    bad = lam[source.meet] != LM[lam[:, None], lam[None, :]]
    checks["meet_maps_to_meet"] = (not bad.any(), _first_bad(bad))

    bad = lam[stab] != lam
    checks["powers_collapse"] = (not bad.any(), _first_bad(bad))
    return checks


def check_axioms(host, retic):
    """Full audit of a Reticulation against its defining conditions.

    Adds, beyond ``reticulation_conditions``: top/bottom preimage
    characterization, filter-membership transport for every filter, the
    image of each principal filter, and the reverse-inclusion order law.
    """
    if retic.source is not host:
        raise OperationNotPreserved("reticulation does not belong to this host")
    lam, lattice = retic.lam, retic.lattice
    checks = dict(reticulation_conditions(host, lattice, lam))

    stab = np.array([stable_power(host, a) for a in range(host.n)], dtype=np.int64)
    bad = (lam == lattice.top) != (np.arange(host.n) == host.top)
    only_top = (not bad.any(), _first_bad(bad))
    bad = (lam == lattice.bot) != (stab == host.bot)
    only_nilpotent = (not bad.any(), _first_bad(bad))
    checks["top_preimage_is_top"] = only_top
    checks["bot_preimage_is_nilpotents"] = only_nilpotent

    ok, wit = True, None
    for f in all_filters(host).filters:
        image = retic.image_of_subset(f.members)
        for a in range(host.n):
            if (int(lam[a]) in image) != (a in f.members):
                ok, wit = False, (sorted(f.members), a)
                break
        if not ok:
            break
    checks["filter_membership_transports"] = (ok, wit)

    ok, wit = True, None
    for a in range(host.n):
        image = retic.image_of_subset(principal_filter(host, a).members)
        if image != lattice.upset(int(lam[a])):
            ok, wit = False, (a,)
            break
    checks["principal_filter_image_is_principal"] = (ok, wit)

    fs = retic.filter_sets
    ok, wit = True, None
    for u in range(lattice.n):
        for v in range(lattice.n):
            if bool(lattice.leq[u, v]) != (fs[v] <= fs[u]):
                ok, wit = False, (u, v)
                break
        if not ok:
            break
    checks["order_is_reverse_inclusion"] = (ok, wit)
    return AxiomReport(checks)


# -- functoriality --------------------------------------------------------


def functor_on_morphism(f, ra, rb):
    """Image of a residuated-lattice morphism between the two reticulations.

    The class of ⟨a⟩ goes to the class of ⟨f(a)⟩.  Consistency of this
    assignment over all of the carrier is verified before the lattice
    morphism certificate is produced.
    """
    if f.source is not ra.source or f.target is not rb.source:
        raise OperationNotPreserved("reticulations do not match the morphism endpoints")
    g = rb.lam[f.map[np.array(ra.reps, dtype=np.int64)]]
    bad = g[ra.lam] != rb.lam[f.map]
    if bad.any():
        raise OperationNotPreserved("image map is inconsistent across filter classes",
                                    op="functor", witness=_first_bad(bad))
    return morphism(ra.lattice, rb.lattice, g, KIND_BDL)


def uniqueness_iso(r1, r2):
    """The lattice isomorphism carrying one reticulation onto another.

    Defined on classes by sending the class of a (under the first map) to
    the class of a under the second; this is forced by the requirement that
    it commute with both maps, so uniqueness is by construction.
    """
    if r1.source is not r2.source:
        raise OperationNotPreserved("reticulations of different hosts")
    g = r2.lam[np.array(r1.reps, dtype=np.int64)]
    bad = g[r1.lam] != r2.lam
    if bad.any():
        raise OperationNotPreserved("no map can commute with both reticulation maps",
                                    op="uniqueness", witness=_first_bad(bad))
    m = morphism(r1.lattice, r2.lattice, g, KIND_BDL)
    invert(m)  # certifies bijectivity and the inverse morphism
    return m


@dataclass(eq=False)
class FilterTransport:
    """The filter lattices of a host and of its reticulation, with the
    certified isomorphism F ↦ image of F between them."""

    source: object  # FilterLattice of the algebra
    target: object  # FilterLattice of the reticulation lattice
    iso: object     # AlgebraMorphism between the two index lattices

    def __call__(self, i):
        return int(self.iso.map[i])


def transport_filters(retic):
    fa = all_filters(retic.source)
    fl = all_filters(retic.lattice)
    mapping = np.zeros(len(fa), dtype=np.int64)
    for i, f in enumerate(fa.filters):
        image = retic.image_of_subset(f.members)
        mapping[i] = fl.index_of(image)
    m = morphism(fa.lattice, fl.lattice, mapping, KIND_BDL)
    invert(m)
    return FilterTransport(fa, fl, m)


# -- quotient comparison --------------------------------------------------


@dataclass(eq=False)
class QuotientComparison:
    quotient: object             # the algebra A/F
    projection: object           # A -> A/F
    retic_of_quotient: object    # Reticulation of A/F
    lambda_filter: Filter        # image of F inside the reticulation lattice
    quotient_of_retic: object    # the lattice L/λ(F)
    lattice_projection: object   # L -> L/λ(F)
    surjection: object           # L/λ(F) -> L(A/F), certified
    isomorphic: bool
    iso: object                  # certified isomorphism when one exists


def quotient_comparison(host, filt, retic=None):
    """Compare the reticulation of a quotient with the matching quotient of
    the reticulation.

    Builds A/F, its reticulation, the lattice quotient L/λ(F), and the
    canonical surjection from the latter onto the former (class of the
    image of a ↦ class of a/F); reports whether the two lattices are
    isomorphic at all.
    """
    f = as_filter(host, filt)
    r = retic if retic is not None else reticulate(host)
    q, proj = quotient_rl(host, f)
    rq = reticulate(q)
    lam_f = r.image_filter(f)
    lq, proj_l = quotient_lattice(r.lattice, lam_f)

    h = np.zeros(lq.n, dtype=np.int64)
    # class of λ(a) in L/λ(F) must go to the class of ⟨a/F⟩; scan all a for
    # consistency, since well-definedness is the substance of the claim
    assigned = np.full(lq.n, -1, dtype=np.int64)
    for a in range(host.n):
        u = int(proj_l.map[r.lam[a]])
        v = int(rq.lam[proj.map[a]])
        if assigned[u] < 0:
            assigned[u] = v
        elif assigned[u] != v:
            raise OperationNotPreserved("comparison map is ill defined",
                                        op="quotient-comparison", witness=(a,))
    h[:] = assigned
    hm = morphism(lq, rq.lattice, h, KIND_BDL)
    if set(h.tolist()) != set(range(rq.lattice.n)):
        raise OperationNotPreserved("comparison map failed to be surjective",
                                    op="quotient-comparison")
    iso = find_isomorphism(lq, rq.lattice, KIND_BDL)
    return QuotientComparison(q, proj, rq, lam_f, lq, proj_l, hm,
                              iso is not None, iso)
