"""Finite residuated lattices and bounded distributive lattices as table algebras.

Carrier elements are the dense indices 0..n-1; names are display-only labels.
Each binary operation is an n x n table, stored as a read-only numpy array
with rows indexed by the left argument.  The order is not stored: it is
derived from join (a <= b iff a v b = b).

Validation is eager and total.  ``validate_rl`` / ``validate_bdl`` are the
only constructors; they scan every defining law over all tuples (vectorised,
so cheap up to a few hundred elements) and raise a *Violation error carrying
a witness tuple on the first failure.  Consequently any instance in
circulation satisfies its axioms, and all downstream code may assume so.
Instances are immutable; all functions here are pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import (
    DistributivityViolation,
    LatticeLawViolation,
    MonoidLawViolation,
    NotPseudocomplemented,
    OperationNotPreserved,
    ResiduationViolation,
    SizeLimitExceeded,
    TableShapeError,
)

KIND_RL = "residuated-lattice"
KIND_BDL = "bounded-lattice"

ISO_SEARCH_LIMIT = 64  # default carrier bound for isomorphism search


def _freeze(a):
    a.flags.writeable = False
    return a


def _witness(mask):
    '''First True index tuple of a boolean mask, as plain ints.'''
    idx = np.argwhere(mask)
    return tuple(int(v) for v in idx[0])


def _as_table(raw, n, name):
    t = np.asarray(raw, dtype=np.int64)
    if t.shape != (n, n):
        raise TableShapeError(f"{name} table must be {n}x{n}, got shape {t.shape}")
    if n and ((t < 0) | (t >= n)).any():
        raise TableShapeError(
            f"{name} entry out of range 0..{n - 1} at {_witness((t < 0) | (t >= n))}"
        )
    return _freeze(t)


def _check_semilattice(t, name, exc=LatticeLawViolation):
    n = t.shape[0]
    ar = np.arange(n)
    if (t != t.T).any():
        raise exc(f"{name} is not commutative", _witness(t != t.T))
    if (t[ar, ar] != ar).any():
        raise exc(f"{name} is not idempotent", _witness(t[ar, ar] != ar))
    _check_associative(t, name, exc)


def _check_associative(t, name, exc):
    bad = t[t, :] != t[:, t]  # (a.b).c vs a.(b.c)
    if bad.any():
        raise exc(f"{name} is not associative", _witness(bad))


def _check_bounded_lattice(join, meet, bot, top):
    n = join.shape[0]
    ar = np.arange(n)
    _check_semilattice(join, "join")
    _check_semilattice(meet, "meet")
    ab1 = join[ar[:, None], meet] != ar[:, None]  # a v (a ^ b) = a
    if ab1.any():
        raise LatticeLawViolation("absorption a v (a ^ b) = a fails", _witness(ab1))
    ab2 = meet[ar[:, None], join] != ar[:, None]  # a ^ (a v b) = a
    if ab2.any():
        raise LatticeLawViolation("absorption a ^ (a v b) = a fails", _witness(ab2))
    if (join[bot] != ar).any():
        raise LatticeLawViolation("declared bottom is not least", _witness(join[bot] != ar))
    if (meet[top] != ar).any():
        raise LatticeLawViolation("declared top is not greatest", _witness(meet[top] != ar))


def _names_tuple(names, n):
    if names is None:
        return tuple(str(i) for i in range(n))
    names = tuple(str(x) for x in names)
    if len(names) != n:
        raise TableShapeError(f"expected {n} element names, got {len(names)}")
    if len(set(names)) != n:
        raise TableShapeError("element names must be distinct")
    return names


class _FiniteLattice:
    """Shared machinery for the two host kinds.  Not a public constructor."""

    kind: str

    def __init__(self, join, meet, bot, top, names):
        self.n = int(join.shape[0])
        self.join = join
        self.meet = meet
        self.bot = int(bot)
        self.top = int(top)
        self.names = names
        # a <= b iff a v b = b
        self.leq = _freeze(join == np.arange(self.n)[None, :])

    # -- order structure -------------------------------------------------

    @cached_property
    def lt(self):
        return _freeze(self.leq & ~np.eye(self.n, dtype=bool))

    @cached_property
    def covers(self):
        '''covers[a, b] is True iff b covers a (a < b with nothing between).'''
        lt = self.lt.astype(np.int8)
        return _freeze(self.lt & ~((lt @ lt) > 0))

    @cached_property
    def height(self):
        h = np.zeros(self.n, dtype=np.int64)
        for i in np.argsort(self.leq.sum(axis=0), kind="stable"):
            below = np.flatnonzero(self.covers[:, int(i)])
            if below.size:
                h[i] = 1 + h[below].max()
        return _freeze(h)

    @cached_property
    def join_irreducibles(self):
        return tuple(i for i in range(self.n) if int(self.covers[:, i].sum()) == 1)

    def upset(self, a):
        return frozenset(np.flatnonzero(self.leq[a]).tolist())

    # -- conveniences ----------------------------------------------------

    @cached_property
    def _index(self):
        return {name: i for i, name in enumerate(self.names)}

    def index_of(self, name):
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"no element named {name!r}") from None

    def label(self, i):
        return self.names[i]

    def labels(self, items):
        return [self.names[i] for i in sorted(items)]

    def summary(self):
        return f"{self.kind}, {self.n} elements, bot={self.names[self.bot]} top={self.names[self.top]}"

    def op_tables(self):
        return {"join": self.join, "meet": self.meet}

    def relabel(self, perm):
        """Isomorphic copy with element i renumbered to perm[i]."""
        p = np.asarray(perm, dtype=np.int64)
        inv = np.argsort(p)
        args = {
            name: p[t[np.ix_(inv, inv)]] for name, t in self.op_tables().items()
        }
        names = tuple(self.names[inv[k]] for k in range(self.n))
        if self.kind == KIND_RL:
            return validate_rl(bot=int(p[self.bot]), top=int(p[self.top]), names=names, **args)
        return validate_bdl(bot=int(p[self.bot]), top=int(p[self.top]), names=names, **args)


class FiniteBoundedLattice(_FiniteLattice):
    """A finite bounded distributive lattice (validated)."""

    kind = KIND_BDL

    @property
    def semigroup(self):
        '''Table under which filters are multiplicatively closed.'''
        return self.meet


class FiniteResiduatedLattice(_FiniteLattice):
    """A finite commutative integral residuated lattice (validated).

    Beyond the bounded-lattice reduct this carries the monoid table ``mul``
    (unit = top) and its residuum ``imp``:  a <= imp(b, c) iff mul(a, b) <= c.
    The lattice reduct is not required to be distributive.
    """

    kind = KIND_RL

    def __init__(self, join, meet, mul, imp, bot, top, names):
        super().__init__(join, meet, bot, top, names)
        self.mul = mul
        self.imp = imp

    @property
    def semigroup(self):
        return self.mul

    def op_tables(self):
        return {"join": self.join, "meet": self.meet, "mul": self.mul, "imp": self.imp}

    @cached_property
    def biimp_table(self):
        return _freeze(self.meet[self.imp, self.imp.T])


def validate_bdl(join, meet, bot, top, names=None):
    """Validate tables as a bounded distributive lattice and wrap them.

    Raises LatticeLawViolation or DistributivityViolation with a witness.
    """
    join = np.asarray(join)
    n = len(join)
    join = _as_table(join, n, "join")
    meet = _as_table(meet, n, "meet")
    bot, top = int(bot), int(top)
    if not (0 <= bot < n and 0 <= top < n):
        raise TableShapeError("bot/top out of range")
    _check_bounded_lattice(join, meet, bot, top)
    bad = meet[:, join] != join[meet[:, :, None], meet[:, None, :]]
    if bad.any():
        raise DistributivityViolation(
            "a ^ (b v c) = (a ^ b) v (a ^ c) fails", _witness(bad)
        )
    return FiniteBoundedLattice(join, meet, bot, top, _names_tuple(names, n))


def validate_rl(join, meet, mul, imp, bot, top, names=None):
    """Validate tables as a commutative integral residuated lattice.

    Checks, in order: lattice laws with the declared bounds, commutative
    monoid laws for ``mul`` with unit top, and the residuation adjunction
    a <= imp(b, c) iff mul(a, b) <= c over all triples.
    """
    join = np.asarray(join)
    n = len(join)
    join = _as_table(join, n, "join")
    meet = _as_table(meet, n, "meet")
    mul = _as_table(mul, n, "mul")
    imp = _as_table(imp, n, "imp")
    bot, top = int(bot), int(top)
    if not (0 <= bot < n and 0 <= top < n):
        raise TableShapeError("bot/top out of range")
    _check_bounded_lattice(join, meet, bot, top)
    ar = np.arange(n)
    if (mul != mul.T).any():
        raise MonoidLawViolation("mul is not commutative", _witness(mul != mul.T))
    _check_associative(mul, "mul", MonoidLawViolation)
    if (mul[top] != ar).any():
        raise MonoidLawViolation("top is not a unit for mul", _witness(mul[top] != ar))
    leq = join == ar[None, :]
    bad = leq[:, imp] != leq[mul]  # a <= (b -> c)  vs  a.b <= c
    if bad.any():
        raise ResiduationViolation(
            "a <= imp(b, c) iff mul(a, b) <= c fails", _witness(bad)
        )
    return FiniteResiduatedLattice(join, meet, mul, imp, bot, top, _names_tuple(names, n))


# -- pointwise helpers ----------------------------------------------------


def leq(host, a, b):
    '''Order test a <= b, derived from join.'''
    return bool(host.leq[a, b])


def biimp(host, a, b):
    return int(host.meet[host.imp[a, b], host.imp[b, a]])


def negate(host, a):
    return int(host.imp[a, host.bot])


def tables_from_covers(n, covers):
    """Join/meet tables of the poset generated by a covering relation.

    ``covers`` is an iterable of (lo, hi) pairs.  Raises ValueError if the
    reflexive-transitive closure is not a lattice (some pair lacking a least
    upper or greatest lower bound).
    """
    le = np.eye(n, dtype=bool)
    for lo, hi in covers:
        le[lo, hi] = True
    for k in range(n):  # transitive closure
        le |= le[:, k][:, None] & le[k, :][None, :]
    if (le & le.T & ~np.eye(n, dtype=bool)).any():
        raise ValueError("covering relation induces a cycle")
    rows = {tuple(le[i]): i for i in range(n)}
    down = {tuple(le[:, i]): i for i in range(n)}
    join = np.zeros((n, n), dtype=np.int64)
    meet = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        for b in range(n):
            ub = tuple(le[a] & le[b])
            if ub not in rows:
                raise ValueError(f"no least upper bound for ({a}, {b})")
            join[a, b] = rows[ub]
            lb = tuple(le[:, a] & le[:, b])
            if lb not in down:
                raise ValueError(f"no greatest lower bound for ({a}, {b})")
            meet[a, b] = down[lb]
    return join.tolist(), meet.tolist()


# -- Boolean center -------------------------------------------------------


@dataclass(eq=False)
class BooleanAlgebraView:
    """The complemented elements of a host, with their complement map.

    For every member e, complement[e] is the unique f with e v f = top and
    e ^ f = bot.  The subset always contains bot and top and is closed under
    join and meet; this is re-verified at construction time.
    """

    host: object
    elements: tuple
    complement: dict

    def __contains__(self, e):
        return e in self.complement

    def labels(self):
        return [self.host.names[e] for e in self.elements]


def boolean_center(host):
    """Collect the complemented elements of a validated host.

    Complements are unique here (by residuation arithmetic for the
    residuated kind, by distributivity for the lattice kind), which is
    asserted rather than assumed.
    """
    n = host.n
    comp = {}
    for e in range(n):
        cands = np.flatnonzero((host.join[e] == host.top) & (host.meet[e] == host.bot))
        if cands.size > 1:
            raise LatticeLawViolation(
                f"element {host.names[e]} has several complements", tuple(cands.tolist())
            )
        if cands.size:
            comp[e] = int(cands[0])
    elements = tuple(sorted(comp))
    for e in elements:
        for f in elements:
            if int(host.join[e, f]) not in comp or int(host.meet[e, f]) not in comp:
                raise LatticeLawViolation(
                    "boolean center is not closed under join/meet", (e, f)
                )
    return BooleanAlgebraView(host, elements, comp)


# -- morphisms ------------------------------------------------------------


@dataclass(eq=False)
class MorphismReport:
    ok: bool
    failures: tuple  # of (op_name, witness)

    def first(self):
        return self.failures[0] if self.failures else None


@dataclass(eq=False)
class AlgebraMorphism:
    """A map between hosts, tagged with the signature it must respect.

    ``kind`` is KIND_RL (preserve join, meet, mul, imp, bot, top) or
    KIND_BDL (preserve join, meet, bot, top).  A residuated host may be the
    endpoint of a bounded-lattice morphism; the converse is rejected.
    """

    source: object
    target: object
    map: np.ndarray
    kind: str
    certificate: MorphismReport = field(default=None)

    def __post_init__(self):
        m = np.asarray(self.map, dtype=np.int64)
        if m.shape != (self.source.n,):
            raise TableShapeError("morphism map has wrong length")
        if m.size and ((m < 0) | (m >= self.target.n)).any():
            raise TableShapeError("morphism map value out of range")
        self.map = _freeze(m)

    def __call__(self, a):
        return int(self.map[a])

    def is_bijective(self):
        return self.source.n == self.target.n and len(set(self.map.tolist())) == self.source.n


def _ops_for(kind, host):
    if kind == KIND_RL:
        if host.kind != KIND_RL:
            raise TableShapeError("residuated-lattice morphism needs residuated endpoints")
        return [("join", host.join), ("meet", host.meet), ("mul", host.mul), ("imp", host.imp)]
    return [("join", host.join), ("meet", host.meet)]


def check_morphism(m):
    """Re-run the preservation certificate of a morphism.

    Verifies f(op(a, b)) = op(f(a), f(b)) for every operation of the kind,
    and preservation of bot and top.  Returns a MorphismReport listing every
    violated operation with one witness each.
    """
    f = m.map
    failures = []
    src = dict(_ops_for(m.kind, m.source))
    tgt = dict(_ops_for(m.kind, m.target))
    for name in src:
        bad = f[src[name]] != tgt[name][f[:, None], f[None, :]]
        if bad.any():
            failures.append((name, _witness(bad)))
    if int(f[m.source.bot]) != m.target.bot:
        failures.append(("bot", (m.source.bot,)))
    if int(f[m.source.top]) != m.target.top:
        failures.append(("top", (m.source.top,)))
    return MorphismReport(not failures, tuple(failures))


def morphism(source, target, mapping, kind=None):
    """Build a morphism and certify it, raising OperationNotPreserved if bad."""
    kind = kind or (KIND_RL if source.kind == target.kind == KIND_RL else KIND_BDL)
    m = AlgebraMorphism(source, target, mapping, kind)
    report = check_morphism(m)
    if not report.ok:
        op, wit = report.first()
        raise OperationNotPreserved(f"map does not preserve {op}", op=op, witness=wit)
    m.certificate = report
    return m


def identity_morphism(host, kind=None):
    return morphism(host, host, np.arange(host.n), kind or host.kind)


def compose(g, f):
    '''g after f.'''
    if g.kind != f.kind:
        raise TableShapeError("cannot compose morphisms of different kinds")
    return morphism(f.source, g.target, g.map[f.map], f.kind)


def invert(m):
    if not m.is_bijective():
        raise TableShapeError("cannot invert a non-bijective morphism")
    return morphism(m.target, m.source, np.argsort(m.map), m.kind)


def same_map(f, g):
    return f.kind == g.kind and np.array_equal(f.map, g.map)


# -- isomorphism search ---------------------------------------------------


def _refined_labels(host, tables):
    """Isomorphism-invariant integer labels, sharpened by two rounds of
    neighbourhood refinement over the operation tables."""
    n = host.n
    base = np.stack([host.height,
                     host.covers.sum(axis=0),
                     host.covers.sum(axis=1)], axis=1)
    _, lab = np.unique(base, axis=0, return_inverse=True)
    for _ in range(2):
        parts = []
        for t in tables:
            enc = lab[t] * n + lab[None, :]
            parts.append(np.sort(enc, axis=1))
        sig = np.concatenate([lab[:, None]] + parts, axis=1)
        _, lab = np.unique(sig, axis=0, return_inverse=True)
    return lab


def find_isomorphism(x, y, kind=None, limit=ISO_SEARCH_LIMIT):
    """Search for an isomorphism between two validated hosts of one kind.

    Returns a certified AlgebraMorphism (whose inverse is certified too), or
    None.  The search assigns images to join-irreducible elements only,
    pruned by refined invariant labels and pairwise order consistency, and
    extends each complete assignment by joins; this is exhaustive because a
    lattice isomorphism is determined by its action on join-irreducibles.

    Raises SizeLimitExceeded when the carrier exceeds ``limit``.
    """
    kind = kind or (KIND_RL if x.kind == y.kind == KIND_RL else KIND_BDL)
    if x.n != y.n:
        return None
    if x.n > limit:
        raise SizeLimitExceeded(f"isomorphism search bound {limit} exceeded (n={x.n})", limit)
    if x.n == 1:
        return morphism(x, y, [0], kind)

    tx = [t for _, t in _ops_for(kind, x)]
    ty = [t for _, t in _ops_for(kind, y)]
    lab_x = _refined_labels(x, tx)
    lab_y = _refined_labels(y, ty)
    if sorted(lab_x.tolist()) != sorted(lab_y.tolist()):
        return None

    irr_x = sorted(x.join_irreducibles, key=lambda i: (int(x.height[i]), int(lab_x[i]), i))
    irr_y = list(y.join_irreducibles)
    if len(irr_x) != len(irr_y):
        return None
    cands = [
        [j for j in irr_y if lab_y[j] == lab_x[i]]
        for i in irr_x
    ]

    below_irr = [np.array([i for i in irr_x if x.leq[i, e]], dtype=np.int64)
                 for e in range(x.n)]

    assign = {}

    def extend():
        f = np.full(x.n, y.bot, dtype=np.int64)
        for e in range(x.n):
            v = y.bot
            for i in below_irr[e]:
                v = int(y.join[v, assign[int(i)]])
            f[e] = v
        if len(set(f.tolist())) != x.n:
            return None
        for a, b in zip(tx, ty):
            if (f[a] != b[f[:, None], f[None, :]]).any():
                return None
        if int(f[x.bot]) != y.bot or int(f[x.top]) != y.top:
            return None
        return f

    def backtrack(pos):
        if pos == len(irr_x):
            f = extend()
            if f is None:
                return None
            m = morphism(x, y, f, kind)
            invert(m)  # certify the inverse as well
            return m
        i = irr_x[pos]
        for j in cands[pos]:
            if j in assign.values():
                continue
            ok = all(
                bool(x.leq[i, k]) == bool(y.leq[j, assign[k]])
                and bool(x.leq[k, i]) == bool(y.leq[assign[k], j])
                for k in assign
            )
            if not ok:
                continue
            assign[i] = j
            found = backtrack(pos + 1)
            if found is not None:
                return found
            del assign[i]
        return None

    return backtrack(0)


# -- residuation arithmetic ----------------------------------------------


@dataclass(eq=False)
class ArithmeticReport:
    clauses: dict  # name -> (ok, witness or None)

    @property
    def ok(self):
        return all(v[0] for v in self.clauses.values())


def check_arithmetic(host):
    """Exercise the basic derived laws of a residuated host.

    (i) mul distributes over join; (ii) a v b = top implies mul = meet on
    (a, b); (iii) mul is monotone (checked in one argument, which suffices
    by commutativity and transitivity); (iv) a <= b iff imp(a, b) = top.
    """
    J, M, P, I = host.join, host.meet, host.mul, host.imp
    L = host.leq
    out = {}

    bad = P[:, J] != J[P[:, :, None], P[:, None, :]]
    out["mul_distributes_over_join"] = (not bad.any(), _witness(bad) if bad.any() else None)

    bad = (J == host.top) & (P != M)
    out["join_top_makes_mul_meet"] = (not bad.any(), _witness(bad) if bad.any() else None)

    mono = L[P[:, None, :], P[None, :, :]]  # [a,b,c] = mul(a,c) <= mul(b,c)
    bad = L[:, :, None] & ~mono
    out["mul_monotone"] = (not bad.any(), _witness(bad) if bad.any() else None)

    bad = L != (I == host.top)
    out["order_is_imp_top"] = (not bad.any(), _witness(bad) if bad.any() else None)
    return ArithmeticReport(out)


def pseudocomplement(lattice, a):
    """Greatest m with a ^ m = bot, or None if no greatest one exists."""
    ms = np.flatnonzero(lattice.meet[a] == lattice.bot)
    for m in ms:
        if lattice.leq[ms, m].all():
            return int(m)
    return None


def is_pseudocomplemented(lattice):
    return all(pseudocomplement(lattice, a) is not None for a in range(lattice.n))


def pseudocomplement_or_raise(lattice, a):
    m = pseudocomplement(lattice, a)
    if m is None:
        raise NotPseudocomplemented(f"element {lattice.names[a]} has no pseudocomplement")
    return m
