"""Built-in hosts with independently recorded structural facts.

The three named six-, five- and twelve-element hosts are classic small
residuated lattices whose filter families, Boolean centers, Stone status
and reticulations are known in full; ``recorded_facts`` replays those
known values against the implementation and backs the ``check-fixtures``
CLI command.  ``godel_chain`` supplies the scalable family used by the
generated test corpus.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .core import (
    KIND_BDL,
    boolean_center,
    find_isomorphism,
    tables_from_covers,
    validate_bdl,
    validate_rl,
)
from .filters import all_filters, generated_filter, quotient_rl, stable_power
from .reticulation import reticulate
from .stone import (
    co_ann_algebra,
    co_annihilator,
    is_stone,
    is_strongly_stone,
    m_stone_conditions,
    negation_identity,
)


@lru_cache(maxsize=None)
def kowalski6():
    """Six elements over a non-distributive reduct; squaring moves one
    element.  Stone in every sense."""
    names = ["0", "a", "b", "c", "d", "1"]
    join, meet = tables_from_covers(
        6, [(0, 2), (0, 4), (4, 3), (3, 1), (2, 1), (1, 5)])
    mul = [
        [0, 0, 0, 0, 0, 0],
        [0, 1, 2, 4, 4, 1],
        [0, 2, 2, 0, 0, 2],
        [0, 4, 0, 4, 4, 3],
        [0, 4, 0, 4, 4, 4],
        [0, 1, 2, 3, 4, 5],
    ]
    imp = [
        [5, 5, 5, 5, 5, 5],
        [0, 5, 2, 3, 3, 5],
        [3, 5, 5, 3, 3, 5],
        [2, 5, 2, 5, 1, 5],
        [2, 5, 2, 5, 5, 5],
        [0, 1, 2, 3, 4, 5],
    ]
    return validate_rl(join, meet, mul, imp, bot=0, top=5, names=names)


@lru_cache(maxsize=None)
def iorgulescu5():
    '''Five elements, diamond under a top, product = meet.'''
    names = ["0", "a", "b", "c", "1"]
    join, meet = tables_from_covers(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)])
    imp = [
        [4, 4, 4, 4, 4],
        [2, 4, 2, 4, 4],
        [1, 1, 4, 4, 4],
        [0, 1, 2, 4, 4],
        [0, 1, 2, 3, 4],
    ]
    return validate_rl(join, meet, meet, imp, bot=0, top=4, names=names)


@lru_cache(maxsize=None)
def iorgulescu12():
    """Twelve elements: an eight-element chain carrying a diamond near the
    top.  Not Stone; its negation identity nevertheless holds."""
    names = ["0", "n", "a", "b", "i", "f", "g", "h", "j", "c", "d", "1"]
    covers = [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5), (5, 6),
              (6, 7), (7, 8), (8, 9), (8, 10), (9, 11), (10, 11)]
    join, meet = tables_from_covers(12, covers)
    mul = [
        [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
        [0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
        [0, 1, 1, 1, 1, 1, 1, 1, 1, 2, 1, 2],
        [0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 3, 3],
        [0, 1, 1, 1, 1, 1, 1, 1, 1, 2, 3, 4],
        [0, 1, 1, 1, 1, 1, 1, 1, 5, 5, 5, 5],
        [0, 1, 1, 1, 1, 1, 1, 5, 6, 6, 6, 6],
        [0, 1, 1, 1, 1, 1, 5, 5, 7, 7, 7, 7],
        [0, 1, 1, 1, 1, 5, 6, 7, 8, 8, 8, 8],
        [0, 1, 2, 1, 2, 5, 6, 7, 8, 9, 8, 9],
        [0, 1, 1, 3, 3, 5, 6, 7, 8, 8, 10, 10],
        [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
    ]
    imp = [
        [11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11],
        [0, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11, 11],
        [0, 10, 11, 10, 11, 11, 11, 11, 11, 11, 11, 11],
        [0, 9, 9, 11, 11, 11, 11, 11, 11, 11, 11, 11],
        [0, 8, 9, 10, 11, 11, 11, 11, 11, 11, 11, 11],
        [0, 7, 7, 7, 7, 11, 11, 11, 11, 11, 11, 11],
        [0, 6, 6, 6, 6, 7, 11, 11, 11, 11, 11, 11],
        [0, 5, 5, 5, 5, 7, 7, 11, 11, 11, 11, 11],
        [0, 4, 4, 4, 4, 5, 6, 7, 11, 11, 11, 11],
        [0, 3, 4, 3, 4, 5, 6, 7, 10, 11, 10, 11],
        [0, 2, 2, 4, 4, 5, 6, 7, 9, 9, 11, 11],
        [0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11],
    ]
    return validate_rl(join, meet, mul, imp, bot=0, top=11, names=names)


@lru_cache(maxsize=None)
def godel_chain(k):
    """The k-element chain with product = min and relative
    pseudocomplement as residuum."""
    if k < 2:
        raise ValueError("chain needs at least two elements")
    ar = np.arange(k)
    join = np.maximum(ar[:, None], ar[None, :])
    meet = np.minimum(ar[:, None], ar[None, :])
    imp = np.where(ar[:, None] <= ar[None, :], k - 1, ar[None, :])
    names = ["0", *(f"x{i}" for i in range(1, k - 1)), "1"]
    return validate_rl(join, meet, meet, imp, bot=0, top=k - 1, names=names)


def lattice_reduct(host):
    '''Forget mul/imp; only valid when the reduct is distributive.'''
    return validate_bdl(host.join, host.meet, host.bot, host.top, names=host.names)


def fixture_library():
    lib = {
        "kowalski6": kowalski6(),
        "iorgulescu5": iorgulescu5(),
        "iorgulescu12": iorgulescu12(),
    }
    for k in range(2, 9):
        lib[f"chain{k}"] = godel_chain(k)
    return lib


# -- recorded facts -------------------------------------------------------


def _name_sets(host, families):
    return sorted(sorted(host.names[a] for a in f) for f in families)


def _filter_name_sets(host):
    return _name_sets(host, [f.members for f in all_filters(host).filters])


def _coann_map(host):
    return {host.names[a]: sorted(host.names[b] for b in co_annihilator(host, [a]).members)
            for a in range(host.n)}


def recorded_facts():
    """Independently recorded structural facts as (label, thunk) pairs.

    Each thunk recomputes the fact from scratch and returns a bool.
    """
    facts = []

    def fact(label):
        def register(fn):
            facts.append((label, fn))
            return fn
        return register

    # -- kowalski6 --------------------------------------------------------

    @fact("kowalski6: filters are {1}, {a,1}, {a,b,1}, {a,c,d,1}, all")
    def _():
        a = kowalski6()
        return _filter_name_sets(a) == sorted([
            ["1"], ["1", "a"], ["1", "a", "b"], ["1", "a", "c", "d"],
            ["0", "1", "a", "b", "c", "d"]])

    @fact("kowalski6: boolean center is {0, 1}")
    def _():
        a = kowalski6()
        return list(boolean_center(a).elements) == [a.bot, a.top]

    @fact("kowalski6: stone")
    def _():
        return is_stone(kowalski6()).ok

    @fact("kowalski6: strongly stone")
    def _():
        return is_strongly_stone(kowalski6()).ok

    @fact("kowalski6: five-clause verdicts agree and are positive")
    def _():
        r = m_stone_conditions(kowalski6())
        return r.agree and r.m_stone

    @fact("kowalski6: singleton co-annihilators are {1} except at 1")
    def _():
        a = kowalski6()
        cm = _coann_map(a)
        full = sorted(a.names)
        return all(cm[x] == ["1"] for x in "abcd0") and cm["1"] == full

    @fact("kowalski6: squaring stabilizes c at d, everything else in place")
    def _():
        a = kowalski6()
        want = {"c": "d"}
        return all(a.names[stable_power(a, i)] == want.get(a.names[i], a.names[i])
                   for i in range(a.n))

    @fact("kowalski6: quotient by {a,1} has classes {0} {b} {c,d} {a,1}")
    def _():
        a = kowalski6()
        f = generated_filter(a, [a.index_of("a")])
        q, proj = quotient_rl(a, f)
        classes = [sorted(a.names[i] for i in np.flatnonzero(proj.map == c))
                   for c in range(q.n)]
        return sorted(classes) == [["0"], ["1", "a"], ["b"], ["c", "d"]]

    @fact("kowalski6: reticulation has 5 classes")
    def _():
        return reticulate(kowalski6()).lattice.n == 5

    @fact("kowalski6: negation identity fails at b")
    def _():
        a = kowalski6()
        ok, wit = negation_identity(a)
        return not ok and a.names[wit] == "b"

    # -- iorgulescu5 ------------------------------------------------------

    @fact("iorgulescu5: filters are {1}, {c,1}, {a,c,1}, {b,c,1}, all")
    def _():
        a = iorgulescu5()
        return _filter_name_sets(a) == sorted([
            ["1"], ["1", "c"], ["1", "a", "c"], ["1", "b", "c"],
            ["0", "1", "a", "b", "c"]])

    @fact("iorgulescu5: boolean center is {0, 1}")
    def _():
        a = iorgulescu5()
        return list(boolean_center(a).elements) == [a.bot, a.top]

    @fact("iorgulescu5: stone, strongly stone, five clauses positive")
    def _():
        a = iorgulescu5()
        r = m_stone_conditions(a)
        return is_stone(a).ok and is_strongly_stone(a).ok and r.agree and r.m_stone

    @fact("iorgulescu5: co-annihilator algebra has exactly two members")
    def _():
        return len(co_ann_algebra(iorgulescu5())) == 2

    @fact("iorgulescu5: reticulation is isomorphic to the lattice reduct")
    def _():
        a = iorgulescu5()
        iso = find_isomorphism(reticulate(a).lattice, lattice_reduct(a), KIND_BDL)
        return iso is not None

    @fact("iorgulescu5: negation identity fails at a with value c")
    def _():
        a = iorgulescu5()
        ok, wit = negation_identity(a)
        if ok or a.names[wit] != "a":
            return False
        neg = a.imp[:, a.bot]
        val = int(a.join[neg[wit], neg[neg[wit]]])
        return a.names[val] == "c"

    # -- iorgulescu12 -----------------------------------------------------

    @fact("iorgulescu12: filters are {1}, {c,1}, {d,1}, {j,c,d,1}, all-but-0, all")
    def _():
        a = iorgulescu12()
        nonzero = sorted(n for n in a.names if n != "0")
        return _filter_name_sets(a) == sorted([
            ["1"], ["1", "c"], ["1", "d"], ["1", "c", "d", "j"],
            nonzero, sorted(a.names)])

    @fact("iorgulescu12: boolean center is {0, 1}")
    def _():
        a = iorgulescu12()
        return list(boolean_center(a).elements) == [a.bot, a.top]

    @fact("iorgulescu12: not stone, witness c")
    def _():
        a = iorgulescu12()
        v = is_stone(a)
        return (not v.ok) and a.names[v.witness] == "c"

    @fact("iorgulescu12: not strongly stone")
    def _():
        return not is_strongly_stone(iorgulescu12()).ok

    @fact("iorgulescu12: five-clause verdicts agree and are negative")
    def _():
        r = m_stone_conditions(iorgulescu12())
        return r.agree and not r.m_stone

    @fact("iorgulescu12: co-annihilators of c and d cross over")
    def _():
        a = iorgulescu12()
        cm = _coann_map(a)
        return cm["c"] == ["1", "d"] and cm["d"] == ["1", "c"]

    @fact("iorgulescu12: co-annihilator algebra has four members")
    def _():
        return len(co_ann_algebra(iorgulescu12())) == 4

    @fact("iorgulescu12: negation identity holds")
    def _():
        return negation_identity(iorgulescu12())[0]

    @fact("iorgulescu12: reticulation has 6 classes")
    def _():
        return reticulate(iorgulescu12()).lattice.n == 6

    @fact("iorgulescu12: squaring sends a b i f g h to n")
    def _():
        a = iorgulescu12()
        movers = {"a", "b", "i", "f", "g", "h"}
        return all(
            a.names[stable_power(a, i)] == ("n" if a.names[i] in movers else a.names[i])
            for i in range(a.n))

    # -- chains -----------------------------------------------------------

    @fact("chains 2..8: strongly stone with trivial co-annihilators")
    def _():
        for k in range(2, 9):
            a = godel_chain(k)
            if not is_strongly_stone(a).ok:
                return False
            cm = _coann_map(a)
            for nm in a.names:
                want = sorted(a.names) if nm == "1" else ["1"]
                if cm[nm] != want:
                    return False
        return True

    return facts


def verify_recorded_facts():
    '''Run every recorded fact; returns (label, ok) pairs.'''
    return [(label, bool(fn())) for label, fn in recorded_facts()]
