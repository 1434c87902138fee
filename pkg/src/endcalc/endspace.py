"""Accumulation trees for surface end spaces and the preorder on end types.

An end type is a finite labeled tree: each node says whether handles
accumulate directly to the end (``direct_genus``), whether the end's
equivalence class is a Cantor set (``self_accumulating``), and which
other types accumulate to it cofinally (``children``).  Equivalence of
types is decided by comparing canonical forms; the preorder is decided
by membership in the set of types appearing below a node.

Multiplicities of maximal classes live in :class:`SurfaceSpec`, not in
the trees: a maximal class is either finite (a positive integer) or a
Cantor set (the :data:`CANTOR` marker).
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field, replace
from typing import FrozenSet, Iterable, Optional, Tuple, Union


class _Marker:
    """Singleton marker value with a stable repr."""

    def __init__(self, name: str):
        self._name = name

    def __repr__(self) -> str:
        return self._name

    def __deepcopy__(self, memo):
        return self

    def __copy__(self):
        return self


#: Marker for a maximal class that is a Cantor set (used as a multiplicity).
CANTOR = _Marker("CANTOR")

#: Marker for a handle among immediate predecessors (never an EndType).
HANDLE = _Marker("HANDLE")

Multiplicity = Union[int, _Marker]


@dataclass(frozen=True)
class EndType:
    """One node of an accumulation tree.

    direct_genus: handles accumulate to this end directly, not merely via
        some genus-accumulated type below it.
    self_accumulating: the equivalence class of this type is a Cantor set,
        so the type accumulates on itself.
    children: types accumulating to this end cofinally (infinitely many
        copies in every neighborhood).
    """

    direct_genus: bool = False
    self_accumulating: bool = False
    children: FrozenSet["EndType"] = field(default_factory=frozenset)

    def is_puncture(self) -> bool:
        return (not self.direct_genus and not self.self_accumulating
                and not self.children)

    def depth(self) -> int:
        if not self.children:
            return 0
        return 1 + max(c.depth() for c in self.children)

    def __repr__(self) -> str:
        return f"EndType({format_type(self)!r})"


def node(*, genus: bool = False, cantor: bool = False,
         children: Iterable[EndType] = ()) -> EndType:
    """Convenience constructor accepting any iterable of children."""
    return EndType(genus, cantor, frozenset(children))


PUNCTURE = EndType()
LOCH_NESS = EndType(direct_genus=True)
CANTOR_LEAF = EndType(self_accumulating=True)


def flute() -> EndType:
    """The planar end accumulated by punctures only."""
    return node(children=[PUNCTURE])


def planar_tower(k: int) -> EndType:
    """Depth-k planar tower over punctures (k = 1 is the flute end)."""
    if k < 0:
        raise ValueError("tower depth must be nonnegative")
    t = PUNCTURE
    for _ in range(k):
        t = node(children=[t])
    return t


def sort_key(t: EndType) -> tuple:
    """Total order on types, used for deterministic output."""
    return (t.depth(), len(t.children), t.direct_genus, t.self_accumulating,
            tuple(sorted(sort_key(c) for c in t.children)))


@functools.lru_cache(maxsize=None)
def canonicalize(t: EndType) -> EndType:
    """Normal form deciding equivalence of types by tree equality.

    Children are canonicalized and deduplicated, children lying below a
    sibling are absorbed, and the direct-genus flag is cleared when a
    genus-accumulated type already lies strictly below this node.
    """
    kids = frozenset(canonicalize(c) for c in t.children)
    reduced = frozenset(
        c for c in kids
        if not any(c2 != c and c in below(c2) for c2 in kids)
    )
    genus = t.direct_genus and not any(in_EG(c) for c in reduced)
    return EndType(genus, t.self_accumulating, reduced)


@functools.lru_cache(maxsize=None)
def below(t: EndType) -> FrozenSet[EndType]:
    """Types occurring strictly below t, plus t itself if it self-accumulates.

    Expects a canonical tree; members are canonical.
    """
    acc = set()
    for c in t.children:
        acc.add(c)
        acc |= below(c)
    if t.self_accumulating:
        acc.add(t)
    return frozenset(acc)


@functools.lru_cache(maxsize=None)
def in_EG(t: EndType) -> bool:
    """True when the end is accumulated by genus (directly or below)."""
    return t.direct_genus or any(in_EG(c) for c in t.children)


def preceq(y: EndType, x: EndType) -> bool:
    """The accumulation preorder: copies of y appear in every neighborhood of x.

    Both arguments are canonicalized; y precedes x when their canonical
    forms coincide or y's form occurs below x's.
    """
    cy, cx = canonicalize(y), canonicalize(x)
    return cy == cx or cy in below(cx)


def equivalent(x: EndType, y: EndType) -> bool:
    return canonicalize(x) == canonicalize(y)


def strictly_below(y: EndType, x: EndType) -> bool:
    return preceq(y, x) and not equivalent(y, x)


def immediate_predecessors(x: EndType) -> FrozenSet[Union[EndType, _Marker]]:
    """Maximal types strictly below x, plus HANDLE when genus is direct.

    The HANDLE marker stands in for handles accumulating to x when no
    genus-accumulated type lies below (equivalently, direct_genus is
    still set after canonicalization).
    """
    cx = canonicalize(x)
    strict = [t for t in below(cx) if t != cx]
    out: set = set()
    for t in strict:
        if not any(t2 != t and t in below(t2) for t2 in strict):
            out.add(t)
    if cx.direct_genus:
        out.add(HANDLE)
    return frozenset(out)


def format_type(t: EndType) -> str:
    """Readable, parseable rendering of a type."""
    t = canonicalize(t)
    if t.is_puncture():
        return "puncture"
    k = _tower_depth(t)
    if k is not None:
        return "omega^%d+1" % k if k > 1 else "omega+1"
    head = "cantor" if t.self_accumulating else "acc"
    inner = []
    if t.direct_genus:
        inner.append("genus")
    kids = sorted(t.children, key=sort_key)
    if kids or not t.self_accumulating:
        inner.append("[" + ",".join(format_type(c) for c in kids) + "]")
    return head + "(" + ",".join(inner) + ")"


def _tower_depth(t: EndType) -> Optional[int]:
    # pure planar tower: chain of single-child nodes ending in a puncture
    k = 0
    cur = t
    while True:
        if cur.direct_genus or cur.self_accumulating:
            return None
        if not cur.children:
            return k if k >= 1 else None
        if len(cur.children) != 1:
            return None
        (cur,) = cur.children
        k += 1


# ---------------------------------------------------------------------------
# Surface specifications
# ---------------------------------------------------------------------------


class SpecError(ValueError):
    """A surface description violating the model's invariants."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(self.diagnostics))


@dataclass(frozen=True)
class SurfaceSpec:
    """A whole infinite-type surface, up to homeomorphism of its end pair.

    roots: maximal end classes as (type, multiplicity) with multiplicity a
        positive integer or CANTOR.
    subordinates: finitely many extra non-maximal ends (absorbed away in
        canonical form).
    extra_punctures: isolated planar ends beyond the tree structure.
    extra_genus: finite genus not accumulated at any end.
    """

    roots: Tuple[Tuple[EndType, Multiplicity], ...] = ()
    subordinates: Tuple[Tuple[EndType, int], ...] = ()
    extra_punctures: int = 0
    extra_genus: int = 0

    def root_types(self) -> Tuple[EndType, ...]:
        return tuple(t for t, _ in self.roots)

    def multiplicity(self, t: EndType) -> Multiplicity:
        ct = canonicalize(t)
        for rt, m in self.roots:
            if rt == ct:
                return m
        raise KeyError(f"not a root type: {format_type(t)}")

    def is_countable(self) -> bool:
        """No Cantor classes anywhere in the end space."""
        if any(m is CANTOR for _, m in self.roots):
            return False
        closure = type_closure(self)
        return not any(t.self_accumulating for t in closure)


def type_closure(s: SurfaceSpec) -> FrozenSet[EndType]:
    """All canonical types mentioned in roots and subordinates, transitively."""
    seen: set = set()

    def walk(t: EndType) -> None:
        if t in seen:
            return
        seen.add(t)
        for c in t.children:
            walk(c)

    for t, _ in s.roots:
        walk(canonicalize(t))
    for t, _ in s.subordinates:
        walk(canonicalize(t))
    return frozenset(seen)


def canonicalize_spec(s: SurfaceSpec) -> Tuple[SurfaceSpec, list]:
    """Normal form of a surface description, plus diagnostics.

    Normalization performed:
      * every type canonicalized; puncture-type roots and subordinates are
        folded into ``extra_punctures``;
      * a root whose class is declared CANTOR gets the self-accumulation
        flag on its type (and vice versa), so the flag and the marker agree;
      * equivalent roots merge (CANTOR absorbs finite multiplicities);
      * roots strictly below another root are absorbed, as are subordinates
        lying below any root;
      * extra punctures are absorbed whenever a puncture occurs below some
        root; extra genus is absorbed whenever the surface has an end
        accumulated by genus.

    Diagnostics (fatal) are returned instead of raised so the validator can
    report all of them at once.
    """
    diags: list = []

    roots: dict = {}
    for t, m in s.roots:
        ct = canonicalize(t)
        if m is not CANTOR and (not isinstance(m, int) or m < 1):
            diags.append("root multiplicity must be a positive integer or "
                         "CANTOR: %s" % format_type(ct))
            continue
        if m is CANTOR or ct.self_accumulating:
            # a Cantor class accumulates on itself, so marker and flag imply
            # each other; normalize to flag-set + CANTOR
            ct = canonicalize(replace(ct, self_accumulating=True))
            m = CANTOR
        roots[ct] = _merge_mult(roots.get(ct), m)

    extra_p = s.extra_punctures
    if s.extra_punctures < 0 or s.extra_genus < 0:
        diags.append("extra punctures and genus must be nonnegative")
    for ct in [t for t in roots if t.is_puncture()]:
        m = roots.pop(ct)
        if m is CANTOR:
            diags.append("a Cantor class of isolated punctures is not a "
                         "valid end structure")
        else:
            extra_p += m

    # absorb roots dominated by other roots
    kept = {}
    for ct, m in roots.items():
        if any(ct != other and ct in below(other) for other in roots):
            continue
        kept[ct] = m
    roots = kept

    subs: dict = {}
    for t, n in s.subordinates:
        ct = canonicalize(t)
        if not isinstance(n, int) or n < 1:
            diags.append("subordinate count must be a positive integer: %s"
                         % format_type(ct))
            continue
        if ct.is_puncture():
            extra_p += n
            continue
        if any(ct == r or ct in below(r) for r in roots):
            continue  # infinite supply below a root absorbs it
        subs[ct] = subs.get(ct, 0) + n
        diags.append("subordinate not below any root: %s" % format_type(ct))

    if extra_p and any(PUNCTURE in below(r) for r in roots):
        extra_p = 0
    genus = s.extra_genus
    if genus and any(in_EG(r) for r in roots):
        genus = 0

    out = SurfaceSpec(
        roots=tuple(sorted(roots.items(), key=lambda rm: sort_key(rm[0]))),
        subordinates=tuple(sorted(subs.items(), key=lambda tn: sort_key(tn[0]))),
        extra_punctures=extra_p,
        extra_genus=genus,
    )
    if not out.roots:
        diags.append("finite-type surface: no maximal end classes remain "
                     "(only finitely many punctures and finite genus)")
    return out, diags


def _merge_mult(a: Optional[Multiplicity], b: Multiplicity) -> Multiplicity:
    if a is None:
        return b
    if a is CANTOR or b is CANTOR:
        return CANTOR
    return a + b


def maximal_types(s: SurfaceSpec) -> Tuple[Tuple[EndType, Multiplicity], ...]:
    """Maximal end classes with their sizes (finite or CANTOR)."""
    return s.roots


def e_cp(s: SurfaceSpec, a: EndType, b: EndType) -> FrozenSet[EndType]:
    """Common immediate predecessor types of two maximal classes.

    Counts types, not individual ends.  The HANDLE marker and types whose
    class is a Cantor set are excluded.  For a == b the pair means two
    distinct ends of that class, which requires multiplicity >= 2 or a
    Cantor class.
    """
    ca, cb = canonicalize(a), canonicalize(b)
    ma = s.multiplicity(ca)
    s.multiplicity(cb)  # both arguments must be maximal classes
    if ca == cb and ma is not CANTOR and ma < 2:
        raise ValueError("no second end of class %s (multiplicity 1)"
                         % format_type(ca))
    shared = immediate_predecessors(ca) & immediate_predecessors(cb)
    return frozenset(t for t in shared
                     if t is not HANDLE and not t.self_accumulating)


@dataclass(frozen=True)
class InvariantBundle:
    """Counting invariants driving the generator bounds."""

    M: int
    C: int
    M_iso: int
    G0: FrozenSet[EndType]
    maximal_classes: Tuple[Tuple[EndType, Multiplicity], ...]


def admissible_pairs(s: SurfaceSpec):
    """Unordered pairs of maximal ends that can cobound a shift strip."""
    types = s.root_types()
    for a, b in itertools.combinations(types, 2):
        yield a, b
    for t, m in s.roots:
        if m is CANTOR or m >= 2:
            yield t, t


def invariant_bundle(s: SurfaceSpec) -> InvariantBundle:
    types = s.root_types()
    c = 0
    for a, b in admissible_pairs(s):
        c = max(c, len(e_cp(s, a, b)))
    m_iso = sum(1 for t, m in s.roots
                if m is not CANTOR and not t.is_puncture())
    g0 = frozenset(t for t in types if t.direct_genus)
    return InvariantBundle(M=len(types), C=c, M_iso=m_iso, G0=g0,
                           maximal_classes=s.roots)
