"""Finite permutations and permutation groups.

Groups carry a stabilizer chain (base points, per-level strong generators,
and transversals) built by a deterministic Schreier-Sims pass, giving exact
orders and a sound, complete membership test.  Base points are chosen
ascending, and every iteration order is fixed, so identical inputs always
produce identical chains, generator lists, and reports.

Groups are immutable once closed; membership tests and queries are pure.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapError, GroupError, InternalCheckError

#: Guard for operations that must enumerate every group element.
DEFAULT_ELEMENT_CAP = 200_000

#: Guard for subgroup-lattice enumeration.
DEFAULT_SUBGROUP_CAP = 2000


class Perm:
    """A permutation of 0..n-1, stored as the tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if set(images) != set(range(len(images))):
            raise GroupError(f"not a bijection of 0..{len(images) - 1}: {images}")
        object.__setattr__(self, "images", images)

    @staticmethod
    def identity(degree: int) -> "Perm":
        return Perm(range(degree))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Perm") -> "Perm":
        # (p * q)(x) = p(q(x))
        if self.degree != other.degree:
            raise GroupError(f"degree mismatch: {self.degree} vs {other.degree}")
        img = self.images
        return Perm(img[x] for x in other.images)

    def inverse(self) -> "Perm":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Perm(inv)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def apply_tuple(self, t: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.images[e] for e in t)

    def apply_set(self, s: Iterable[int]) -> frozenset[int]:
        return frozenset(self.images[e] for e in s)

    def cycles(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for start in range(len(self.images)):
            if start in seen or self.images[start] == start:
                continue
            cyc = [start]
            seen.add(start)
            nxt = self.images[start]
            while nxt != start:
                cyc.append(nxt)
                seen.add(nxt)
                nxt = self.images[nxt]
            out.append(tuple(cyc))
        return out

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(p) for p in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm[{self}]"

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __lt__(self, other: "Perm") -> bool:
        return self.images < other.images

    def __hash__(self) -> int:
        return hash(self.images)


class PermGroup:
    """A permutation group represented by a completed stabilizer chain.

    Construct through `close_group`; the constructor trusts its arguments.
    """

    __slots__ = ("degree", "generators", "base", "_levels", "_trans", "order")

    def __init__(self, degree, generators, base, levels, trans, order):
        self.degree = degree
        self.generators = generators
        self.base = base
        self._levels = levels
        self._trans = trans
        self.order = order

    def _strip(self, g: Perm, start: int = 0) -> tuple[Perm, int]:
        i = start
        while i < len(self.base):
            p = g(self.base[i])
            u = self._trans[i].get(p)
            if u is None:
                return g, i
            g = u.inverse() * g
            i += 1
        return g, i

    def contains(self, g: Perm) -> bool:
        if g.degree != self.degree:
            return False
        residue, _ = self._strip(g)
        return residue.is_identity()

    __contains__ = contains

    def level_generators(self, k: int) -> list[Perm]:
        """Strong generators fixing the first k base points pointwise."""
        return list(self._levels[k]) if k < len(self._levels) else []

    def elements(self, cap: int | None = DEFAULT_ELEMENT_CAP) -> list[Perm]:
        """Every group element, sorted by image tuple."""
        if cap is not None and self.order > cap:
            raise CapError(f"group of order {self.order} exceeds enumeration cap {cap}")
        elems = [Perm.identity(self.degree)]
        for i in reversed(range(len(self.base))):
            layer = []
            for point in sorted(self._trans[i]):
                u = self._trans[i][point]
                layer.extend(u * e for e in elems)
            elems = layer
        elems.sort()
        return elems

    def equals(self, other: "PermGroup") -> bool:
        """Element-set equality, decided without enumeration."""
        return (self.degree == other.degree
                and self.order == other.order
                and all(other.contains(g) for g in self.generators))

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return (self.degree == other.degree
                and all(other.contains(g) for g in self.generators))

    def generator_strings(self) -> tuple[str, ...]:
        return tuple(str(g) for g in self.generators)

    def __repr__(self) -> str:
        gens = ", ".join(self.generator_strings()) or "()"
        return f"PermGroup(degree={self.degree}, order={self.order}, gens=[{gens}])"


def close_group(generators: Iterable[Perm], *, degree: int | None = None,
                base_prefix: Sequence[int] = ()) -> PermGroup:
    """Close a generator list into a `PermGroup` with a stabilizer chain.

    `base_prefix` forces the base to start with the given points (in order),
    which makes pointwise stabilizers directly readable off the chain; further
    base points are the smallest moved points, ascending.
    """
    gens = []
    for g in generators:
        if not isinstance(g, Perm):
            g = Perm(g)
        if degree is None:
            degree = g.degree
        elif g.degree != degree:
            raise GroupError(f"mixed degrees: {g.degree} vs {degree}")
        if not g.is_identity() and g not in gens:
            gens.append(g)
    if degree is None:
        raise GroupError("degree is required to close an empty generator list")

    ident = Perm.identity(degree)
    base: list[int] = []
    levels: list[list[Perm]] = []
    trans: list[dict[int, Perm]] = []

    def add_base_point(pt: int):
        if not 0 <= pt < degree:
            raise GroupError(f"base point {pt} out of range for degree {degree}")
        if pt in base:
            return
        base.append(pt)
        levels.append([])
        trans.append({pt: ident})

    for pt in base_prefix:
        add_base_point(pt)

    def min_moved(g: Perm) -> int:
        for i, j in enumerate(g.images):
            if i != j:
                return i
        raise InternalCheckError("identity has no moved point")

    def distribute(g: Perm):
        j = 0
        while j < len(base) and g(base[j]) == base[j]:
            j += 1
        if j == len(base):
            add_base_point(min_moved(g))
        for level in range(j + 1):
            if g not in levels[level]:
                levels[level].append(g)

    for g in gens:
        distribute(g)

    def rebuild(i: int):
        t = {base[i]: ident}
        frontier = [base[i]]
        while frontier:
            nxt = []
            for p in frontier:
                for s in levels[i]:
                    q = s(p)
                    if q not in t:
                        t[q] = s * t[p]
                        nxt.append(q)
            frontier = nxt
        trans[i] = t

    def strip(g: Perm, start: int) -> tuple[Perm, int]:
        i = start
        while i < len(base):
            p = g(base[i])
            u = trans[i].get(p)
            if u is None:
                return g, i
            g = u.inverse() * g
            i += 1
        return g, i

    def complete_level(i: int):
        rebuild(i)
        points = sorted(trans[i])
        level_gens = list(levels[i])
        for point in points:
            u = trans[i][point]
            for s in level_gens:
                rep = trans[i][s(point)]
                schreier = rep.inverse() * (s * u)
                if schreier.is_identity():
                    continue
                residue, j = strip(schreier, i + 1)
                if residue.is_identity():
                    continue
                if j == len(base):
                    add_base_point(min_moved(residue))
                for level in range(i + 1, j + 1):
                    levels[level].append(residue)
                for level in range(j, i, -1):
                    complete_level(level)

    i = len(base) - 1
    while i >= 0:
        complete_level(i)
        i -= 1
    for i in range(len(base)):
        rebuild(i)

    order = 1
    for t in trans:
        order *= len(t)
    return PermGroup(degree, tuple(gens), tuple(base), tuple(tuple(l) for l in levels),
                     tuple(trans), order)


def trivial_group(degree: int) -> PermGroup:
    return close_group([], degree=degree)


# -- actions and stabilizers ----------------------------------------------------


def orbit(G: PermGroup, t: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    """The orbit of a tuple under coordinatewise action, in canonical order."""
    t = tuple(t)
    for e in t:
        if not 0 <= e < G.degree:
            raise GroupError(f"tuple entry {e} out of range for degree {G.degree}")
    seen = {t}
    frontier = [t]
    while frontier:
        nxt = []
        for cur in frontier:
            for g in G.generators:
                img = g.apply_tuple(cur)
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return tuple(sorted(seen))


def orbit_of_point(G: PermGroup, point: int) -> frozenset[int]:
    return frozenset(t[0] for t in orbit(G, (point,)))


def stabilizer_pointwise(G: PermGroup, t: Sequence[int]) -> PermGroup:
    """The subgroup of G fixing every entry of the tuple."""
    points = []
    for e in t:
        if not 0 <= e < G.degree:
            raise GroupError(f"tuple entry {e} out of range for degree {G.degree}")
        if e not in points:
            points.append(e)
    chain = close_group(G.generators, degree=G.degree, base_prefix=points)
    return close_group(chain.level_generators(len(points)), degree=G.degree)


def setwise_stabilizer(G: PermGroup, F: Iterable[Sequence[int]],
                       cap: int = DEFAULT_ELEMENT_CAP) -> PermGroup:
    """The subgroup of G mapping the set of tuples F onto itself."""
    tuples = {tuple(t) for t in F}
    lengths = {len(t) for t in tuples}
    if len(lengths) > 1:
        raise GroupError(f"mixed tuple lengths in set: {sorted(lengths)}")
    for t in tuples:
        for e in t:
            if not 0 <= e < G.degree:
                raise GroupError(f"tuple entry {e} out of range for degree {G.degree}")
    kept = [g for g in G.elements(cap)
            if {g.apply_tuple(t) for t in tuples} == tuples]
    return close_group(_minimal_generators(kept), degree=G.degree)


def _minimal_generators(elements: list[Perm]) -> list[Perm]:
    """A small deterministic generating list for a set of group elements."""
    if not elements:
        return []
    degree = elements[0].degree
    gens: list[Perm] = []
    known = {Perm.identity(degree)}
    for g in sorted(elements):
        if g not in known:
            gens.append(g)
            known = _word_closure(gens, degree)
    return gens


def _word_closure(gens: list[Perm], degree: int) -> set[Perm]:
    """All products of the generators (finite group, so inverses come free)."""
    elems = {Perm.identity(degree)}
    frontier = [Perm.identity(degree)]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                f = e * g
                if f not in elems:
                    elems.add(f)
                    nxt.append(f)
        frontier = nxt
    return elems


# -- subgroup lattice -------------------------------------------------------------


def all_subgroups(G: PermGroup, cap: int = DEFAULT_SUBGROUP_CAP) -> list[PermGroup]:
    """Every subgroup of G exactly once, built bottom-up by joining cyclic
    subgroups, sorted by (order, element list).

    Complete because each subgroup is the join of the cyclic subgroups of its
    own elements.
    """
    if G.order > cap:
        raise CapError(f"group order {G.order} exceeds subgroup enumeration cap {cap}")
    ident = Perm.identity(G.degree)
    elems = G.elements(cap=None)

    # one (cyclic subgroup, generator) pair per distinct cyclic subgroup
    cyclics: list[tuple[frozenset[Perm], Perm]] = []
    seen_cyc = set()
    for g in elems:
        if g.is_identity():
            continue
        powers = {ident}
        x = g
        while not x.is_identity():
            powers.add(x)
            x = x * g
        key = frozenset(powers)
        if key not in seen_cyc:
            seen_cyc.add(key)
            cyclics.append((key, g))

    gens_of: dict[frozenset[Perm], list[Perm]] = {}
    trivial = frozenset({ident})
    gens_of[trivial] = []
    found = {trivial}
    worklist = [trivial]
    while worklist:
        H = worklist.pop(0)
        for C, c_gen in cyclics:
            if C <= H:
                continue
            seed = gens_of[H] + [c_gen]
            join = frozenset(_word_closure(seed, G.degree))
            if join not in found:
                found.add(join)
                gens_of[join] = _minimal_generators(sorted(join))
                worklist.append(join)

    ordered = sorted(found, key=lambda s: (len(s), sorted(p.images for p in s)))
    return [close_group(gens_of[s], degree=G.degree) for s in ordered]


def is_normal_subgroup(H: PermGroup, G: PermGroup) -> bool:
    """True iff gHg^-1 = H for every g in G; H must actually be a subgroup."""
    if H.degree != G.degree:
        raise GroupError(f"degree mismatch: {H.degree} vs {G.degree}")
    if not H.is_subgroup_of(G):
        raise GroupError("H is not a subgroup of G")
    for g in G.generators:
        ginv = g.inverse()
        for h in H.generators:
            if not H.contains(g * h * ginv):
                return False
    return True


# -- restriction to an invariant set ----------------------------------------------


@dataclass(frozen=True)
class Restriction:
    """Outcome of restricting a group to a setwise-invariant subset.

    `image` acts on 0..len(points)-1 where position i stands for element
    `points[i]` (the subset in ascending order); `kernel` is the pointwise
    stabilizer of the subset inside the original group.
    """

    image: PermGroup
    kernel: PermGroup
    points: tuple[int, ...]

    def position(self, element: int) -> int:
        try:
            return self.points.index(element)
        except ValueError:
            raise GroupError(f"element {element} is not in the restricted set") from None

    def to_elements(self, positions: Iterable[int]) -> frozenset[int]:
        return frozenset(self.points[p] for p in positions)


def restrict_to_invariant_set(G: PermGroup, C: Iterable[int]) -> Restriction:
    """Split G along an invariant subset into restriction image and kernel.

    Errors if some generator moves C off itself; checks |G| = |image|*|kernel|.
    """
    points = tuple(sorted(set(C)))
    for e in points:
        if not 0 <= e < G.degree:
            raise GroupError(f"element {e} out of range for degree {G.degree}")
    pset = frozenset(points)
    index = {e: i for i, e in enumerate(points)}
    from .errors import NotInvariantError

    restricted = []
    for g in G.generators:
        if g.apply_set(pset) != pset:
            raise NotInvariantError(
                f"set {points} is not setwise invariant under the group")
        restricted.append(Perm(index[g(e)] for e in points))
    image = close_group(restricted, degree=len(points))
    kernel = stabilizer_pointwise(G, points)
    if image.order * kernel.order != G.order:
        raise InternalCheckError(
            f"restriction split failed: {G.order} != {image.order} * {kernel.order}")
    return Restriction(image=image, kernel=kernel, points=points)
