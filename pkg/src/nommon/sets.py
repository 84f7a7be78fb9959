"""Canonical finite representation of orbit-finite nominal sets.

A single orbit is presented as a dimension n together with a group of
position permutations of {0..n-1}; its elements are n-tuples of
pairwise distinct atoms up to that group. An orbit-finite set is a
finite list of such orbits. All values are immutable and operations
are pure.
"""

from itertools import permutations

from nommon.errors import CapExceeded, InvalidInput, ensure_budget
from nommon.kernel import apply_positions, min_coset
from nommon.perm import Perm, fresh_stream

GROUP_CAP = 720
ORBIT_CAP = 4000


def generate_group(dim, generators, cap=GROUP_CAP):
    """Closure of position-permutation generators, as a sorted tuple."""
    ident = tuple(range(dim))
    for g in generators:
        if sorted(g) != list(range(dim)):
            raise InvalidInput(f"not a permutation of 0..{dim - 1}: {g}")
    group = {ident}
    frontier = [ident]
    while frontier:
        p = frontier.pop()
        for g in generators:
            q = apply_positions(p, g)
            if q not in group:
                if len(group) >= cap:
                    raise CapExceeded(f"group order cap {cap} exceeded")
                group.add(q)
                frontier.append(q)
    return tuple(sorted(group))


class OrbitDescriptor:
    """One orbit: dimension plus positional symmetry group."""

    __slots__ = ("dim", "group", "_hash")

    def __init__(self, dim, generators=(), *, _group=None):
        self.dim = dim
        self.group = _group if _group is not None else generate_group(dim, generators)
        self._hash = hash((dim, self.group))

    @property
    def generators(self):
        # the full group doubles as a (redundant) generator list
        return self.group

    def __eq__(self, other):
        return (
            isinstance(other, OrbitDescriptor)
            and self.dim == other.dim
            and self.group == other.group
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"OrbitDescriptor(dim={self.dim}, |G|={len(self.group)})"


class OrbitFiniteSet:
    """A finite list of orbits; the bound is the maximal dimension."""

    __slots__ = ("orbits", "_hash")

    def __init__(self, orbits):
        self.orbits = tuple(orbits)
        self._hash = hash(self.orbits)

    @property
    def bound(self):
        return max((o.dim for o in self.orbits), default=0)

    def element(self, orbit_index, atoms):
        return Element(self, orbit_index, atoms)

    def __eq__(self, other):
        return isinstance(other, OrbitFiniteSet) and self.orbits == other.orbits

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"OrbitFiniteSet({len(self.orbits)} orbits, bound={self.bound})"


class Element:
    """A point of an orbit-finite set: orbit index + canonical atom tuple.

    The stored tuple is the lexicographically least member of its coset
    under the orbit's position group.
    """

    __slots__ = ("set", "orbit", "tuple", "_hash")

    def __init__(self, owner, orbit_index, atoms):
        atoms = tuple(atoms)
        desc = owner.orbits[orbit_index]
        if len(atoms) != desc.dim:
            raise InvalidInput(f"tuple length {len(atoms)} != orbit dim {desc.dim}")
        if len(set(atoms)) != len(atoms):
            raise InvalidInput(f"atoms not pairwise distinct: {atoms}")
        self.set = owner
        self.orbit = orbit_index
        self.tuple = min_coset(atoms, desc.group)
        self._hash = hash((owner, orbit_index, self.tuple))

    def descriptor(self):
        return self.set.orbits[self.orbit]

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and self.orbit == other.orbit
            and self.tuple == other.tuple
            and self.set == other.set
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Element(orbit={self.orbit}, atoms={self.tuple})"


def canonicalize(owner, orbit_index, atoms):
    """Canonical coset representative of ``atoms`` in the given orbit."""
    return Element(owner, orbit_index, atoms)


def act(pi, x):
    """Group action on elements; the image is re-canonicalized."""
    return Element(x.set, x.orbit, pi.apply_tuple(x.tuple))


def least_support(x):
    """supp(x): exactly the atoms of the canonical tuple."""
    return frozenset(x.tuple)


def support_by_transpositions(x):
    """Least support recomputed by the fresh-transposition test (oracle path)."""
    atoms = set(x.tuple)
    b = next(fresh_stream(atoms))
    return frozenset(a for a in atoms if act(Perm.swap(a, b), x) != x)


def strong_set(dims):
    """Coproduct of orbits A^{#n} with trivial position groups."""
    return OrbitFiniteSet([OrbitDescriptor(n) for n in dims])


def unit_set():
    return strong_set([0])


def atoms_set():
    return strong_set([1])


def empty_set():
    return OrbitFiniteSet([])


class Injection:
    """Coproduct injection: shifts orbit indices."""

    def __init__(self, source, target, offset):
        self.source = source
        self.target = target
        self.offset = offset

    def __call__(self, x):
        return Element(self.target, x.orbit + self.offset, x.tuple)

    def preimage(self, y):
        lo = self.offset
        hi = self.offset + len(self.source.orbits)
        if not (lo <= y.orbit < hi):
            return None
        return Element(self.source, y.orbit - lo, y.tuple)


def coproduct_set(x_set, y_set):
    """Disjoint union of orbit lists, with the two injections."""
    total = OrbitFiniteSet(x_set.orbits + y_set.orbits)
    return total, Injection(x_set, total, 0), Injection(y_set, total, len(x_set.orbits))


def injective_tuples(pool, n):
    """All injective n-tuples over the pool (a sequence of atoms)."""
    return permutations(pool, n)


def elements_with_support(owner, support, budget=None):
    """All x with supp(x) a subset of the given finite atom set."""
    budget = ensure_budget(budget)
    pool = sorted(set(support))
    seen = []
    seen_set = set()
    for i, desc in enumerate(owner.orbits):
        if desc.dim > len(pool):
            continue
        for t in injective_tuples(pool, desc.dim):
            budget.tick()
            e = Element(owner, i, t)
            if e not in seen_set:
                seen_set.add(e)
                seen.append(e)
    return seen


def s_orbit_key(x, support):
    """Canonical invariant of the Perm_S-orbit of x.

    Atoms in S are kept; atoms outside S are renamed by first occurrence,
    minimizing over the orbit's position group. Two elements have equal
    keys iff some permutation fixing S maps one to the other.
    """
    s = frozenset(support)
    desc = x.descriptor()
    best = None
    for p in desc.group:
        t = apply_positions(x.tuple, p)
        ren = {}
        norm = []
        for a in t:
            if a in s:
                norm.append((0, a))
            else:
                if a not in ren:
                    ren[a] = len(ren)
                norm.append((1, ren[a]))
        cand = tuple(norm)
        if best is None or cand < best:
            best = cand
    return (x.orbit, best)


def instantiate_s_key(owner, key, support):
    """Concrete canonical representative for an S-orbit key."""
    orbit_index, norm = key
    fresh = fresh_stream(support)
    fresh_atoms = {}
    atoms = []
    for kind, v in norm:
        if kind == 0:
            atoms.append(v)
        else:
            if v not in fresh_atoms:
                fresh_atoms[v] = next(fresh)
            atoms.append(fresh_atoms[v])
    return Element(owner, orbit_index, atoms)


def s_orbit_reps(owner, support, budget=None):
    """One canonical representative per Perm_S-orbit of the set."""
    budget = ensure_budget(budget)
    s = sorted(set(support))
    reps = []
    seen = set()
    for i, desc in enumerate(owner.orbits):
        n = desc.dim
        # positions take either a distinct S-atom or a distinct fresh atom
        fresh = []
        gen = fresh_stream(s)
        for _ in range(n):
            fresh.append(next(gen))
        pool = s + fresh
        for t in injective_tuples(pool, n):
            budget.tick()
            e = Element(owner, i, t)
            key = s_orbit_key(e, s)
            if key not in seen:
                seen.add(key)
                reps.append(instantiate_s_key(owner, key, s))
    return reps


def orbit_reps(owner):
    """One canonical representative per orbit (atoms 0..n-1)."""
    return [Element(owner, i, range(d.dim)) for i, d in enumerate(owner.orbits)]


class Assignment:
    """Per-source-orbit piece of an equivariant map."""

    __slots__ = ("orbit", "posmap")

    def __init__(self, orbit, posmap):
        self.orbit = orbit
        self.posmap = tuple(posmap)

    def __eq__(self, other):
        return (
            isinstance(other, Assignment)
            and self.orbit == other.orbit
            and self.posmap == other.posmap
        )

    def __hash__(self):
        return hash((self.orbit, self.posmap))

    def __repr__(self):
        return f"Assignment(orbit={self.orbit}, posmap={self.posmap})"


class EquivariantMap:
    """Finitely presented equivariant map between orbit-finite sets.

    Per source orbit: a target orbit plus an injective map from target
    positions to source positions. Well-definedness w.r.t. the source
    orbit groups is a property checked by check_map_well_defined.
    """

    __slots__ = ("source", "target", "assignment")

    def __init__(self, source, target, assignment):
        assignment = tuple(assignment)
        if len(assignment) != len(source.orbits):
            raise InvalidInput("assignment must cover every source orbit")
        for src_idx, a in enumerate(assignment):
            n = source.orbits[src_idx].dim
            m = target.orbits[a.orbit].dim
            if len(a.posmap) != m:
                raise InvalidInput("posmap length must equal target dimension")
            if any(not (0 <= p < n) for p in a.posmap):
                raise InvalidInput("posmap index out of range")
            if len(set(a.posmap)) != len(a.posmap):
                raise InvalidInput("posmap must be injective")
        self.source = source
        self.target = target
        self.assignment = assignment

    def __call__(self, x):
        return apply_map(self, x)

    def __eq__(self, other):
        return (
            isinstance(other, EquivariantMap)
            and self.source == other.source
            and self.target == other.target
            and self.assignment == other.assignment
        )

    def __hash__(self):
        return hash((self.source, self.target, self.assignment))


def identity_map(owner):
    return EquivariantMap(
        owner, owner, [Assignment(i, range(d.dim)) for i, d in enumerate(owner.orbits)]
    )


def apply_map(f, x):
    if x.set != f.source:
        raise InvalidInput("element does not belong to the map's source set")
    a = f.assignment[x.orbit]
    return Element(f.target, a.orbit, (x.tuple[p] for p in a.posmap))


def map_from_concrete(source, target, fn):
    """EquivariantMap obtained by evaluating ``fn`` on each orbit rep.

    ``fn`` must be the restriction of an equivariant function; it may
    only return elements whose atoms come from the argument's tuple.
    Well-definedness w.r.t. orbit groups is not checked here.
    """
    assignment = []
    for i, desc in enumerate(source.orbits):
        x = Element(source, i, range(desc.dim))
        z = fn(x)
        if z.set != target:
            raise InvalidInput("concrete function left the target set")
        pos_of = {a: p for p, a in enumerate(x.tuple)}
        try:
            posmap = tuple(pos_of[a] for a in z.tuple)
        except KeyError:
            raise InvalidInput(
                f"image atoms {z.tuple} escape the argument's support {x.tuple}"
            ) from None
        assignment.append(Assignment(z.orbit, posmap))
    return EquivariantMap(source, target, assignment)


def compose_maps(g, f):
    """g after f."""
    if f.target != g.source:
        raise InvalidInput("maps not composable")
    assignment = []
    for a in f.assignment:
        b = g.assignment[a.orbit]
        assignment.append(Assignment(b.orbit, tuple(a.posmap[p] for p in b.posmap)))
    return EquivariantMap(f.source, g.target, assignment)


class MapReport:
    """Validation outcome with offending (orbit, generator) witnesses."""

    def __init__(self, failures):
        self.failures = tuple(failures)

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "MapReport(ok)"
        return f"MapReport(failures={list(self.failures)})"


def check_map_well_defined(f):
    """A map is well defined iff every source-group element keeps the
    assigned target tuple in its target coset."""
    failures = []
    for src_idx, a in enumerate(f.assignment):
        src_desc = f.source.orbits[src_idx]
        tgt_group = f.target.orbits[a.orbit].group
        base = min_coset(a.posmap, tgt_group)
        for g in src_desc.group:
            moved = tuple(g[p] for p in a.posmap)
            if min_coset(moved, tgt_group) != base:
                failures.append((src_idx, g))
    return MapReport(failures)


# ---------------------------------------------------------------------------
# products


def joint_atoms(x, y):
    """Atoms of the pair (x, y) in first-occurrence order."""
    out = []
    seen = set()
    for a in x.tuple + y.tuple:
        if a not in seen:
            seen.add(a)
            out.append(a)
    return out


def pair_pattern(x, y):
    """Canonical orbit invariant of the pair (x, y) plus the minimizing
    relabeling atom -> label in {0..d-1}."""
    atoms = joint_atoms(x, y)
    d = len(atoms)
    xg = x.descriptor().group
    yg = y.descriptor().group
    best = None
    best_ren = None
    for per in permutations(range(d)):
        ren = dict(zip(atoms, per))
        xt = min_coset(tuple(ren[a] for a in x.tuple), xg)
        yt = min_coset(tuple(ren[a] for a in y.tuple), yg)
        cand = (x.orbit, xt, y.orbit, yt)
        if best is None or cand < best:
            best = cand
            best_ren = ren
    return best, best_ren


class ProductSet:
    """X x Y with canonical, duplicate-free orbit enumeration.

    Each product orbit stores the factor orbit indices and the
    reference pattern (label tuples of both components), from which the
    pairing/unpairing maps are derived.
    """

    def __init__(self, left, right, budget=None, orbit_cap=ORBIT_CAP):
        budget = ensure_budget(budget)
        self.left = left
        self.right = right
        self._key_to_orbit = {}
        descriptors = []
        patterns = []  # (x_orbit, x_labels, y_orbit, y_labels) per product orbit
        factors = []
        for i, xd in enumerate(left.orbits):
            m = xd.dim
            x_ref = Element(left, i, range(m))
            for j, yd in enumerate(right.orbits):
                n = yd.dim
                for t in injective_tuples(range(m + n), n):
                    budget.tick()
                    y = Element(right, j, t)
                    key, _ren = pair_pattern(x_ref, y)
                    if key in self._key_to_orbit:
                        continue
                    if len(descriptors) >= orbit_cap:
                        raise CapExceeded(f"orbit cap {orbit_cap} exceeded in product")
                    x_orbit, x_labels, y_orbit, y_labels = key
                    d = len(set(x_labels) | set(y_labels))
                    stab = self._stabilizer(x_orbit, x_labels, y_orbit, y_labels, d)
                    self._key_to_orbit[key] = len(descriptors)
                    descriptors.append(OrbitDescriptor(d, _group=stab))
                    patterns.append(key)
                    factors.append((i, j))
        self.set = OrbitFiniteSet(descriptors)
        self.patterns = tuple(patterns)
        self.factors = tuple(factors)
        self._pair_cache = {}
        self.proj_left = EquivariantMap(
            self.set, left, [Assignment(p[0], p[1]) for p in patterns]
        )
        self.proj_right = EquivariantMap(
            self.set, right, [Assignment(p[2], p[3]) for p in patterns]
        )

    def _stabilizer(self, x_orbit, x_labels, y_orbit, y_labels, d):
        xg = self.left.orbits[x_orbit].group
        yg = self.right.orbits[y_orbit].group
        x_min = min_coset(x_labels, xg)
        y_min = min_coset(y_labels, yg)
        stab = []
        for sigma in permutations(range(d)):
            if (
                min_coset(tuple(sigma[a] for a in x_labels), xg) == x_min
                and min_coset(tuple(sigma[a] for a in y_labels), yg) == y_min
            ):
                stab.append(sigma)
        if len(stab) > GROUP_CAP:
            raise CapExceeded("stabilizer exceeds group cap")
        return tuple(sorted(stab))

    def pair(self, x, y):
        """The element of X x Y denoting the concrete pair (x, y)."""
        cached = self._pair_cache.get((x, y))
        if cached is not None:
            return cached
        key, ren = pair_pattern(x, y)
        orbit = self._key_to_orbit.get(key)
        if orbit is None:
            raise InvalidInput("pair pattern not found among product orbits")
        d = self.set.orbits[orbit].dim
        inv = [None] * d
        for a, l in ren.items():
            inv[l] = a
        e = Element(self.set, orbit, inv)
        self._pair_cache[(x, y)] = e
        return e

    def unpair(self, e):
        """The concrete component pair of a product element."""
        x_orbit, x_labels, y_orbit, y_labels = self.patterns[e.orbit]
        x = Element(self.left, x_orbit, (e.tuple[l] for l in x_labels))
        y = Element(self.right, y_orbit, (e.tuple[l] for l in y_labels))
        return x, y


def product_set(x_set, y_set, budget=None):
    """Orbit enumeration of X x Y together with pairing/unpairing."""
    return ProductSet(x_set, y_set, budget=budget)
