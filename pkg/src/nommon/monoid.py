"""Orbit-finite nominal monoids: validation, constructions, powers.

A monoid is a carrier set, a unit element of empty support, and an
equivariant multiplication map carrier x carrier -> carrier stored on
canonical product-orbit representatives. Everything downstream
(morphisms, sub/quotient monoids, omega powers, enumeration) reduces
to finite computations on those representatives.
"""

import itertools
from math import factorial

from nommon.errors import CapExceeded, InvalidInput, ensure_budget
from nommon.fssets import FsSubset
from nommon.fssets import member as fs_member
from nommon.perm import Perm, extend_injection, fresh_stream
from nommon.sets import (
    GROUP_CAP,
    Assignment,
    Element,
    EquivariantMap,
    OrbitDescriptor,
    OrbitFiniteSet,
    act,
    apply_positions,
    check_map_well_defined,
    elements_with_support,
    map_from_concrete,
    min_coset,
    orbit_reps,
    product_set,
)


class NominalMonoid:
    """Carrier + unit + multiplication on canonical product orbits."""

    def __init__(self, carrier, unit, mult, product=None):
        if unit.set != carrier:
            raise InvalidInput("unit must live in the carrier")
        self.carrier = carrier
        self.unit = unit
        self.product = product if product is not None else product_set(carrier, carrier)
        if mult.source != self.product.set or mult.target != carrier:
            raise InvalidInput("mult must map carrier x carrier to carrier")
        self.mult = mult
        self._cache = {}

    def multiply(self, x, y):
        key = (x, y)
        z = self._cache.get(key)
        if z is None:
            z = self.mult(self.product.pair(x, y))
            self._cache[key] = z
        return z

    def __repr__(self):
        return f"NominalMonoid({len(self.carrier.orbits)} orbits)"


def monoid_from_concrete(carrier, unit, mult_value, product=None):
    """Monoid whose multiplication is read off a concrete function.

    ``mult_value`` is evaluated once per product-orbit reference pair;
    its results must stay inside the pair's atoms (equivariance).
    """
    product = product if product is not None else product_set(carrier, carrier)

    def fn(e):
        x, y = product.unpair(e)
        return mult_value(x, y)

    mult = map_from_concrete(product.set, carrier, fn)
    return NominalMonoid(carrier, unit, mult, product)


class MonoidReport:
    """Validation outcome; failures are (kind, witness) pairs."""

    def __init__(self, failures):
        self.failures = tuple(failures)

    @property
    def ok(self):
        return not self.failures

    def __bool__(self):
        return self.ok

    def __repr__(self):
        if self.ok:
            return "MonoidReport(ok)"
        return f"MonoidReport(failures={list(self.failures)})"


def validate_monoid(m, budget=None):
    """Check the monoid axioms on canonical representatives.

    Associativity is verified on all orbit representatives of the
    triple product: x ranges over orbit reps, y over elements supported
    by atoms(x) plus k fresh atoms, z over atoms(x, y) plus k fresh.
    """
    budget = ensure_budget(budget)
    failures = []
    if m.unit.tuple != ():
        failures.append(("unit-support", m.unit))
    wd = check_map_well_defined(m.mult)
    for orbit, gen in wd.failures:
        failures.append(("mult-ill-defined", (orbit, gen)))
    k = m.carrier.bound
    reps = orbit_reps(m.carrier)
    for x in reps:
        budget.tick()
        if m.multiply(m.unit, x) != x:
            failures.append(("left-unit", x))
        if m.multiply(x, m.unit) != x:
            failures.append(("right-unit", x))
    for x in reps:
        pool_y = sorted(x.tuple)
        gen_y = fresh_stream(pool_y)
        pool_y = pool_y + [next(gen_y) for _ in range(k)]
        for y in elements_with_support(m.carrier, pool_y, budget=budget):
            pool_z = sorted(set(x.tuple) | set(y.tuple))
            gen_z = fresh_stream(pool_z)
            pool_z = pool_z + [next(gen_z) for _ in range(k)]
            for z in elements_with_support(m.carrier, pool_z, budget=budget):
                budget.tick()
                lhs = m.multiply(m.multiply(x, y), z)
                rhs = m.multiply(x, m.multiply(y, z))
                if lhs != rhs:
                    failures.append(("associativity", (x, y, z, lhs, rhs)))
    return MonoidReport(failures)


# --- powers ---------------------------------------------------------------


def _power_cycle(m, x):
    """Powers x, x^2, ... until the first repetition.

    Returns (powers, start, period): powers[i] = x^(i+1), and
    x^(start+1+period) = x^(start+1) is the first repeat.
    """
    powers = []
    seen = {}
    cur = x
    while cur not in seen:
        seen[cur] = len(powers)
        powers.append(cur)
        cur = m.multiply(cur, x)
    start = seen[cur]
    period = len(powers) - start
    return powers, start, period


def power(m, x, e):
    """x^e for an arbitrary-precision natural e, via cycle reduction."""
    if e < 0:
        raise InvalidInput("negative exponent")
    if e == 0:
        return m.unit
    powers, start, period = _power_cycle(m, x)
    if e <= len(powers):
        return powers[e - 1]
    # exponents e and start+1 + (e - start - 1) % period agree past the tail
    idx = start + (e - 1 - start) % period
    return powers[idx]


def omega_power(m, x):
    """The unique idempotent power of x."""
    powers, start, period = _power_cycle(m, x)
    idempotents = [
        p for p in powers[start : start + period] if m.multiply(p, p) == p
    ]
    if len(idempotents) != 1:
        raise InvalidInput(f"power cycle of {x} has {len(idempotents)} idempotents")
    return idempotents[0]


def omega_exponent(m):
    """(n * k!)! with n the orbit count and k the bound; exact integer."""
    n = len(m.carrier.orbits)
    k = m.carrier.bound
    return factorial(n * factorial(k))


def check_omega_formula(m):
    """Does x^((n*k!)!) equal the idempotent power for every orbit rep?"""
    e = omega_exponent(m)
    return all(power(m, x, e) == omega_power(m, x) for x in orbit_reps(m.carrier))


def is_aperiodic(m):
    """x^w . x = x^w on every orbit representative."""
    return all(
        m.multiply(omega_power(m, x), x) == omega_power(m, x)
        for x in orbit_reps(m.carrier)
    )


# --- morphisms ------------------------------------------------------------


class MonoidMorphism:
    """A structure-preserving equivariant map between monoids."""

    def __init__(self, dom, cod, emap):
        if emap.source != dom.carrier or emap.target != cod.carrier:
            raise InvalidInput("underlying map does not match the monoids")
        self.dom = dom
        self.cod = cod
        self.map = emap

    def __call__(self, x):
        return self.map(x)

    def __eq__(self, other):
        return (
            isinstance(other, MonoidMorphism)
            and self.dom is other.dom
            and self.cod is other.cod
            and self.map == other.map
        )

    def __hash__(self):
        return hash((id(self.dom), id(self.cod), self.map))


def validate_morphism(h, budget=None):
    """Unit preservation and multiplicativity on product-orbit reps."""
    budget = ensure_budget(budget)
    failures = []
    wd = check_map_well_defined(h.map)
    for orbit, gen in wd.failures:
        failures.append(("ill-defined", (orbit, gen)))
    if h(h.dom.unit) != h.cod.unit:
        failures.append(("unit", h.dom.unit))
    for e in orbit_reps(h.dom.product.set):
        budget.tick()
        x, y = h.dom.product.unpair(e)
        lhs = h(h.dom.multiply(x, y))
        rhs = h.cod.multiply(h(x), h(y))
        if lhs != rhs:
            failures.append(("mult", (x, y, lhs, rhs)))
    return MonoidReport(failures)


def identity_morphism(m):
    from nommon.sets import identity_map

    return MonoidMorphism(m, m, identity_map(m.carrier))


def compose_morphisms(g, h):
    """g after h."""
    from nommon.sets import compose_maps

    if h.cod is not g.dom and h.cod.carrier != g.dom.carrier:
        raise InvalidInput("morphisms not composable")
    return MonoidMorphism(h.dom, g.cod, compose_maps(g.map, h.map))


# --- products -------------------------------------------------------------


class ProductMonoidResult:
    """Componentwise monoid on X x Y with projection morphisms."""

    def __init__(self, monoid, pairs, proj1, proj2):
        self.monoid = monoid
        self.pairs = pairs  # the carrier-level ProductSet of the two factors
        self.proj1 = proj1
        self.proj2 = proj2


def product_monoid(m, n, budget=None):
    pairs = product_set(m.carrier, n.carrier, budget=budget)
    unit = pairs.pair(m.unit, n.unit)

    def mult_value(x, y):
        x1, x2 = pairs.unpair(x)
        y1, y2 = pairs.unpair(y)
        return pairs.pair(m.multiply(x1, y1), n.multiply(x2, y2))

    prod = monoid_from_concrete(pairs.set, unit, mult_value)
    proj1 = MonoidMorphism(prod, m, pairs.proj_left)
    proj2 = MonoidMorphism(prod, n, pairs.proj_right)
    return ProductMonoidResult(prod, pairs, proj1, proj2)


def pair_morphisms(h1, h2, pm=None):
    """The pairing <h1, h2> into the product of the codomains."""
    if h1.dom is not h2.dom and h1.dom.carrier != h2.dom.carrier:
        raise InvalidInput("pairing needs a common domain")
    if pm is None:
        pm = product_monoid(h1.cod, h2.cod)
    emap = map_from_concrete(
        h1.dom.carrier, pm.monoid.carrier, lambda x: pm.pairs.pair(h1(x), h2(x))
    )
    return MonoidMorphism(h1.dom, pm.monoid, emap), pm


# --- generator maps into a monoid (free-monoid morphisms) -----------------


class GeneratorMap:
    """An equivariant map h0: Sigma -> M, standing for its free
    extension Sigma* -> M via eval_word."""

    def __init__(self, sigma, monoid, h0):
        if h0.source != sigma or h0.target != monoid.carrier:
            raise InvalidInput("generator map must send Sigma into the carrier")
        self.sigma = sigma
        self.monoid = monoid
        self.h0 = h0

    def __call__(self, letter):
        return self.h0(letter)

    def eval_word(self, letters):
        out = self.monoid.unit
        for letter in letters:
            out = self.monoid.multiply(out, self.h0(letter))
        return out

    def __eq__(self, other):
        return (
            isinstance(other, GeneratorMap)
            and self.sigma == other.sigma
            and self.monoid is other.monoid
            and self.h0 == other.h0
        )

    def __hash__(self):
        return hash((self.sigma, id(self.monoid), self.h0))


def _orbit_assignment_choices(sigma, carrier, orbit_index, budget):
    """All per-orbit assignments compatible with the orbit's group."""
    desc = sigma.orbits[orbit_index]
    x = Element(sigma, orbit_index, range(desc.dim))
    pos_of = {a: p for p, a in enumerate(x.tuple)}
    out = []
    for target in elements_with_support(carrier, range(desc.dim), budget=budget):
        posmap = tuple(pos_of[a] for a in target.tuple)
        tgt_group = carrier.orbits[target.orbit].group
        base = min_coset(posmap, tgt_group)
        if all(
            min_coset(tuple(g[p] for p in posmap), tgt_group) == base
            for g in desc.group
        ):
            out.append(Assignment(target.orbit, posmap))
    return out


def enumerate_monoid_maps(sigma, m, budget=None):
    """All equivariant maps Sigma -> M, as GeneratorMaps."""
    budget = ensure_budget(budget)
    choices = [
        _orbit_assignment_choices(sigma, m.carrier, i, budget)
        for i in range(len(sigma.orbits))
    ]
    maps = []
    for combo in itertools.product(*choices):
        budget.tick()
        emap = EquivariantMap(sigma, m.carrier, combo)
        maps.append(GeneratorMap(sigma, m, emap))
    return maps


# --- submonoids and images ------------------------------------------------


class SubMonoid:
    """An equivariant submonoid: a union of carrier orbits."""

    def __init__(self, monoid, inclusion, orbit_indices):
        self.monoid = monoid
        self.inclusion = inclusion
        self.orbit_indices = tuple(orbit_indices)


def _mult_orbit_table(m):
    """Per product orbit: (left factor orbit, right factor orbit, result orbit)."""
    return [
        (i, j, m.mult.assignment[p].orbit)
        for p, (i, j) in enumerate(m.product.factors)
    ]


def closed_orbit_indices(m, start):
    """Least multiplication-closed orbit set containing start and the unit."""
    table = _mult_orbit_table(m)
    closed = set(start) | {m.unit.orbit}
    changed = True
    while changed:
        changed = False
        for i, j, r in table:
            if i in closed and j in closed and r not in closed:
                closed.add(r)
                changed = True
    return frozenset(closed)


def submonoid_from_orbits(m, indices):
    """Materialize a union of orbits (must be mult-closed) as a monoid."""
    selected = sorted(indices)
    if m.unit.orbit not in indices:
        raise InvalidInput("a submonoid must contain the unit orbit")
    sub_set = OrbitFiniteSet([m.carrier.orbits[i] for i in selected])
    to_full = {s: f for s, f in enumerate(selected)}
    to_sub = {f: s for s, f in enumerate(selected)}

    def embed(x):
        return Element(m.carrier, to_full[x.orbit], x.tuple)

    def restrict(y):
        if y.orbit not in to_sub:
            raise InvalidInput("orbit set is not multiplication-closed")
        return Element(sub_set, to_sub[y.orbit], y.tuple)

    unit = restrict(m.unit)
    sub = monoid_from_concrete(
        sub_set, unit, lambda x, y: restrict(m.multiply(embed(x), embed(y)))
    )
    incl = map_from_concrete(sub_set, m.carrier, embed)
    return SubMonoid(sub, MonoidMorphism(sub, m, incl), selected)


def submonoid_generated(m, gens):
    """Least equivariant submonoid containing the generators' orbits."""
    return submonoid_from_orbits(m, closed_orbit_indices(m, {g.orbit for g in gens}))


def image_factorization(h):
    """h = inclusion after surjection-onto-image."""
    image_orbits = {h.map.assignment[i].orbit for i in range(len(h.dom.carrier.orbits))}
    image_orbits.add(h.cod.unit.orbit)
    sub = submonoid_from_orbits(h.cod, image_orbits)
    to_sub = {f: s for s, f in enumerate(sub.orbit_indices)}

    def onto(x):
        y = h(x)
        return Element(sub.monoid.carrier, to_sub[y.orbit], y.tuple)

    e = MonoidMorphism(
        h.dom, sub.monoid, map_from_concrete(h.dom.carrier, sub.monoid.carrier, onto)
    )
    return e, sub.inclusion


# --- congruences and quotients --------------------------------------------


class Congruence:
    """A monoid congruence presented by its pair set in M x M."""

    def __init__(self, monoid, pairs):
        if pairs.carrier != monoid.product.set:
            raise InvalidInput("pair set must live in carrier x carrier")
        self.monoid = monoid
        self.pairs = pairs

    def related(self, x, y):
        return fs_member(self.pairs, self.monoid.product.pair(x, y))


def check_congruence(cong, budget=None):
    """Spot-check the congruence laws on a concrete pool."""
    budget = ensure_budget(budget)
    m = cong.monoid
    k = m.carrier.bound
    pool = sorted(cong.pairs.support)
    gen = fresh_stream(pool)
    pool = pool + [next(gen) for _ in range(2 * k)]
    elems = elements_with_support(m.carrier, pool, budget=budget)
    failures = []
    for x in elems:
        if not cong.related(x, x):
            failures.append(("reflexive", x))
    for x, y in itertools.combinations(elems, 2):
        budget.tick()
        if cong.related(x, y) != cong.related(y, x):
            failures.append(("symmetric", (x, y)))
    related_pairs = [
        (x, y) for x in elems for y in elems if x != y and cong.related(x, y)
    ]
    for (x, y), z in itertools.product(related_pairs, elems):
        budget.tick()
        if cong.related(y, z) and not cong.related(x, z):
            failures.append(("transitive", (x, y, z)))
        if not cong.related(m.multiply(x, z), m.multiply(y, z)):
            failures.append(("right-compatible", (x, y, z)))
        if not cong.related(m.multiply(z, x), m.multiply(z, y)):
            failures.append(("left-compatible", (x, y, z)))
    return MonoidReport(failures)


def congruence_generated(m, seeds, budget=None):
    """Least monoid congruence containing the seed pairs.

    Closure runs over the concrete elements supported by the seeds'
    atoms plus 2k fresh ones; equivariance makes that pool complete for
    the orbit patterns the relation can distinguish.
    """
    budget = ensure_budget(budget)
    k = m.carrier.bound
    pool = sorted({a for x, y in seeds for a in x.tuple + y.tuple})
    gen = fresh_stream(pool)
    pool = pool + [next(gen) for _ in range(2 * k)]
    elems = elements_with_support(m.carrier, pool, budget=budget)
    index = {e: i for i, e in enumerate(elems)}
    parent = list(range(len(elems)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[ri] = rj
            return True
        return False

    for x, y in seeds:
        union(index[x], index[y])

    swaps = [Perm.swap(a, b) for a, b in itertools.combinations(pool, 2)]
    changed = True
    while changed:
        changed = False
        # equivariance: a class's image under a pool transposition is
        # contained in one class
        for pi in swaps:
            classes = {}
            for i, e in enumerate(elems):
                classes.setdefault(find(i), []).append(e)
            for members in classes.values():
                images = [index[act(pi, e)] for e in members]
                for i in images[1:]:
                    if union(images[0], i):
                        changed = True
        # compatibility with multiplication by pool elements
        classes = {}
        for i, e in enumerate(elems):
            classes.setdefault(find(i), []).append(e)
        for members in classes.values():
            rep = members[0]
            for e in members[1:]:
                for c in elems:
                    budget.tick()
                    if union(index[m.multiply(rep, c)], index[m.multiply(e, c)]):
                        changed = True
                    if union(index[m.multiply(c, rep)], index[m.multiply(c, e)]):
                        changed = True

    pairs = []
    classes = {}
    for i, e in enumerate(elems):
        classes.setdefault(find(i), []).append(e)
    for members in classes.values():
        for x in members:
            for y in members:
                budget.tick()
                pairs.append(m.product.pair(x, y))
    # closure under all pool transpositions makes the relation equivariant,
    # so its pair set needs no support
    subset = FsSubset.from_elements(m.product.set, (), pairs)
    return Congruence(m, subset)


class QuotientResult:
    """Quotient monoid with its projection morphism."""

    def __init__(self, monoid, projection, class_of):
        self.monoid = monoid
        self.projection = projection
        self.class_of = class_of


def quotient(m, cong, budget=None):
    """M / ~ for an equivariant congruence, with the projection.

    Each congruence class [x] is an element of the quotient; its least
    support (a subset of supp x, found by fresh-transposition tests)
    gives the dimension, and the permutations of that support fixing
    the class give the positional group.
    """
    budget = ensure_budget(budget)
    if cong.pairs.support:
        raise InvalidInput("quotient requires an equivariant congruence")
    related = cong.related
    carrier = m.carrier

    def class_support(x):
        atoms = sorted(x.tuple)
        b = next(fresh_stream(atoms))
        return tuple(
            a for a in atoms if not related(x, act(Perm.swap(a, b), x))
        )

    # entries: one per quotient orbit, (m_orbit, rep, support tuple)
    entries = []
    descriptors = []
    assignment = []
    for i, desc in enumerate(carrier.orbits):
        budget.tick()
        rep = Element(carrier, i, range(desc.dim))
        sup = class_support(rep)
        d = len(sup)
        match = None
        for q, (_, qrep, qsup) in enumerate(entries):
            if len(qsup) != d:
                continue
            for sigma in itertools.permutations(range(d)):
                budget.tick()
                pi = extend_injection(
                    {qsup[p]: sup[sigma[p]] for p in range(d)},
                    moved_from=qrep.tuple,
                    avoid=set(rep.tuple) | set(qrep.tuple),
                )
                if related(act(pi, qrep), rep):
                    match = (q, sigma)
                    break
            if match:
                break
        pos_of = {a: p for p, a in enumerate(rep.tuple)}
        if match is None:
            stab = []
            for sigma in itertools.permutations(range(d)):
                budget.tick()
                pi = extend_injection(
                    {sup[p]: sup[sigma[p]] for p in range(d)},
                    moved_from=rep.tuple,
                    avoid=set(rep.tuple),
                )
                if related(act(pi, rep), rep):
                    stab.append(sigma)
            if len(stab) > GROUP_CAP:
                raise CapExceeded("quotient orbit group exceeds the cap")
            entries.append((i, rep, sup))
            descriptors.append(OrbitDescriptor(d, _group=tuple(sorted(stab))))
            assignment.append(
                Assignment(len(descriptors) - 1, tuple(pos_of[a] for a in sup))
            )
        else:
            q, sigma = match
            _, _, qsup = entries[q]
            assignment.append(
                Assignment(q, tuple(pos_of[sup[sigma[p]]] for p in range(len(qsup))))
            )

    q_set = OrbitFiniteSet(descriptors)
    proj_map = EquivariantMap(carrier, q_set, assignment)

    def lift(qx, avoid=()):
        i, rep, sup = entries[qx.orbit]
        pi = extend_injection(
            {sup[p]: qx.tuple[p] for p in range(len(sup))},
            moved_from=rep.tuple,
            avoid=set(qx.tuple) | set(rep.tuple) | set(avoid),
        )
        return act(pi, rep)

    def mult_value(qx, qy):
        lx = lift(qx)
        ly = lift(qy, avoid=lx.tuple)
        return proj_map(m.multiply(lx, ly))

    q_monoid = monoid_from_concrete(q_set, proj_map(m.unit), mult_value)
    projection = MonoidMorphism(m, q_monoid, proj_map)
    return QuotientResult(q_monoid, projection, proj_map)


# --- enumeration of small monoids and isomorphism -------------------------


def find_isomorphism(m, n, budget=None):
    """A monoid isomorphism m -> n, or None.

    Backtracking over orbit bijections (pruned by dimension and group
    order) and position alignments; candidates are validated as
    morphisms on product-orbit representatives.
    """
    budget = ensure_budget(budget)
    mo, no = m.carrier.orbits, n.carrier.orbits
    if len(mo) != len(no):
        return None
    if sorted((o.dim, len(o.group)) for o in mo) != sorted(
        (o.dim, len(o.group)) for o in no
    ):
        return None
    indices = range(len(no))
    for perm in itertools.permutations(indices):
        if perm[m.unit.orbit] != n.unit.orbit:
            continue
        if any(
            mo[i].dim != no[perm[i]].dim or len(mo[i].group) != len(no[perm[i]].group)
            for i in indices
        ):
            continue
        posmap_choices = []
        for i in indices:
            d = mo[i].dim
            tgt_group = no[perm[i]].group
            ok = []
            for sigma in itertools.permutations(range(d)):
                budget.tick()
                base = min_coset(sigma, tgt_group)
                if all(
                    min_coset(tuple(g[p] for p in sigma), tgt_group) == base
                    for g in mo[i].group
                ):
                    ok.append(sigma)
            posmap_choices.append(ok)
        for combo in itertools.product(*posmap_choices):
            budget.tick()
            emap = EquivariantMap(
                m.carrier,
                n.carrier,
                [Assignment(perm[i], combo[i]) for i in indices],
            )
            cand = MonoidMorphism(m, n, emap)
            if validate_morphism(cand, budget=budget).ok:
                return cand
    return None


def _monoid_tables(carrier, unit, budget):
    """All multiplication assignments on the carrier with the given unit."""
    prod = product_set(carrier, carrier)
    choices = []
    for p, (i, j) in enumerate(prod.factors):
        ref = Element(prod.set, p, range(prod.set.orbits[p].dim))
        x, y = prod.unpair(ref)
        pos_of = {a: q for q, a in enumerate(ref.tuple)}
        if x == unit:
            forced = [y]
        elif y == unit:
            forced = [x]
        else:
            forced = elements_with_support(carrier, ref.tuple, budget=budget)
        opts = []
        for z in forced:
            posmap = tuple(pos_of[a] for a in z.tuple)
            opts.append(Assignment(z.orbit, posmap))
        choices.append(opts)
    for combo in itertools.product(*choices):
        budget.tick()
        yield prod, EquivariantMap(prod.set, carrier, combo)


def enumerate_small_monoids(max_orbits=2, max_dim=1, budget=None):
    """All valid monoids on small trivial-group carriers, up to iso.

    Carriers are coproducts of at most max_orbits orbits A^{#d} with
    d <= max_dim and trivial positional groups; one dim-0 orbit serves
    as the unit. Positional symmetries are out of scope at this size.
    """
    budget = ensure_budget(budget)
    found = []
    dim_lists = []
    for count in range(1, max_orbits + 1):
        for dims in itertools.combinations_with_replacement(range(max_dim + 1), count):
            if 0 in dims:
                dim_lists.append(dims)
    for dims in dim_lists:
        carrier = OrbitFiniteSet([OrbitDescriptor(d) for d in dims])
        unit = Element(carrier, dims.index(0), ())
        for prod, mult in _monoid_tables(carrier, unit, budget):
            try:
                cand = NominalMonoid(carrier, unit, mult, prod)
            except InvalidInput:
                continue
            if not validate_monoid(cand, budget=budget).ok:
                continue
            if any(find_isomorphism(cand, other, budget=budget) for other in found):
                continue
            found.append(cand)
    return found
