"""Line-oriented definition format for sets, monoids, and friends.

The format is diffable and hand-writable: atoms are bare identifiers
``a0, a1, ...``, orbits are declared by dimension plus positional
permutations, and multiplication is keyed by equality patterns, one
entry per canonical product orbit::

    monoid N
      orbit dim 0
      orbit dim 1
      orbit dim 0
      unit 0
      mult 1(x0) . 1(x1) -> 2()
      ...
    end

Parsing yields validated objects or a positioned error; serialization
of canonical objects round-trips exactly.
"""

import re

from nommon.errors import InvalidInput
from nommon.monoid import MonoidMorphism, NominalMonoid, monoid_from_concrete
from nommon.sets import (
    Assignment,
    Element,
    EquivariantMap,
    OrbitDescriptor,
    OrbitFiniteSet,
    product_set,
)


class TextFormatError(InvalidInput):
    """A syntax or consistency error with its 1-based line number."""

    def __init__(self, message, line):
        super().__init__(f"line {line}: {message}")
        self.line = line


_ATOM = re.compile(r"^a(\d+)$")
_LABEL = re.compile(r"^x(\d+)$")


def _atom(token, line):
    m = _ATOM.match(token)
    if not m:
        raise TextFormatError(f"expected an atom like a0, got {token!r}", line)
    return int(m.group(1))


def _label(token, line):
    m = _LABEL.match(token)
    if not m:
        raise TextFormatError(f"expected a label like x0, got {token!r}", line)
    return int(m.group(1))


def _parse_call(text, line):
    """'3(x0 x1)' -> (3, ('x0', 'x1'))."""
    m = re.match(r"^(\d+)\(([^()]*)\)$", text)
    if not m:
        raise TextFormatError(f"expected orbit(args), got {text!r}", line)
    args = tuple(m.group(2).split())
    return int(m.group(1)), args


def _fmt_call(orbit, names):
    return f"{orbit}({' '.join(names)})"


# --- carriers -------------------------------------------------------------


def _parse_orbit_line(tokens, line):
    if tokens[:2] != ["orbit", "dim"]:
        raise TextFormatError("expected 'orbit dim <n> [group (..) ..]'", line)
    try:
        dim = int(tokens[2])
    except (IndexError, ValueError):
        raise TextFormatError("orbit dimension must be an integer", line) from None
    rest = " ".join(tokens[3:])
    gens = []
    if rest:
        if not rest.startswith("group"):
            raise TextFormatError("expected 'group' after the dimension", line)
        for part in re.findall(r"\(([^()]*)\)", rest):
            gens.append(tuple(int(t) for t in part.split()))
    try:
        return OrbitDescriptor(dim, gens)
    except InvalidInput as exc:
        raise TextFormatError(str(exc), line) from None


def _serialize_orbit(desc):
    line = f"  orbit dim {desc.dim}"
    nontrivial = [g for g in desc.group if g != tuple(range(desc.dim))]
    if nontrivial:
        perms = " ".join("(" + " ".join(map(str, g)) + ")" for g in nontrivial)
        line += f" group {perms}"
    return line


# --- multiplication entries -----------------------------------------------


def _joint_pattern(left_names, right_names):
    """First-occurrence equality pattern of a name pair; also the
    per-name index map."""
    index = {}
    for n in left_names + right_names:
        if n not in index:
            index[n] = len(index)
    return (
        tuple(index[n] for n in left_names),
        tuple(index[n] for n in right_names),
        index,
    )


def _mult_entries(m):
    """One '(pattern) . (pattern) -> value' line per product orbit."""
    lines = []
    for p in range(len(m.product.set.orbits)):
        ref = Element(m.product.set, p, range(m.product.set.orbits[p].dim))
        x, y = m.product.unpair(ref)
        z = m.mult(ref)
        names = {a: f"x{a}" for a in ref.tuple}
        lines.append(
            "  mult {} . {} -> {}".format(
                _fmt_call(x.orbit, [names[a] for a in x.tuple]),
                _fmt_call(y.orbit, [names[a] for a in y.tuple]),
                _fmt_call(z.orbit, [names[a] for a in z.tuple]),
            )
        )
    return lines


def _parse_mult_line(tokens, line):
    # mult i(..) . j(..) -> r(..)
    text = " ".join(tokens[1:])
    call = r"(\d+\([^()]*\))"
    m = re.match(rf"^{call}\s*\.\s*{call}\s*->\s*{call}$", text)
    if not m:
        raise TextFormatError("expected 'mult i(..) . j(..) -> r(..)'", line)
    i, left = _parse_call(m.group(1), line)
    j, right = _parse_call(m.group(2), line)
    r, res = _parse_call(m.group(3), line)
    for n in left + right + res:
        _label(n, line)
    lp, rp, index = _joint_pattern(left, right)
    missing = [n for n in res if n not in index]
    if missing:
        raise TextFormatError(
            f"result labels {missing} do not occur on the left", line
        )
    return (i, j, lp, rp), (r, tuple(index[n] for n in res)), line


def _build_monoid(orbits, unit_orbit, entries, start_line):
    carrier = OrbitFiniteSet(orbits)
    if unit_orbit is None:
        raise TextFormatError("monoid block needs a 'unit <orbit>' line", start_line)
    try:
        unit = Element(carrier, unit_orbit, ())
    except (IndexError, InvalidInput):
        raise TextFormatError(
            f"unit orbit {unit_orbit} is not a dim-0 orbit", start_line
        ) from None
    table = {}
    for key, value, line in entries:
        if key in table:
            raise TextFormatError("duplicate multiplication pattern", line)
        table[key] = (value, line)

    def mult_value(x, y):
        joint = {}
        for a in x.tuple + y.tuple:
            if a not in joint:
                joint[a] = len(joint)
        key = (
            x.orbit,
            y.orbit,
            tuple(joint[a] for a in x.tuple),
            tuple(joint[a] for a in y.tuple),
        )
        if key not in table:
            raise TextFormatError(
                f"missing multiplication entry for pattern {key}", start_line
            )
        (r, res_idx), _line = table[key]
        back = {l: a for a, l in joint.items()}
        try:
            return Element(carrier, r, [back[l] for l in res_idx])
        except (IndexError, InvalidInput) as exc:
            raise TextFormatError(str(exc), _line) from None

    try:
        return monoid_from_concrete(carrier, unit, mult_value)
    except TextFormatError:
        raise
    except InvalidInput as exc:
        raise TextFormatError(str(exc), start_line) from None


# --- morphisms ------------------------------------------------------------


def _named(names_of, obj, role):
    name = names_of.get(id(obj))
    if name is None:
        raise InvalidInput(f"{role} must be serialized in the same document")
    return name


def _serialize_morphism(name, h, names_of):
    dom = _named(names_of, h.dom, "morphism domain")
    cod = _named(names_of, h.cod, "morphism codomain")
    lines = [f"morphism {name} : {dom} -> {cod}"]
    for i, a in enumerate(h.map.assignment):
        dim = h.dom.carrier.orbits[i].dim
        src = _fmt_call(i, [f"x{p}" for p in range(dim)])
        tgt = _fmt_call(a.orbit, [f"x{p}" for p in a.posmap])
        lines.append(f"  map {src} -> {tgt}")
    lines.append("end")
    return lines


def _build_morphism(dom, cod, maps, start_line):
    assignment = [None] * len(dom.carrier.orbits)
    for (i, src_names), (j, tgt_names), line in maps:
        if not (0 <= i < len(assignment)):
            raise TextFormatError(f"no source orbit {i}", line)
        if assignment[i] is not None:
            raise TextFormatError(f"duplicate map entry for orbit {i}", line)
        expected = [f"x{p}" for p in range(dom.carrier.orbits[i].dim)]
        if list(src_names) != expected:
            raise TextFormatError(
                f"source labels must be {expected} in order", line
            )
        posmap = tuple(_label(n, line) for n in tgt_names)
        try:
            assignment[i] = Assignment(j, posmap)
        except InvalidInput as exc:
            raise TextFormatError(str(exc), line) from None
    if any(a is None for a in assignment):
        raise TextFormatError("map entries must cover every orbit", start_line)
    try:
        emap = EquivariantMap(dom.carrier, cod.carrier, assignment)
        return MonoidMorphism(dom, cod, emap)
    except InvalidInput as exc:
        raise TextFormatError(str(exc), start_line) from None


# --- subsets, words, terms, bounds ----------------------------------------


def _serialize_subset(name, u, names_of):
    lines = [f"subset {name} of {_named(names_of, u.carrier, 'subset carrier')}"]
    if u.support:
        lines.append("  support " + " ".join(f"a{a}" for a in sorted(u.support)))
    for r in sorted(u.reps(), key=lambda e: (e.orbit, e.tuple)):
        lines.append("  element " + _fmt_call(r.orbit, [f"a{a}" for a in r.tuple]))
    lines.append("end")
    return lines


def _serialize_term(t):
    if t.kind == "unit":
        return "1"
    if t.kind == "letter":
        return f"a{t.args[0].tuple[0]}"
    if t.kind == "omega":
        return f"({_serialize_term(t.args[0])})^w"
    return " ".join(
        f"({_serialize_term(s)})" if s.kind == "concat" else _serialize_term(s)
        for s in t.args
    )


def _tokenize_term(text, line):
    tokens = re.findall(r"\(|\)\^w|\)|[^\s()]+", text)
    if "".join(tokens).replace(" ", "") != text.replace(" ", ""):
        raise TextFormatError(f"cannot tokenize term {text!r}", line)
    return tokens


def _parse_term(text, line):
    from nommon.prolimit import OmegaTerm
    from nommon.sets import atoms_set

    sigma = atoms_set()
    tokens = _tokenize_term(text, line)
    pos = 0

    def seq(depth):
        nonlocal pos
        items = []
        while pos < len(tokens) and tokens[pos] not in (")", ")^w"):
            tok = tokens[pos]
            if tok == "(":
                pos += 1
                inner = seq(depth + 1)
                if pos >= len(tokens):
                    raise TextFormatError("unbalanced '(' in term", line)
                closer = tokens[pos]
                pos += 1
                items.append(OmegaTerm.omega(inner) if closer == ")^w" else inner)
            elif tok == "1":
                pos += 1
                items.append(OmegaTerm.unit())
            else:
                pos += 1
                items.append(
                    OmegaTerm.letter(Element(sigma, 0, [_atom(tok, line)]))
                )
        if not items:
            return OmegaTerm.unit()
        if len(items) == 1:
            return items[0]
        return OmegaTerm.concat(*items)

    out = seq(0)
    if pos != len(tokens):
        raise TextFormatError("unbalanced ')' in term", line)
    return out


def _serialize_bound(name, s):
    if s.variant == "constant":
        atoms = " ".join(f"a{a}" for a in sorted(s.data))
        return f"bound {name} = constant {atoms}".rstrip()
    label = getattr(s, "label", None)
    if label is None:
        raise InvalidInput("only constant and named via-morphism bounds serialize")
    return f"bound {name} = {label}"


def _parse_bound(tokens, line):
    from nommon import bounds

    if not tokens:
        raise TextFormatError("empty bound definition", line)
    if tokens[0] == "constant":
        return bounds.SupportBound.constant(_atom(t, line) for t in tokens[1:])
    if tokens == ["first-letter"]:
        return bounds.first_letter_bound()
    if tokens == ["endpoints"]:
        return bounds.endpoints_bound()
    raise TextFormatError(f"unknown bound {' '.join(tokens)!r}", line)


# --- documents ------------------------------------------------------------


def parse(document):
    """Parse a definition document into an ordered name -> object dict."""
    out = {}
    lines = document.splitlines()
    i = 0

    def carrier_of(name, line):
        obj = out.get(name)
        if isinstance(obj, OrbitFiniteSet):
            return obj
        if isinstance(obj, NominalMonoid):
            return obj.carrier
        raise TextFormatError(f"unknown set or monoid {name!r}", line)

    def monoid_of(name, line):
        obj = out.get(name)
        if not isinstance(obj, NominalMonoid):
            raise TextFormatError(f"unknown monoid {name!r}", line)
        return obj

    while i < len(lines):
        lineno = i + 1
        tokens = lines[i].split()
        i += 1
        if not tokens or tokens[0].startswith("#"):
            continue
        head, rest = tokens[0], tokens[1:]
        if head in ("set", "monoid"):
            if len(rest) != 1:
                raise TextFormatError(f"expected '{head} NAME'", lineno)
            name = rest[0]
            orbits, entries, unit_orbit = [], [], None
            while True:
                if i >= len(lines):
                    raise TextFormatError(f"unterminated {head} block", lineno)
                sub = lines[i].split()
                subno = i + 1
                i += 1
                if not sub:
                    continue
                if sub == ["end"]:
                    break
                if sub[0] == "orbit":
                    orbits.append(_parse_orbit_line(sub, subno))
                elif sub[0] == "unit" and head == "monoid":
                    unit_orbit = int(sub[1])
                elif sub[0] == "mult" and head == "monoid":
                    entries.append(_parse_mult_line(sub, subno))
                else:
                    raise TextFormatError(f"unexpected line in {head} block", subno)
            if head == "set":
                out[name] = OrbitFiniteSet(orbits)
            else:
                out[name] = _build_monoid(orbits, unit_orbit, entries, lineno)
        elif head == "morphism":
            m = re.match(r"^(\S+)\s*:\s*(\S+)\s*->\s*(\S+)$", " ".join(rest))
            if not m:
                raise TextFormatError("expected 'morphism NAME : DOM -> COD'", lineno)
            name = m.group(1)
            dom = monoid_of(m.group(2), lineno)
            cod = monoid_of(m.group(3), lineno)
            maps = []
            while True:
                if i >= len(lines):
                    raise TextFormatError("unterminated morphism block", lineno)
                sub = lines[i].split()
                subno = i + 1
                i += 1
                if not sub:
                    continue
                if sub == ["end"]:
                    break
                if sub[0] != "map":
                    raise TextFormatError("expected a 'map' line", subno)
                call = r"(\d+\([^()]*\))"
                mm = re.match(rf"^{call}\s*->\s*{call}$", " ".join(sub[1:]))
                if not mm:
                    raise TextFormatError("expected 'map i(..) -> j(..)'", subno)
                maps.append(
                    (
                        _parse_call(mm.group(1), subno),
                        _parse_call(mm.group(2), subno),
                        subno,
                    )
                )
            out[name] = _build_morphism(dom, cod, maps, lineno)
        elif head == "subset":
            if len(rest) != 3 or rest[1] != "of":
                raise TextFormatError("expected 'subset NAME of CARRIER'", lineno)
            name = rest[0]
            carrier = carrier_of(rest[2], lineno)
            support, elements = [], []
            while True:
                if i >= len(lines):
                    raise TextFormatError("unterminated subset block", lineno)
                sub = lines[i].split()
                subno = i + 1
                i += 1
                if not sub:
                    continue
                if sub == ["end"]:
                    break
                if sub[0] == "support":
                    support = [_atom(t, subno) for t in sub[1:]]
                elif sub[0] == "element":
                    orbit, names = _parse_call(" ".join(sub[1:]), subno)
                    atoms = [_atom(n, subno) for n in names]
                    try:
                        elements.append(Element(carrier, orbit, atoms))
                    except (IndexError, InvalidInput) as exc:
                        raise TextFormatError(str(exc), subno) from None
                else:
                    raise TextFormatError("unexpected line in subset block", subno)
            from nommon.fssets import FsSubset

            out[name] = FsSubset.from_elements(carrier, support, elements)
        elif head == "word":
            if len(rest) < 2 or rest[1] != "=":
                raise TextFormatError("expected 'word NAME = a0 a1 ...'", lineno)
            from nommon.language import Word

            out[rest[0]] = Word.of_atoms(_atom(t, lineno) for t in rest[2:])
        elif head == "term":
            if len(rest) < 2 or rest[1] != "=":
                raise TextFormatError("expected 'term NAME = ...'", lineno)
            out[rest[0]] = _parse_term(" ".join(rest[2:]), lineno)
        elif head == "bound":
            if len(rest) < 2 or rest[1] != "=":
                raise TextFormatError("expected 'bound NAME = ...'", lineno)
            out[rest[0]] = _parse_bound(rest[2:], lineno)
        else:
            raise TextFormatError(f"unknown declaration {head!r}", lineno)
    return out


def serialize(objects):
    """Render a name -> object dict back to canonical document text."""
    from nommon.bounds import SupportBound
    from nommon.fssets import FsSubset
    from nommon.language import Word
    from nommon.prolimit import OmegaTerm

    names_of = {}
    for name, obj in objects.items():
        if isinstance(obj, OrbitFiniteSet):
            names_of[id(obj)] = name
        elif isinstance(obj, NominalMonoid):
            names_of[id(obj)] = name
            names_of[id(obj.carrier)] = name
    lines = []
    for name, obj in objects.items():
        if isinstance(obj, OrbitFiniteSet):
            lines.append(f"set {name}")
            lines.extend(_serialize_orbit(d) for d in obj.orbits)
            lines.append("end")
        elif isinstance(obj, NominalMonoid):
            lines.append(f"monoid {name}")
            lines.extend(_serialize_orbit(d) for d in obj.carrier.orbits)
            lines.append(f"  unit {obj.unit.orbit}")
            lines.extend(_mult_entries(obj))
            lines.append("end")
        elif isinstance(obj, MonoidMorphism):
            lines.extend(_serialize_morphism(name, obj, names_of))
        elif isinstance(obj, FsSubset):
            lines.extend(_serialize_subset(name, obj, names_of))
        elif isinstance(obj, Word):
            atoms = " ".join(f"a{x.tuple[0]}" for x in obj.letters)
            lines.append(f"word {name} = {atoms}".rstrip())
        elif isinstance(obj, OmegaTerm):
            lines.append(f"term {name} = {_serialize_term(obj)}")
        elif isinstance(obj, SupportBound):
            lines.append(_serialize_bound(name, obj))
        else:
            raise InvalidInput(f"cannot serialize object of type {type(obj).__name__}")
    return "\n".join(lines) + "\n"
