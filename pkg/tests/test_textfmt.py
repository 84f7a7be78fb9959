import pytest

from nommon.bounds import SupportBound, endpoints_bound, first_letter_bound
from nommon.catalog import builder, catalog_names, catalog_quotient
from nommon.errors import InvalidInput
from nommon.fssets import FsSubset
from nommon.language import Word, catalog_language
from nommon.monoid import validate_monoid, validate_morphism
from nommon.prolimit import OmegaTerm
from nommon.sets import Element, OrbitDescriptor, OrbitFiniteSet, atoms_set
from nommon.textfmt import TextFormatError, parse, serialize


# --- round trips ----------------------------------------------------------


def test_set_roundtrip_with_groups():
    x = OrbitFiniteSet([OrbitDescriptor(0), OrbitDescriptor(2, [(1, 0)])])
    text = serialize({"X": x})
    parsed = parse(text)
    assert parsed["X"] == x
    assert serialize(parsed) == text


@pytest.mark.parametrize("name", catalog_names())
def test_monoid_roundtrip(name):
    m = builder(name)
    text = serialize({"M": m})
    back = parse(text)["M"]
    assert back.carrier == m.carrier
    assert back.unit == m.unit
    assert back.mult == m.mult
    assert serialize({"M": back}) == text


def test_morphism_roundtrip():
    e = catalog_quotient("compare")
    doc = {"M": e.dom, "N": e.cod, "e": e}
    text = serialize(doc)
    back = parse(text)
    assert back["e"].map == e.map
    assert serialize(back) == text


def test_subset_roundtrip():
    l0 = catalog_language("l0")
    m = l0.genmap.monoid
    single = FsSubset.singleton(Element(m.carrier, 3, (1, 4)))
    doc = {"M": m, "P": l0.predicate, "Q": single}
    text = serialize(doc)
    back = parse(text)
    assert back["P"] == l0.predicate
    assert back["Q"] == single
    assert serialize(back) == text


def test_word_roundtrip():
    doc = {"w": Word.of_atoms((0, 2, 0)), "empty": Word.of_atoms(())}
    text = serialize(doc)
    back = parse(text)
    assert back["w"] == doc["w"]
    assert back["empty"] == doc["empty"]
    assert serialize(back) == text


def test_term_roundtrip():
    a = Element(atoms_set(), 0, [0])
    b = Element(atoms_set(), 0, [1])
    terms = {
        "t1": OmegaTerm.unit(),
        "t2": OmegaTerm.letter(a),
        "t3": OmegaTerm.concat(OmegaTerm.omega(OmegaTerm.letter(a)), OmegaTerm.letter(a)),
        "t4": OmegaTerm.omega(OmegaTerm.concat(OmegaTerm.letter(a), OmegaTerm.letter(b))),
    }
    text = serialize(terms)
    back = parse(text)
    assert back == terms
    assert serialize(back) == text


def test_bound_roundtrip():
    doc = {
        "s1": SupportBound.constant((0, 3)),
        "s2": first_letter_bound(),
        "s3": endpoints_bound(),
    }
    text = serialize(doc)
    back = parse(text)
    assert back["s1"].variant == "constant"
    assert back["s1"].data == frozenset({0, 3})
    assert back["s2"].variant == "via-morphism"
    assert serialize(back) == text


# --- hand-written documents -----------------------------------------------


HAND_WRITTEN_N = """\
monoid N
  orbit dim 0
  orbit dim 1
  orbit dim 0
  unit 0
  mult 0() . 0() -> 0()
  mult 0() . 1(x0) -> 1(x0)
  mult 0() . 2() -> 2()
  mult 1(x0) . 0() -> 1(x0)
  mult 1(x0) . 1(x0) -> 2()
  mult 1(x0) . 1(x1) -> 2()
  mult 1(x0) . 2() -> 2()
  mult 2() . 0() -> 2()
  mult 2() . 1(x0) -> 2()
  mult 2() . 2() -> 2()
end
"""


def test_hand_written_monoid_validates():
    m = parse(HAND_WRITTEN_N)["N"]
    assert validate_monoid(m).ok
    ref = builder("zero_adjoined")
    assert m.carrier == ref.carrier
    assert m.mult == ref.mult


def test_hand_written_morphism_validates():
    e = catalog_quotient("compare")
    text = serialize({"M": e.dom, "N": e.cod}) + (
        "morphism e : M -> N\n"
        "  map 0() -> 0()\n"
        "  map 1(x0) -> 1(x0)\n"
        "  map 2() -> 2()\n"
        "  map 3(x0) -> 2()\n"
        "end\n"
    )
    back = parse(text)["e"]
    assert validate_morphism(back).ok
    assert back.map == e.map


# --- errors ---------------------------------------------------------------


def test_unknown_declaration_is_positioned():
    with pytest.raises(TextFormatError) as exc:
        parse("word w = a0\nbogus thing\n")
    assert exc.value.line == 2


def test_unterminated_block():
    with pytest.raises(TextFormatError):
        parse("monoid M\n  orbit dim 0\n")


def test_missing_mult_entry():
    bad = HAND_WRITTEN_N.replace("  mult 1(x0) . 1(x1) -> 2()\n", "")
    with pytest.raises(TextFormatError):
        parse(bad)


def test_corrupted_entry_is_positioned():
    bad = HAND_WRITTEN_N.replace("mult 1(x0) . 2() -> 2()", "mult 1(x0 . 2() -> 2()")
    with pytest.raises(TextFormatError) as exc:
        parse(bad)
    assert exc.value.line == 12


def test_result_labels_must_occur_on_the_left():
    bad = HAND_WRITTEN_N.replace(
        "mult 1(x0) . 2() -> 2()", "mult 1(x0) . 2() -> 1(x7)"
    )
    with pytest.raises(TextFormatError):
        parse(bad)


def test_bad_atom_token():
    with pytest.raises(TextFormatError) as exc:
        parse("word w = a0 b1\n")
    assert exc.value.line == 1


def test_morphism_needs_known_monoids():
    with pytest.raises(TextFormatError):
        parse("morphism e : M -> N\nend\n")


def test_unbalanced_term():
    with pytest.raises(TextFormatError):
        parse("term t = (a0\n")
