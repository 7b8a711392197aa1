import itertools

import pytest

from orthomod.bilogic import (
    AttributeClass,
    BilogicObject,
    Scenario,
    asymmetric_repr,
    attribute_kinds_report,
    condense,
    displace,
    generalize,
    is_unrealizable,
    negation_identity_check,
    symmetric_classes,
)
from orthomod.errors import InvalidInputError, ScenarioError
from orthomod.subspace import (
    complement,
    contains_subspace,
    contains_vector,
    equals,
    full_space,
    join,
    span,
)

from .conftest import all_index_sets, coord, random_scenario


def scenario(n, attrs, objects, **kw):
    """attrs: {name: index set or Subspace}; objects: {name: [attribute names]}."""
    made = []
    for name, spec in attrs.items():
        kind = "regular"
        if isinstance(spec, tuple) and isinstance(spec[0], str):
            kind, spec = spec
        sub = spec if not isinstance(spec, (set, frozenset)) else coord(spec, n)
        made.append(AttributeClass(name, kind, sub))
    kw.setdefault("allow_unequal_dims", True)
    return Scenario(n, "real", made, [BilogicObject(k, v) for k, v in objects.items()], **kw)


@pytest.fixture
def professor():
    return scenario(
        4,
        {"x1": {0, 1}, "x2": {1, 2}, "x3": {1, 3}},
        {"p1": ["x1", "x2", "x3"], "p2": ["x1", "x2", "x3"], "p3": ["x1", "x2", "x3"]},
        allow_unequal_dims=False,
    )


def test_asymmetric_repr(professor):
    p1 = professor.object("p1")
    assert equals(asymmetric_repr(p1, professor), coord({1}, 4))
    single = BilogicObject("s", ["x2"])
    assert equals(asymmetric_repr(single, professor), coord({1, 2}, 4))


def test_unrealizable_object_is_a_value():
    s = scenario(3, {"a": {0}, "b": {1}}, {"ab": ["a", "b"]})
    o = s.object("ab")
    assert asymmetric_repr(o, s).dim == 0
    assert is_unrealizable(o, s)


def test_generalize(professor):
    p1 = professor.object("p1")
    assert equals(generalize(p1, professor), full_space(4, "real"))
    single = BilogicObject("s", ["x3"])
    assert equals(generalize(single, professor), coord({1, 3}, 4))
    assert contains_subspace(asymmetric_repr(p1, professor), generalize(p1, professor))


def test_symmetric_classes(professor):
    assert symmetric_classes(list(professor.objects), professor) == [["p1", "p2", "p3"]]
    assert symmetric_classes([], professor) == []
    s = scenario(4, {"a": {0}, "b": {1}, "c": {2}, "d": {3}},
                 {"o1": ["a", "b"], "o2": ["c", "d"], "o3": ["b", "a"]})
    assert symmetric_classes(list(s.objects), s) == [["o1", "o3"], ["o2"]]


def test_negation_identity_examples(professor):
    assert negation_identity_check(professor.object("p1"), professor).__dict__ == {
        "generalized_equal": True, "complement_contained": True}
    s = scenario(3, {"a": {0, 1}, "b": {0, 1}}, {"o": ["a", "b"]})
    r = negation_identity_check(s.object("o"), s)
    assert (r.generalized_equal, r.complement_contained) == (True, False)
    s = scenario(3, {"h": {0, 1, 2}}, {"o": ["h"]})
    r = negation_identity_check(s.object("o"), s)
    assert (r.generalized_equal, r.complement_contained) == (True, True)


def test_negation_identity_iff_exhaustive():
    n = 4
    sets = all_index_sets(n)
    universe = frozenset(range(n))
    seen = set()
    for combo in itertools.chain.from_iterable(
            itertools.combinations_with_replacement(sets, r) for r in (1, 2)):
        attrs = {f"x{i}": s for i, s in enumerate(combo)}
        sc = scenario(n, attrs, {"o": list(attrs)})
        o = sc.object("o")
        r = negation_identity_check(o, sc)
        spans_all = frozenset().union(*combo) == universe
        assert r.generalized_equal
        assert r.complement_contained == spans_all
        assert spans_all == equals(generalize(o, sc), full_space(n, "real"))
        seen.add(spans_all)
    assert seen == {True, False}


def test_condense_examples():
    s = scenario(4, {"blue_eyed": {0, 2}, "government": {0, 3}, "green_eyed": {1, 2}, "doctor": {1, 3}},
                 {"r": ["blue_eyed", "government"], "q": ["green_eyed", "doctor"]},
                 allow_unequal_dims=False)
    r, q = s.object("r"), s.object("q")
    assert equals(condense(r, r, s), asymmetric_repr(r, s))
    c = condense(q, r, s)
    assert equals(c, coord({0, 1}, 4))
    assert contains_vector(c, (0.6, 0.8, 0, 0))
    assert c.dim <= asymmetric_repr(q, s).dim + asymmetric_repr(r, s).dim


def test_displace_examples():
    s = scenario(3, {"children": {0}, "diploma": {0}, "unemployed": {2}, "blue_eyes": {1}},
                 {"f": ["children", "diploma"], "h": ["unemployed", "blue_eyes"]})
    f, h = s.object("f"), s.object("h")
    assert equals(displace(f, h, [], s), asymmetric_repr(f, s))
    assert equals(displace(f, h, ["unemployed", "blue_eyes"], s), condense(f, h, s))
    res = displace(f, h, ["blue_eyes"], s)
    assert equals(res, coord({0, 1}, 3))
    assert not contains_subspace(s.attribute("unemployed").subspace, res)
    with pytest.raises(InvalidInputError):
        displace(f, h, ["children"], s)


def test_kinds_report():
    s = scenario(3, {"ev": {0, 1}, "a_year_ago": ("temporal", {1, 2}), "imaginary": ("reality", {0, 2})},
                 {"event": ["ev", "a_year_ago"], "dream": ["ev", "imaginary"], "plain": ["ev"]})
    assert attribute_kinds_report(s) == {
        "event": {"temporal": ["a_year_ago"], "reality": []},
        "dream": {"temporal": [], "reality": ["imaginary"]},
    }
    plain = scenario(3, {"ev": {0}}, {"o": ["ev"]})
    assert attribute_kinds_report(plain) == {}


def test_kinds_never_change_operators():
    s = scenario(3, {"ev": {0, 1}, "t": ("temporal", {1, 2})}, {"o": ["ev", "t"]})
    stripped = Scenario(3, "real", [AttributeClass(a.name, "regular", a.subspace) for a in s.attributes],
                        s.objects, allow_unequal_dims=True)
    o = s.object("o")
    assert equals(asymmetric_repr(o, s), asymmetric_repr(o, stripped))
    assert equals(generalize(o, s), generalize(o, stripped))


def test_validation():
    with pytest.raises(InvalidInputError):
        BilogicObject("empty", [])
    with pytest.raises(InvalidInputError):
        BilogicObject("dup", ["a", "a"])
    with pytest.raises(InvalidInputError):
        AttributeClass("a", "spatial", span((1, 0)))
    with pytest.raises(ScenarioError):
        scenario(2, {"a": {0}}, {"o": ["nope"]})
    with pytest.raises(ScenarioError):
        scenario(2, {"a": {0}, "b": {0, 1}}, {}, allow_unequal_dims=False)
    with pytest.raises(ScenarioError):
        Scenario(2, "real", [AttributeClass("a", "regular", span((1, 0))),
                             AttributeClass("a", "regular", span((0, 1)))])
    with pytest.raises(ScenarioError):
        Scenario(3, "real", [AttributeClass("a", "regular", span((1, 0)))])


def test_unequal_dims_warns(caplog):
    scenario(2, {"a": {0}, "b": {0, 1}}, {})
    assert "unequal dimensions" in caplog.text


@pytest.mark.parametrize("seed", range(40))
def test_condensation_bounds(seed):
    s = random_scenario(seed)
    a, b = s.objects
    c = condense(a, b, s)
    assert contains_subspace(asymmetric_repr(a, s), c)
    assert contains_subspace(asymmetric_repr(b, s), c)
    assert equals(c, condense(b, a, s))
    merged = BilogicObject("ab", sorted(set(a.attributes) | set(b.attributes)))
    assert contains_subspace(c, generalize(merged, s))


@pytest.mark.parametrize("seed", range(40))
def test_displacement_order(seed):
    s = random_scenario(seed)
    target, source = s.objects
    base = asymmetric_repr(target, s)
    subsets = [set(c) for r in range(len(source.attributes) + 1)
               for c in itertools.combinations(source.attributes, r)]
    results = {frozenset(t): displace(target, source, t, s) for t in subsets}
    for t, res in results.items():
        assert contains_subspace(base, res)  # never loses the target
        for u, res_u in results.items():
            if t and t <= u:
                # more transferred attributes meet in a smaller subspace
                assert contains_subspace(res_u, res)


def test_whole_equals_part(professor):
    whole = full_space(4, "real")
    for o in professor.objects:
        assert equals(generalize(o, professor), whole)
    assert equals(join(asymmetric_repr(professor.object("p1"), professor),
                       complement(asymmetric_repr(professor.object("p1"), professor))), whole)
