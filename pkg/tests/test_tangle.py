import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ado.tangle import (BUILTIN_NAMES, DOWN, UP, Layer, TangleProgram, TangleSyntaxError,
                        TangleValidationError, builtin, closed_loops, crossing_count, linking_data, parse,
                        validate)

TREFOIL = "tangle t\ncup-coev 2\ncross+ 1\ncross+ 1\ncross+ 1\ncap-ev* 2\n"


def random_program(rng: random.Random, steps: int = 12, max_width: int = 7) -> TangleProgram:
    """A random valid (1,1)-tangle: random moves, then greedy closing caps."""
    orient = [UP]
    layers = []

    def cap_at(i):
        kind = "cap-ev" if (orient[i], orient[i + 1]) == (DOWN, UP) else "cap-ev*"
        layers.append(Layer(kind, i + 1))
        del orient[i:i + 2]

    for _ in range(steps):
        w = len(orient)
        moves = ["id"]
        if w + 2 <= max_width:
            moves += ["cup", "cup"]
        ups = [i for i in range(w - 1) if orient[i] == orient[i + 1] == UP]
        if ups:
            moves += ["cross"] * 3
        caps = [i for i in range(w - 1) if orient[i] != orient[i + 1]]
        if caps:
            moves.append("cap")
        move = rng.choice(moves)
        if move == "id":
            layers.append(Layer("id", 0))
        elif move == "cup":
            kind = rng.choice(["cup-coev", "cup-coev*"])
            i = rng.randrange(w + 1)
            layers.append(Layer(kind, i + 1))
            orient[i:i] = [UP, DOWN] if kind == "cup-coev" else [DOWN, UP]
        elif move == "cross":
            layers.append(Layer(rng.choice(["cross+", "cross-"]), rng.choice(ups) + 1))
        else:
            cap_at(rng.choice(caps))
    while len(orient) > 1:
        cap_at(next(i for i in range(len(orient) - 1) if orient[i] != orient[i + 1]))
    return TangleProgram("random", layers)


def test_parse_trefoil():
    p = parse(TREFOIL)
    assert crossing_count(p) == 3
    assert [str(l) for l in p.layers][:2] == ["cup-coev 2", "cross+ 1"]


def test_parse_empty_body_is_unknot_strand():
    p = validate(parse("tangle u\n"))
    assert p.layers == [] and p.n_components == 1 and p.n_arcs == 1


@pytest.mark.parametrize("text, line, col", [
    ("tangle t\ncross+ 0\n", 2, 8),
    ("tangle t\nfoo 1\n", 2, 1),
    ("cross+ 1\n", 1, 1),
    ("tangle t\n  cross+ x\n", 2, 10),
    ("tangle t\nid 3\n", 2, 1),
    ("", 1, 1),
])
def test_syntax_errors(text, line, col):
    with pytest.raises(TangleSyntaxError) as err:
        parse(text)
    assert (err.value.line, err.value.column) == (line, col)


def test_comments_and_blank_lines():
    p = parse("# leading comment\n\ntangle t  # name\ncup-coev 2 # cup\n\ncap-ev* 2\n")
    assert len(p.layers) == 2


@pytest.mark.parametrize("text, fragment", [
    ("tangle t\ncap-ev 1\n", "width violation"),
    ("tangle t\ncross+ 1\n", "width violation"),
    ("tangle t\ncup-coev 2\ncap-ev 2\n", "orientation mismatch"),
    ("tangle t\ncup-coev* 2\ncross+ 1\n", "two upward strands"),
    ("tangle t\ncup-coev 2\n", "top boundary has width 3"),
])
def test_validation_diagnostics(text, fragment):
    with pytest.raises(TangleValidationError) as err:
        validate(parse(text))
    assert any(fragment in d for d in err.value.diagnostics)


@pytest.mark.parametrize("name", BUILTIN_NAMES)
def test_builtins_validate(name):
    p = builtin(name)
    assert p.validated and p.n_components == 1
    assert p.n_arcs == 2 * crossing_count(p) + closed_loops(p) + 1


def test_builtin_facts():
    t = builtin("3_1")
    assert crossing_count(t) == 3 and t.n_arcs == 7
    assert linking_data(t).matrix == [[3]]
    assert linking_data(builtin("unknot")).matrix == [[0]]
    assert len(builtin("unknot").layers) == 0
    assert linking_data(builtin("4_1")).matrix == [[0]]
    f = builtin("4_1")
    assert sorted(l.kind for l in f.crossings) == ["cross+", "cross+", "cross-", "cross-"]
    with pytest.raises(KeyError):
        builtin("6_1")


def test_widths_and_orientations_recorded():
    p = builtin("3_1")
    assert p.widths == [1, 3, 3, 3, 3, 1]
    assert p.orientations[0] == (UP,) and p.orientations[-1] == (UP,)


def test_arc_count_formula_on_random_programs():
    rng = random.Random(20240229)
    for _ in range(100):
        p = validate(random_program(rng, steps=rng.randint(0, 16)))
        assert p.n_arcs == 2 * crossing_count(p) + closed_loops(p) + 1


def test_two_component_link():
    # closed 2-braid sigma_1^2 cut open: Hopf link
    p = validate(parse("tangle hopf\ncup-coev 2\ncross+ 1\ncross+ 1\ncap-ev* 2\n"))
    assert p.n_components == 2
    assert linking_data(p).matrix == [[0, 1], [1, 0]]
    assert p.n_arcs == 2 * 2 + 0 + 1


def test_unlinked_loop_counts_as_closed():
    p = validate(parse("tangle u\ncup-coev 2\ncap-ev* 2\n"))
    assert p.n_components == 2 and closed_loops(p) == 1 and p.n_arcs == 2


@given(st.integers(0, 2**32 - 1), st.data())
def test_labels_invariant_under_identity_layers(seed, data):
    rng = random.Random(seed)
    base = random_program(rng)
    a = validate(TangleProgram("a", list(base.layers)))
    layers = list(base.layers)
    for _ in range(data.draw(st.integers(1, 4))):
        layers.insert(data.draw(st.integers(0, len(layers))), Layer("id", 0))
    b = validate(TangleProgram("b", layers))
    assert (a.n_components, a.n_arcs) == (b.n_components, b.n_arcs)
    assert linking_data(a) == linking_data(b)
    # labels at each non-identity slice agree
    strip = [s for s, l in zip(b.strand_components[1:], layers) if l.kind != "id"]
    assert strip == [s for s, l in zip(a.strand_components[1:], base.layers) if l.kind != "id"]


def test_to_text_round_trip():
    p = builtin("5_2")
    q = validate(parse(p.to_text()))
    assert [str(l) for l in q.layers] == [str(l) for l in p.layers]
