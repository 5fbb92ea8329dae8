import itertools

import pytest
from hypothesis import given, strategies as st

from hvakit import engine, freegroup as fg
from hvakit.engine import Outcome, RunOptions
from hvakit.machine import ONB, Guard, MachineFormatError, validate
from hvakit.numerics import QMatrix, QVector, mat_mul, vec_mul_mat

letters = st.text(alphabet="aAbB", max_size=14)


def naive_reduce(s):
    # repeatedly cancel adjacent inverse pairs
    pairs = ["aA", "Aa", "bB", "Bb"]
    changed = True
    while changed:
        changed = False
        for p in pairs:
            if p in s:
                s = s.replace(p, "", 1)
                changed = True
    return s


@pytest.mark.parametrize("raw,reduced", [("aA", ""), ("abBA", ""), ("aabB", "aa"), ("AbBa", ""), ("abAB", "abAB")])
def test_reduce(raw, reduced):
    assert fg.reduce(raw).letters == reduced


@given(letters)
def test_reduce_matches_naive_and_is_idempotent(s):
    w = fg.reduce(s)
    assert w.letters == naive_reduce(s)
    assert fg.reduce(w.letters) == w


@given(letters, letters, letters)
def test_group_axioms(x, y, z):
    a, b, c = fg.GroupWord(x), fg.GroupWord(y), fg.GroupWord(z)
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity()
    assert a * fg.IDENTITY == a


def test_bad_letter():
    with pytest.raises(ValueError):
        fg.GroupWord("ac")


def test_kn_generators():
    ma, mb = fg.kn_generators(2)
    assert ma == QMatrix([[1, 2], [0, 1]]) and mb == QMatrix([[1, 0], [2, 1]])
    with pytest.raises(ValueError):
        fg.kn_generators(0)


def test_phi_generators():
    ma, mb = fg.kn_generators(2)
    assert fg.phi(fg.GroupWord("a")) == mat_mul(mat_mul(ma, mb), mat_mul(ma, ma))
    assert fg.phi(fg.GroupWord("b")) == mat_mul(mat_mul(mat_mul(ma, ma), mb), ma)
    assert fg.phi(fg.IDENTITY).is_identity()


@given(letters, letters)
def test_phi_homomorphism(x, y):
    a, b = fg.GroupWord(x), fg.GroupWord(y)
    assert fg.phi(a * b) == mat_mul(fg.phi(a), fg.phi(b))
    assert mat_mul(fg.phi(a), fg.phi(a.inverse())).is_identity()


@given(letters)
def test_phi_entries_are_integers(x):
    assert fg.phi(fg.GroupWord(x)).is_integral()


def test_stabilizer_small():
    for n in range(1, 5):
        for t in itertools.product("aAbB", repeat=n):
            w = fg.GroupWord("".join(t))
            if w.is_identity():
                continue
            assert vec_mul_mat(QVector([1, 0]), fg.phi(w)) != QVector([1, 0])


@given(letters, letters)
def test_psi_block_structure(x, y):
    p = fg.GroupPair(fg.GroupWord(x), fg.GroupWord(y))
    m = fg.psi(p)
    assert m.dim == 4
    assert all(m[i, j] == 0 for i in range(2) for j in range(2, 4))
    assert (vec_mul_mat(QVector([1, 0, 1, 0]), m) == QVector([1, 0, 1, 0])) == p.is_identity()


def test_pair_operations():
    p = fg.GroupPair(fg.GroupWord("a"), fg.GroupWord("b"))
    assert (p * p.inverse()).is_identity()
    assert str(p) == "(a, b)"


def test_efa_element_type_checked():
    with pytest.raises(ValueError):
        fg.EfaMachine("x", fg.F2, "a", ("q",), "q", {"q"},
                      (fg.EfaTransition("q", "a", "q", fg.GroupPair()),))


def free_generator_machine():
    # reads a's pushing a, b's popping it: accepts a^n b^n only via the register
    a, A = fg.GroupWord("a"), fg.GroupWord("A")
    return fg.EfaMachine("anbn", fg.F2, "ab", ("p", "r"), "p", {"p", "r"}, (
        fg.EfaTransition("p", "a", "p", a),
        fg.EfaTransition("p", "b", "r", A),
        fg.EfaTransition("r", "b", "r", A),
    ))


@pytest.mark.parametrize("word,accepted", [("", True), ("ab", True), ("aabb", True), ("aab", False), ("ba", False)])
def test_run_efa(word, accepted):
    e = free_generator_machine()
    assert fg.run_efa(e, word).accepted is accepted
    assert engine.run(fg.translate_efa(e), word).accepted is accepted


def test_translation_shape():
    h = fg.translate_efa_f2(free_generator_machine())
    assert h.mode == ONB and h.dimension == 2 and h.initial_vector == QVector([1, 0])
    assert all(t.guard is Guard.ANY for t in h.transitions)
    assert validate(h) == []
    with pytest.raises(ValueError):
        fg.translate_efa_f2xf2(free_generator_machine())


def epsilon_efa():
    # guesses how many times to multiply by b before reading, then must undo it
    b, B = fg.GroupWord("b"), fg.GroupWord("B")
    return fg.EfaMachine("eps", fg.F2, "x", ("p", "q"), "p", {"q"}, (
        fg.EfaTransition("p", None, "p", b),
        fg.EfaTransition("p", "x", "q", fg.IDENTITY),
        fg.EfaTransition("q", "x", "q", B),
    ))


@pytest.mark.parametrize("word", ["x", "xx", "xxxx"])
def test_epsilon_efa_and_translation_agree(word):
    e = epsilon_efa()
    assert fg.run_efa(e, word).accepted
    assert engine.run(fg.translate_efa(e), word).accepted


def test_epsilon_efa_can_be_inconclusive():
    e = fg.EfaMachine("spin", fg.F2, "x", ("p",), "p", set(), (fg.EfaTransition("p", None, "p", fg.GroupWord("a")),))
    assert fg.run_efa(e, "", RunOptions(budget=30)).outcome is Outcome.INCONCLUSIVE
    assert engine.run(fg.translate_efa(e), "", RunOptions(budget=30)).outcome is Outcome.INCONCLUSIVE


@pytest.mark.parametrize("build", [free_generator_machine, epsilon_efa])
def test_efa_format_round_trip(build):
    e = build()
    assert fg.parse_efa(fg.serialize_efa(e)) == e


def test_efa_format_pairs_round_trip():
    from hvakit import zoo

    e = zoo.build("wp_f2xf2").machine
    assert fg.parse_efa(fg.serialize_efa(e)) == e


@pytest.mark.parametrize("doc,fragment", [
    ('{"name": "x", "group": "F2"}', "missing key"),
    ('{"name": "x", "group": "F2", "alphabet": ["a"], "states": ["q"], "start": "z", "accept": [], '
     '"transitions": []}', "declared"),
    ('{"name": "x", "group": "F2", "alphabet": ["a"], "states": ["q"], "start": "q", "accept": [], '
     '"transitions": [{"from": "q", "symbol": "a", "to": "q", "element": "ac"}]}', "free group letter"),
    ('{"name": "x", "group": "F2xF2", "alphabet": ["a"], "states": ["q"], "start": "q", "accept": [], '
     '"transitions": [{"from": "q", "symbol": "a", "to": "q", "element": "a"}]}', "left/right"),
])
def test_efa_format_errors(doc, fragment):
    with pytest.raises(MachineFormatError) as info:
        fg.parse_efa(doc)
    assert fragment in str(info.value)
