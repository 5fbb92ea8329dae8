import pytest

from hvakit import constructions as cs, engine, zoo
from hvakit.constructions import ConstructionError, CounterMachine, Dfa
from hvakit.machine import MachineFormatError, validate
from hvakit.numerics import QMatrix, QVector, vec_mul_mat

from support import a_star_b_star_dfa, anbn_nonblind, concat_oracle, sigma_star_dfa, star_oracle, word_machine


def assert_equivalent(m, oracle, max_len, alphabet=None):
    report = zoo.check(m, oracle, max_len, alphabet=alphabet)
    assert report.ok, report.summary()


# ------------------------------------------------------------ counter machines

@pytest.mark.parametrize("word,accepted", [("abc", True), ("ab", False), ("", True), ("aabbcc", True), ("abcc", False)])
def test_run_counter_abc(word, accepted):
    assert cs.run_counter(zoo.abc_counters(), word) is accepted


def test_run_counter_rejects_foreign_symbol():
    with pytest.raises(ValueError):
        cs.run_counter(zoo.abc_counters(), "abd")


def test_counter_update_matrix():
    m = cs.counter_update_matrix((1,))
    assert m == QMatrix([[1, 0], [1, 1]])
    assert vec_mul_mat(QVector([1, 1]), m) == QVector([2, 1])
    assert cs.counter_update_matrix((0, 0)).is_identity()
    assert cs.counter_update_matrix((-1, 1)) == QMatrix([[1, 0, 0], [0, 1, 0], [-1, 1, 1]])


def test_blind_simulation_shape():
    h = cs.simulate_blind_counters(zoo.abc_counters())
    assert h.dimension == 3 and h.mode.blind and h.mode.deterministic
    assert h.initial_vector == QVector([1, 1, 1])


def test_blind_simulation_rejects_nonblind():
    with pytest.raises(ConstructionError):
        cs.simulate_blind_counters(zoo.anbn_one_counter())


@pytest.mark.parametrize("word,accepted", [("aabb", True), ("aab", False), ("", True), ("abab", False)])
def test_nonblind_simulation(word, accepted):
    h = cs.simulate_counter_nonblind(zoo.anbn_one_counter())
    assert engine.run(h, word).accepted is accepted


def test_nonblind_simulation_exhaustive():
    h = cs.simulate_counter_nonblind(zoo.anbn_one_counter())
    assert_equivalent(h, lambda w: cs.run_counter(zoo.anbn_one_counter(), w), 12)


def test_nonblind_zero_counter_is_home():
    h = cs.simulate_counter_nonblind(zoo.anbn_one_counter())
    up = next(t for t in h.transitions if t.symbol == "a").matrix
    down = next(t for t in h.transitions if t.symbol == "b").matrix
    assert vec_mul_mat(vec_mul_mat(h.initial_vector, up), down) == h.initial_vector


def test_nonblind_simulation_preconditions():
    with pytest.raises(ConstructionError):
        cs.simulate_counter_nonblind(zoo.abc_counters())
    two = CounterMachine("two", 2, False, "a", ("p",), "p", {"p"},
                         {("p", "a", "=="): ("p", (1, 0))}, accept_empty=True)
    with pytest.raises(ConstructionError, match="more than one counter"):
        cs.simulate_counter_nonblind(two)
    lax = CounterMachine("lax", 1, False, "a", ("p",), "p", {"p"}, {("p", "a", "="): ("p", (1,))})
    with pytest.raises(ConstructionError, match="empty counter"):
        cs.simulate_counter_nonblind(lax)


@pytest.mark.parametrize("bad", [
    dict(transitions={("p", "a", "="): ("p", (1,))}),           # blind with a pattern
    dict(transitions={("p", "a", None): ("p", (2,))}),          # increment out of range
    dict(transitions={("p", "z", None): ("p", (1,))}),          # unknown symbol
])
def test_counter_machine_checks(bad):
    with pytest.raises(ValueError):
        CounterMachine("x", 1, True, "a", ("p",), "p", {"p"}, **bad)


@pytest.mark.parametrize("build", [zoo.abc_counters, zoo.anbn_one_counter, zoo.anb2n_counter])
def test_counter_format_round_trip(build):
    m = build()
    assert cs.parse_counter(cs.serialize_counter(m)) == m


def test_counter_format_error():
    with pytest.raises(MachineFormatError):
        cs.parse_counter('{"name": "x"}')


# ------------------------------------------------------------------ DFAs

def test_dfa_must_be_total():
    with pytest.raises(ValueError):
        Dfa(("q",), ("a", "b"), "q", {"q"}, {("q", "a"): "q"})


def test_dfa_round_trip_and_accepts():
    d = a_star_b_star_dfa()
    assert cs.parse_dfa(cs.serialize_dfa(d)) == d
    assert d.accepts("aabb") and not d.accepts("aba") and not d.accepts("c")


# -------------------------------------------------------------- closures

def test_intersect_regular_example():
    m = cs.intersect_regular(zoo.build("thm51").machine, a_star_b_star_dfa())
    assert engine.run(m, "ab").accepted
    assert not engine.run(m, "aba").accepted
    assert zoo.in_thm51("aba")
    assert len(m.states) == 4 * 3 and validate(m) == []


def test_intersect_regular_preserves_mode():
    for name in ("thm51", "anbn", "upow"):
        v = zoo.build(name).machine
        assert cs.intersect_regular(v, sigma_star_dfa(v.alphabet)).mode == v.mode


@pytest.mark.parametrize("name", ["thm51", "anbn", "mpal_l"])
def test_intersect_with_everything_is_identity(name):
    v = zoo.build(name).machine
    m = cs.intersect_regular(v, sigma_star_dfa(v.alphabet))
    assert_equivalent(m, lambda w: engine.run(v, w).accepted, 8 if name == "mpal_l" else 10)


def test_intersect_regular_merges_alphabets():
    d = Dfa(("q",), ("a", "b", "c"), "q", {"q"}, {("q", s): "q" for s in "abc"})
    m = cs.intersect_regular(zoo.build("anbn").machine, d)
    assert m.alphabet == ("a", "b", "c")
    assert not engine.run(m, "abc").accepted


def test_intersect_blind():
    x, y = zoo.build("anbn").machine, zoo.build("anb2n").machine
    m = cs.intersect_blind(x, y)
    assert m.dimension == 4 and m.initial_vector == x.initial_vector.concat(y.initial_vector)
    assert_equivalent(m, lambda w: w == "", 12)


def test_intersect_blind_idempotent():
    x = zoo.build("anbn").machine
    assert_equivalent(cs.intersect_blind(x, x), zoo.in_anbn, 10)


def test_intersect_blind_needs_blind():
    with pytest.raises(ConstructionError):
        cs.intersect_blind(zoo.build("thm51").machine, zoo.build("anbn").machine)


def test_constructions_need_realtime():
    oneway = zoo.build("wp_f2").machine
    from hvakit.freegroup import translate_efa

    with pytest.raises(ConstructionError):
        cs.intersect_blind(translate_efa(oneway), zoo.build("anbn").machine)


def test_union_blind():
    m = cs.union_nondet(zoo.build("anbn").machine, zoo.build("anb2n").machine)
    assert m.dimension == 4 and not m.mode.deterministic and validate(m) == []
    assert_equivalent(m, zoo.in_union, 12)


def test_union_nonblind():
    x, y = zoo.build("thm51").machine, anbn_nonblind()
    y = cs.simulate_counter_nonblind(y)
    m = cs.union_nondet(x, y)
    assert_equivalent(m, lambda w: zoo.in_thm51(w) or zoo.in_anbn(w), 10)


def test_union_empty_word():
    x = word_machine("a", "ab", blind=True)
    y = word_machine("b", "ab", blind=True)
    assert not engine.run(cs.union_nondet(x, y), "").accepted
    assert engine.run(cs.union_nondet(x, zoo.build("anbn").machine), "").accepted


def test_union_mixed_blindness():
    with pytest.raises(ConstructionError):
        cs.union_nondet(zoo.build("thm51").machine, zoo.build("anbn").machine)


def test_concat_blind():
    c = word_machine("c", "c", blind=True)
    m = cs.concat_nondet(zoo.build("anbn").machine, c)
    assert engine.run(m, "aabbc").accepted and not engine.run(m, "aabc").accepted
    assert_equivalent(m, concat_oracle(zoo.in_anbn, lambda w: w == "c"), 10)


def test_concat_nonblind():
    x = cs.simulate_counter_nonblind(anbn_nonblind())
    y = word_machine("ab", "ab", blind=False)
    m = cs.concat_nondet(x, y)
    assert_equivalent(m, concat_oracle(zoo.in_anbn, lambda w: w == "ab"), 10)


def test_concat_with_empty_word_operand():
    x = zoo.build("anbn").machine
    m = cs.concat_nondet(x, x)
    assert_equivalent(m, concat_oracle(zoo.in_anbn, zoo.in_anbn), 10)


def test_star():
    m = cs.star_nondet(word_machine("ab", "ab", blind=False))
    assert m.dimension == 1
    assert engine.run(m, "").accepted
    assert_equivalent(m, star_oracle(lambda w: w == "ab"), 12)


def test_star_of_counter_language():
    m = cs.star_nondet(cs.simulate_counter_nonblind(anbn_nonblind()))
    assert_equivalent(m, star_oracle(zoo.in_anbn), 10)


def test_star_of_thm51():
    m = cs.star_nondet(zoo.build("thm51").machine)
    assert_equivalent(m, star_oracle(zoo.in_thm51), 9)


def test_star_rejects_blind():
    with pytest.raises(ConstructionError, match="non-blind"):
        cs.star_nondet(zoo.build("anbn").machine)
