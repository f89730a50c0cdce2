from hypothesis import given, strategies as st

from vortex_braid.freegroup import exponent_sums, format_word, invert_word, multiply, power, reduce_word

letters = st.integers(-4, 4).filter(bool)
words = st.lists(letters, max_size=20)


@given(words)
def test_reduce_is_idempotent_and_reduced(w):
    r = reduce_word(w)
    assert reduce_word(r) == r
    assert all(r[k] != -r[k + 1] for k in range(len(r) - 1))


@given(words, words)
def test_inverse_cancels(a, b):
    assert multiply(a, invert_word(a)) == ()
    assert invert_word(multiply(a, b)) == multiply(invert_word(b), invert_word(a))


@given(words, words)
def test_exponent_sums_are_additive(a, b):
    sa, sb = exponent_sums(a, 4), exponent_sums(b, 4)
    assert exponent_sums(multiply(a, b), 4) == [x + y for x, y in zip(sa, sb)]


def test_power_and_format():
    assert power((1, 2), 2) == (1, 2, 1, 2)
    assert power((1, 2), -1) == (-2, -1)
    assert format_word((1, -2), ["a", "b"]) == "a b'"
