import random

from hypothesis import HealthCheck, settings, strategies as st

from braidcrypt.braid import BraidWord

settings.register_profile(
    "default",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


@st.composite
def words(draw, n=None, min_n=2, max_n=6, max_len=12):
    n = n or draw(st.integers(min_n, max_n))
    letters = draw(
        st.lists(st.integers(1, n - 1).flatmap(lambda i: st.sampled_from((i, -i))), max_size=max_len)
    )
    return BraidWord(n, tuple(letters))


@st.composite
def word_pairs(draw, min_n=2, max_n=6, max_len=10):
    n = draw(st.integers(min_n, max_n))
    return draw(words(n=n, max_len=max_len)), draw(words(n=n, max_len=max_len))


def rng(seed):
    return random.Random(seed)
