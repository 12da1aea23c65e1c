from math import isqrt

from hypothesis import strategies as st

from cfzeta.cf import CFExpansion
from cfzeta.qfield import surd_floor, surd_new


def cf_expansions(max_len: int = 4, max_q: int = 9):
    quotient = st.integers(1, max_q)
    return st.builds(
        lambda pre, per: CFExpansion(tuple(pre), tuple(per)),
        st.lists(quotient, max_size=max_len),
        st.lists(quotient, min_size=1, max_size=max_len),
    )


@st.composite
def unit_surds(draw, max_d: int = 2000):
    d = draw(st.integers(2, max_d).filter(lambda n: isqrt(n) ** 2 != n))
    p = draw(st.integers(-100, 100))
    q = draw(st.integers(-60, 60).filter(bool))
    x = surd_new(p, q, d)
    return x - surd_floor(x)
