import random

from hypothesis import strategies as st

from hyperspec.acceptance import random_connected, random_hypertree


@st.composite
def hypertrees(draw, uniformities=(2, 3, 4), max_edges=10):
    r = draw(st.sampled_from(uniformities))
    m = draw(st.integers(1, max_edges))
    return random_hypertree(r, m, random.Random(draw(st.integers(0, 2**32))))


@st.composite
def connected(draw, uniformities=(2, 3, 4), max_edges=7):
    r = draw(st.sampled_from(uniformities))
    m = draw(st.integers(1, max_edges))
    return random_connected(r, m, random.Random(draw(st.integers(0, 2**32))))
