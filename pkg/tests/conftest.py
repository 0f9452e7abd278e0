import pytest
from hypothesis import settings, strategies as st

from sodlab.numk import KClass
from sodlab.piclat import BlowupP2, DivisorClass, Quadric

settings.register_profile("sodlab", max_examples=200, deadline=None, derandomize=True)
settings.load_profile("sodlab")

MODELS = [BlowupP2(r) for r in range(9)] + [Quadric()]

small = st.integers(-6, 6)


@st.composite
def model_and(draw, n_div=0, n_k=0):
    S = draw(st.sampled_from(MODELS))
    divs = [DivisorClass(tuple(draw(st.lists(small, min_size=S.picard_rank, max_size=S.picard_rank))))
            for _ in range(n_div)]
    ks = []
    for _ in range(n_k):
        c1 = DivisorClass(tuple(draw(st.lists(small, min_size=S.picard_rank, max_size=S.picard_rank))))
        ks.append(KClass(draw(st.integers(-4, 4)), c1, draw(st.integers(-20, 20))))
    return S, divs, ks


@pytest.fixture(params=MODELS, ids=lambda S: S.name)
def model(request):
    return request.param
