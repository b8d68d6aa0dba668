from fractions import Fraction

from hypothesis import strategies as st

from acsums.ring import Domain, RingSpec, TruncatedClass

small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def specs(draw, max_m=3, max_d=5, domain=None):
    m = draw(st.integers(1, max_m))
    d = draw(st.integers(1, max_d))
    dom = domain or draw(st.sampled_from(list(Domain)))
    return RingSpec(m, d, dom)


@st.composite
def elements(draw, spec: RingSpec, coeffs=small_ints):
    def scalar():
        v = draw(coeffs)
        if spec.domain is Domain.RATIONAL and draw(st.booleans()):
            return Fraction(v, draw(st.integers(1, 4)))
        return v

    lower = {}
    for j in range(1, spec.m + 1):
        for k in range(1, spec.d):
            if draw(st.booleans()):
                lower[(j, k)] = scalar()
    return TruncatedClass.from_terms(spec, scalar(), lower, scalar())


@st.composite
def spec_and_elements(draw, count=2, **kw):
    spec = draw(specs(**kw))
    return (spec, *[draw(elements(spec)) for _ in range(count)])
