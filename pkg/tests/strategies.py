"""Hypothesis strategies for field contexts, polynomials and elements of K."""

from hypothesis import strategies as st

from carlitz_forms.algebra import PolyA, RatK, ctx_for_q

contexts = st.sampled_from([ctx_for_q(q) for q in (2, 3, 4, 5, 9)])


def polys(ctx, max_degree=6, nonzero=False, monic=False):
    codes = st.lists(st.integers(0, ctx.q - 1), min_size=0, max_size=max_degree + 1)

    def build(c):
        if monic:
            c = c + [1]
        a = PolyA(ctx, c)
        return a

    s = codes.map(build)
    if nonzero:
        s = s.filter(lambda a: not a.is_zero())
    return s


def ratks(ctx, max_degree=4):
    return st.tuples(polys(ctx, max_degree), polys(ctx, max_degree, monic=True)).map(lambda t: RatK(*t))
