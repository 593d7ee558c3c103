"""Hypothesis strategies for small finite structures."""

import numpy as np
from hypothesis import strategies as st

from heapmods.heap import cyclic_group, heap_from_group, product_group
from heapmods.truss import ring_Zn, truss_from_ring


@st.composite
def abelian_groups(draw, max_factor=5, max_factors=2):
    """Products of cyclic groups, at most 16 elements."""
    orders = draw(st.lists(st.integers(1, max_factor), min_size=1, max_size=max_factors))
    G = cyclic_group(orders[0])
    for k in orders[1:]:
        G, _ = product_group(G, cyclic_group(k))
    return G


@st.composite
def heaps(draw):
    return heap_from_group(draw(abelian_groups()))


@st.composite
def cyclic_trusses(draw, max_n=6):
    return truss_from_ring(ring_Zn(draw(st.integers(1, max_n))))


def subsets(n):
    return st.lists(st.integers(0, max(n - 1, 0)), max_size=n, unique=True).map(sorted) if n else st.just([])


def zmod_labels(T):
    """Integer values of the labels of a truss built from Z_n."""
    return np.array([int(x) for x in T.labels])
