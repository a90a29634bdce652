import random

from hypothesis import strategies as st

from magnetite import AmbientGroup, FgMonoid

ACCEPTANCE_LINES = []

Z1 = AmbientGroup(1)
Z2 = AmbientGroup(2)
ZxZ2 = AmbientGroup(1, (2,))


def mon(G, *vecs, name=None):
    return FgMonoid.from_vectors(G, vecs, name=name)


def num(*vals):
    """Submonoid of Z generated by integers."""
    return FgMonoid.from_vectors(Z1, [[v] for v in vals])


def ints(elements):
    return sorted(e.free[0] for e in elements)


def vecs(elements):
    return sorted(e.vector for e in elements)


def random_group(rng, max_rank=3, orders=(2, 3)):
    rank = rng.randint(0, max_rank)
    ntors = rng.randint(0, 2 if rank else 2)
    return AmbientGroup(rank, tuple(rng.choice(orders) for _ in range(ntors)))


def random_element(rng, G, lo=-3, hi=3):
    return G.element([rng.randint(lo, hi) for _ in range(G.rank)] + [rng.randrange(d) for d in G.torsion])


def random_monoid(rng, max_rank=3, max_gens=5, orders=(2, 3)):
    G = random_group(rng, max_rank, orders)
    k = rng.randint(0, max_gens)
    return FgMonoid.from_vectors(G, [random_element(rng, G).vector for _ in range(k)])


@st.composite
def monoids(draw, max_rank=3, max_gens=5):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_monoid(random.Random(seed), max_rank, max_gens)
