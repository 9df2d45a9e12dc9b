import pytest

from spheremcg import EPSILON, T_LETTER, concat, equal_in_group


def cayley_order(n: int) -> int:
    """Brute-force group order through the action oracle: close the set
    of oracle-classes under right multiplication by generators.

    Independent of coset enumeration; only feasible for tiny n.
    """
    gens = [(i,) for i in range(1, n)] + [(T_LETTER,)]
    reps = [EPSILON]
    frontier = [EPSILON]
    while frontier:
        fresh = []
        for rep in frontier:
            for g in gens:
                w = concat(rep, g)
                if not any(equal_in_group(w, known, n) for known in reps):
                    reps.append(w)
                    fresh.append(w)
        frontier = fresh
    return len(reps)


@pytest.fixture(scope="session")
def order_of_smallest_group():
    return cayley_order(3)
