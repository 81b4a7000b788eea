"""Independent brute-force oracles shared by several test modules."""

from itertools import product


def brute_nondegenerate_alternating(t):
    """Independent count: every exponent matrix mod E, filtered by behaviour on elements.

    A matrix c defines x, y -> sum x_i y_j c_ij (mod E) on coordinate vectors;
    it is a bicharacter when the value does not depend on the chosen coordinate
    representatives, alternating when beta(x, x) = 0 for every x, and
    nondegenerate when only the identity pairs trivially with everything.
    """
    d = t.moduli
    r, E = len(d), t.exponent
    elems = list(product(*(range(k) for k in d)))

    def beta(c, x, y):
        return sum(x[i] * y[j] * c[i][j] for i in range(r) for j in range(r)) % E

    count = 0
    for flat in product(range(E), repeat=r * r):
        c = [flat[i * r:(i + 1) * r] for i in range(r)]
        # shifting a coordinate by its order must not change the value
        if any((d[i] * c[i][j]) % E or (d[j] * c[i][j]) % E for i in range(r) for j in range(r)):
            continue
        if any(beta(c, x, x) for x in elems):
            continue
        if all(any(beta(c, x, y) for y in elems) for x in elems[1:]):
            count += 1
    return count
