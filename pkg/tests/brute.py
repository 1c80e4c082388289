"""Coordinate oracle for PG(3, q), independent of the bitset/polar machinery.

Everything here works on raw residue 4-tuples: spans come from linear
combinations, collinearity from matrix rank over GF(q).
"""
from itertools import product


def normalize(v, q):
    """Scale by every nonzero scalar and keep the one with leading 1."""
    for lam in range(1, q):
        w = tuple(x * lam % q for x in v)
        if next(x for x in w if x) == 1:
            return w
    raise ValueError("zero vector")


def vectors(q):
    return sorted({normalize(v, q) for v in product(range(q), repeat=4) if any(v)})


def dot(u, v, q):
    return sum(a * b for a, b in zip(u, v)) % q


def rank(rows, q):
    m = [list(r) for r in rows]
    r = 0
    for col in range(4):
        piv = next((i for i in range(r, len(m)) if m[i][col] % q), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], q - 2, q)
        m[r] = [x * inv % q for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col] % q:
                f = m[i][col]
                m[i] = [(a - f * b) % q for a, b in zip(m[i], m[r])]
        r += 1
    return r


def span(u, v, q):
    """Projective points on the line through u and v, by linear combination."""
    return {
        normalize(tuple((a * x + b * y) % q for x, y in zip(u, v)), q)
        for a in range(q) for b in range(q) if (a, b) != (0, 0)
    }


class Brute:
    def __init__(self, q):
        self.q = q
        self.vecs = vectors(q)
        self.index = {v: i for i, v in enumerate(self.vecs)}

    def inc(self, p, f):
        return dot(self.vecs[p], self.vecs[f], self.q) == 0

    def polar_points(self, ps):
        return {f for f in range(len(self.vecs)) if all(self.inc(p, f) for p in ps)}

    def polar_planes(self, fs):
        return {p for p in range(len(self.vecs)) if all(self.inc(p, f) for f in fs)}

    def line(self, a, b):
        return {self.index[v] for v in span(self.vecs[a], self.vecs[b], self.q)}

    def rank(self, ids):
        return rank([self.vecs[i] for i in ids], self.q)

    def collinear(self, ids):
        return self.rank(ids) <= 2

    def all_lines(self):
        n = len(self.vecs)
        return sorted({tuple(sorted(self.line(a, b))) for a in range(n) for b in range(a + 1, n)})

    def meet(self, a, b, c, d):
        common = self.line(a, b) & self.line(c, d)
        assert len(common) == 1
        return common.pop()
